#include "regmodels/arith.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "regmodels/errors.hpp"

namespace regmodels {

// ---------------------------------------------------------------- ExtRat

ExtRat ExtRat::infinity() {
    ExtRat r;
    r.inf_ = true;
    return r;
}

const mpq_class& ExtRat::value() const {
    if (inf_) fail(ErrorKind::InvalidInput, "finite value requested from infinity");
    return q_;
}

std::string ExtRat::str() const { return inf_ ? "inf" : rat_str(q_); }

ExtRat operator+(const ExtRat& a, const ExtRat& b) {
    if (a.inf_ || b.inf_) return ExtRat::infinity();
    return ExtRat(mpq_class(a.q_ + b.q_));
}

ExtRat operator-(const ExtRat& a, const mpq_class& b) {
    if (a.inf_) return a;
    return ExtRat(mpq_class(a.q_ - b));
}

ExtRat operator*(const ExtRat& a, const mpq_class& k) {
    if (a.inf_) {
        if (sgn(k) <= 0) fail(ErrorKind::InvalidInput, "infinity scaled by a non-positive factor");
        return a;
    }
    return ExtRat(mpq_class(a.q_ * k));
}

bool operator==(const ExtRat& a, const ExtRat& b) {
    if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
    return a.q_ == b.q_;
}

std::strong_ordering operator<=>(const ExtRat& a, const ExtRat& b) {
    if (a.inf_ || b.inf_) {
        if (a.inf_ && b.inf_) return std::strong_ordering::equal;
        return a.inf_ ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    int c = cmp(a.q_, b.q_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

ExtRat min(const ExtRat& a, const ExtRat& b) { return b < a ? b : a; }
ExtRat max(const ExtRat& a, const ExtRat& b) { return a < b ? b : a; }

std::string rat_str(const mpq_class& q) {
    mpq_class c(q);
    c.canonicalize();
    return c.get_str();
}

mpz_class floor_q(const mpq_class& q) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

mpz_class ceil_q(const mpq_class& q) {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

bool is_integer(const mpq_class& q) { return q.get_den() == 1; }

mpq_class frac(const mpz_class& num, const mpz_class& den) {
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

long to_long(const mpz_class& z) {
    if (!z.fits_slong_p()) fail(ErrorKind::InvalidInput, "integer out of machine range: " + z.get_str());
    return z.get_si();
}

// ----------------------------------------------------------------- QPoly

QPoly::QPoly(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) {
    for (auto& x : c_) x.canonicalize();
    trim();
}

QPoly::QPoly(const mpq_class& constant) {
    if (constant != 0) c_.push_back(constant);
}

QPoly QPoly::monomial(const mpq_class& c, int degree) {
    std::vector<mpq_class> v(degree + 1, mpq_class(0));
    v[degree] = c;
    return QPoly(std::move(v));
}

void QPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const mpq_class& QPoly::lc() const {
    if (c_.empty()) fail(ErrorKind::InvalidInput, "leading coefficient of the zero polynomial");
    return c_.back();
}

mpq_class QPoly::coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : mpq_class(0);
}

QPoly QPoly::monic() const {
    mpq_class inv = 1 / lc();
    return *this * inv;
}

QPoly QPoly::derivative() const {
    if (c_.size() <= 1) return QPoly();
    std::vector<mpq_class> v(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * static_cast<long>(i);
    return QPoly(std::move(v));
}

mpq_class QPoly::eval(const mpq_class& x) const {
    mpq_class acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

QPoly QPoly::compose(const QPoly& inner) const {
    QPoly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * inner + QPoly(*it);
    return acc;
}

QPoly operator+(const QPoly& a, const QPoly& b) {
    std::vector<mpq_class> v(std::max(a.c_.size(), b.c_.size()), mpq_class(0));
    for (size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
    return QPoly(std::move(v));
}

QPoly operator-(const QPoly& a) {
    std::vector<mpq_class> v(a.c_);
    for (auto& x : v) x = -x;
    return QPoly(std::move(v));
}

QPoly operator-(const QPoly& a, const QPoly& b) { return a + (-b); }

QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return QPoly();
    std::vector<mpq_class> v(a.c_.size() + b.c_.size() - 1, mpq_class(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    }
    return QPoly(std::move(v));
}

QPoly operator*(const QPoly& a, const mpq_class& k) {
    std::vector<mpq_class> v(a.c_);
    for (auto& x : v) x *= k;
    return QPoly(std::move(v));
}

bool operator<(const QPoly& a, const QPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i) {
        int c = cmp(a.c_[i], b.c_[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

QPoly QPoly::pow(int e) const {
    QPoly result(mpq_class(1));
    QPoly base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

std::string QPoly::str(const std::string& var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const mpq_class& c = c_[k];
        if (c == 0) continue;
        mpq_class mag = abs(c);
        if (first) {
            if (sgn(c) < 0) os << "-";
        } else {
            os << (sgn(c) < 0 ? " - " : " + ");
        }
        first = false;
        if (k == 0) {
            os << rat_str(mag);
            continue;
        }
        if (mag != 1) os << rat_str(mag) << "*";
        os << var;
        if (k > 1) os << "^" << k;
    }
    return os.str();
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
    if (b.is_zero()) fail(ErrorKind::InvalidInput, "polynomial division by zero");
    std::vector<mpq_class> r(a.coeffs());
    int db = b.degree();
    int da = a.degree();
    if (da < db) return {QPoly(), a};
    std::vector<mpq_class> q(da - db + 1, mpq_class(0));
    mpq_class inv = 1 / b.lc();
    for (int k = da; k >= db; --k) {
        if (r[k] == 0) continue;
        mpq_class f = r[k] * inv;
        q[k - db] = f;
        for (int j = 0; j <= db; ++j) r[k - db + j] -= f * b.coeffs()[j];
    }
    return {QPoly(std::move(q)), QPoly(std::move(r))};
}

QPoly operator%(const QPoly& a, const QPoly& b) { return divmod(a, b).second; }

QPoly gcd(const QPoly& a, const QPoly& b) {
    QPoly x = a, y = b;
    while (!y.is_zero()) {
        QPoly r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x.is_zero() ? x : x.monic();
}

QPoly invmod(const QPoly& a, const QPoly& m) {
    // Extended Euclid tracking the cofactor of a.
    QPoly r0 = m, r1 = a % m;
    QPoly s0, s1(mpq_class(1));
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        QPoly s = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    if (r0.degree() != 0) fail(ErrorKind::InvalidInput, "polynomial not invertible modulo " + m.str());
    return (s0 * (1 / r0.lc())) % m;
}

std::vector<QPoly> expand(const QPoly& p, const QPoly& phi) {
    if (phi.degree() < 1) fail(ErrorKind::InvalidInput, "expansion base must be non-constant");
    std::vector<QPoly> digits;
    QPoly rest = p;
    while (!rest.is_zero()) {
        auto [q, r] = divmod(rest, phi);
        digits.push_back(std::move(r));
        rest = std::move(q);
    }
    return digits;
}

QPoly pseudo_rem(const QPoly& a, const QPoly& b) {
    int delta = a.degree() - b.degree();
    if (delta < 0) return a;
    mpq_class scale = 1;
    for (int i = 0; i <= delta; ++i) scale *= b.lc();
    return (a * scale) % b;
}

namespace {

mpq_class qpow(const mpq_class& x, long e) {
    mpq_class r = 1;
    mpq_class base = e >= 0 ? x : mpq_class(1 / x);
    unsigned long n = static_cast<unsigned long>(e >= 0 ? e : -e);
    while (n > 0) {
        if (n & 1) r *= base;
        base *= base;
        n >>= 1;
    }
    return r;
}

}  // namespace

mpq_class resultant(const QPoly& a0, const QPoly& b0) {
    if (a0.is_zero() || b0.is_zero()) return 0;
    QPoly a = a0, b = b0;
    mpq_class sign = 1;
    if (a.degree() < b.degree()) {
        std::swap(a, b);
        if ((a.degree() & 1) && (b.degree() & 1)) sign = -1;
    }
    if (b.degree() == 0) return sign * qpow(b.lc(), a.degree());
    mpq_class g = 1, h = 1;
    while (true) {
        long delta = a.degree() - b.degree();
        if ((a.degree() & 1) && (b.degree() & 1)) sign = -sign;
        QPoly r = pseudo_rem(a, b);
        if (r.is_zero()) return 0;
        a = b;
        b = r * (1 / (g * qpow(h, delta)));
        g = a.lc();
        h = qpow(h, 1 - delta) * qpow(g, delta);
        if (b.degree() == 0) break;
    }
    return sign * qpow(h, 1 - a.degree()) * qpow(b.lc(), a.degree());
}

mpq_class determinant(std::vector<std::vector<mpq_class>> m) {
    size_t n = m.size();
    mpq_class det = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (size_t r = col + 1; r < n; ++r) {
            if (m[r][col] == 0) continue;
            mpq_class f = m[r][col] / m[col][col];
            for (size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

mpq_class sylvester_resultant(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return 0;
    int m = a.degree(), n = b.degree();
    if (m == 0 && n == 0) return 1;
    size_t size = static_cast<size_t>(m + n);
    std::vector<std::vector<mpq_class>> s(size, std::vector<mpq_class>(size, mpq_class(0)));
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k) s[r][r + k] = a.coeff(m - k);
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k) s[n + r][r + k] = b.coeff(n - k);
    return determinant(std::move(s));
}

ExtRat p_valuation(const mpq_class& x, long p) {
    if (x == 0) return ExtRat::infinity();
    long v = 0;
    mpz_class num = x.get_num(), den = x.get_den();
    mpz_class pz = p;
    while (mpz_divisible_p(num.get_mpz_t(), pz.get_mpz_t())) {
        num /= pz;
        ++v;
    }
    while (mpz_divisible_p(den.get_mpz_t(), pz.get_mpz_t())) {
        den /= pz;
        --v;
    }
    return ExtRat(v);
}

bool is_p_integral(const QPoly& f, long p) {
    for (const auto& c : f.coeffs())
        if (p_valuation(c, p) < ExtRat(0)) return false;
    return true;
}

ExtRat root_valuation(const QPoly& phi, const QPoly& g, long p) {
    if (!g.is_monic() || !is_p_integral(g, p))
        fail(ErrorKind::InvalidInput, "root_valuation needs a monic p-integral polynomial, got " + g.str());
    if (phi.is_zero()) fail(ErrorKind::InvalidInput, "root_valuation of the zero polynomial");
    if (g.degree() < 1) fail(ErrorKind::InvalidInput, "root_valuation needs a non-constant polynomial");
    mpq_class res = resultant(phi, g);
    if (res == 0) return ExtRat::infinity();
    return ExtRat(mpq_class(p_valuation(res, p).value() / g.degree()));
}

bool is_prime(long n) {
    if (n < 2) return false;
    for (long k = 2; k * k <= n; ++k)
        if (n % k == 0) return false;
    return true;
}

long mod_inverse(long a, long m) {
    if (m == 1) return 0;
    mpz_class r, az = a, mz = m;
    az %= mz;
    if (az < 0) az += mz;
    if (mpz_invert(r.get_mpz_t(), az.get_mpz_t(), mz.get_mpz_t()) == 0)
        fail(ErrorKind::InvalidInput, "no inverse of " + std::to_string(a) + " mod " + std::to_string(m));
    return r.get_si();
}

long residue_mod(const mpq_class& x, long m) {
    mpz_class mz = m;
    mpz_class n = x.get_num() % mz;
    if (n < 0) n += mz;
    mpz_class d = x.get_den() % mz;
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), mz.get_mpz_t()) == 0) {
        if (m == 1) return 0;
        fail(ErrorKind::InvalidInput, "denominator not invertible mod " + std::to_string(m));
    }
    mpz_class r = (n * inv) % mz;
    return r.get_si();
}

// ---------------------------------------------------------------- FpPoly

namespace {

long mulmod(long a, long b, long p) {
    return static_cast<long>((static_cast<__int128>(a) * b) % p);
}

}  // namespace

FpPoly::FpPoly(long p, std::vector<long> coeffs) : p_(p), c_(std::move(coeffs)) {
    for (auto& x : c_) {
        x %= p_;
        if (x < 0) x += p_;
    }
    trim();
}

FpPoly FpPoly::from_q(const QPoly& f, long p) {
    std::vector<long> v;
    for (const auto& c : f.coeffs()) v.push_back(residue_mod(c, p));
    return FpPoly(p, std::move(v));
}

void FpPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FpPoly FpPoly::monic() const {
    if (c_.empty()) return *this;
    long inv = mod_inverse(lc(), p_);
    std::vector<long> v(c_);
    for (auto& x : v) x = mulmod(x, inv, p_);
    return FpPoly(p_, std::move(v));
}

FpPoly FpPoly::derivative() const {
    std::vector<long> v;
    for (size_t i = 1; i < c_.size(); ++i) v.push_back(mulmod(c_[i], static_cast<long>(i) % p_, p_));
    return FpPoly(p_, std::move(v));
}

long FpPoly::eval(long x) const {
    long acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = (mulmod(acc, x, p_) + *it) % p_;
    return acc;
}

FpPoly operator+(const FpPoly& a, const FpPoly& b) {
    std::vector<long> v(std::max(a.c_.size(), b.c_.size()), 0);
    for (size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
    return FpPoly(a.p_, std::move(v));
}

FpPoly operator-(const FpPoly& a, const FpPoly& b) {
    std::vector<long> v(std::max(a.c_.size(), b.c_.size()), 0);
    for (size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) v[i] -= b.c_[i];
    return FpPoly(a.p_, std::move(v));
}

FpPoly operator*(const FpPoly& a, const FpPoly& b) {
    if (a.is_zero() || b.is_zero()) return FpPoly(a.p_);
    std::vector<long> v(a.c_.size() + b.c_.size() - 1, 0);
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] = (v[i + j] + mulmod(a.c_[i], b.c_[j], a.p_)) % a.p_;
    return FpPoly(a.p_, std::move(v));
}

bool operator<(const FpPoly& a, const FpPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i)
        if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
    return false;
}

std::string FpPoly::str(const std::string& var) const {
    std::vector<mpq_class> v;
    for (long x : c_) v.emplace_back(x);
    return QPoly(std::move(v)).str(var);
}

std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b) {
    if (b.is_zero()) fail(ErrorKind::InvalidInput, "F_p polynomial division by zero");
    long p = a.prime();
    std::vector<long> r(a.coeffs());
    int db = b.degree(), da = a.degree();
    if (da < db) return {FpPoly(p), a};
    std::vector<long> q(da - db + 1, 0);
    long inv = mod_inverse(b.lc(), p);
    for (int k = da; k >= db; --k) {
        if (r[k] == 0) continue;
        long f = mulmod(r[k], inv, p);
        q[k - db] = f;
        for (int j = 0; j <= db; ++j) r[k - db + j] = ((r[k - db + j] - mulmod(f, b.coeffs()[j], p)) % p + p) % p;
    }
    return {FpPoly(p, std::move(q)), FpPoly(p, std::move(r))};
}

FpPoly gcd(const FpPoly& a, const FpPoly& b) {
    FpPoly x = a, y = b;
    while (!y.is_zero()) {
        FpPoly r = divmod(x, y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

FpPoly powmod(const FpPoly& base, const mpz_class& e, const FpPoly& m) {
    FpPoly result = divmod(FpPoly(m.prime(), {1}), m).second;
    FpPoly b = divmod(base, m).second;
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        result = divmod(result * result, m).second;
        if (mpz_tstbit(e.get_mpz_t(), i)) result = divmod(result * b, m).second;
    }
    return result;
}

namespace {

FpPoly pth_root(const FpPoly& f) {
    long p = f.prime();
    std::vector<long> v;
    for (int i = 0; i <= f.degree(); i += static_cast<int>(p)) v.push_back(f.coeff(i));
    return FpPoly(p, std::move(v));
}

FpPoly exact_div(const FpPoly& a, const FpPoly& b) { return divmod(a, b).first; }

bool is_one(const FpPoly& f) { return f.degree() == 0; }

// Squarefree decomposition of a monic polynomial (Yun, with p-th roots).
void squarefree(const FpPoly& f, int mult, std::vector<std::pair<FpPoly, int>>& out) {
    if (f.degree() < 1) return;
    long p = f.prime();
    FpPoly df = f.derivative();
    if (df.is_zero()) {
        squarefree(pth_root(f), mult * static_cast<int>(p), out);
        return;
    }
    FpPoly c = gcd(f, df);
    FpPoly w = exact_div(f, c);
    int i = 1;
    while (!is_one(w)) {
        FpPoly y = gcd(w, c);
        FpPoly z = exact_div(w, y);
        if (z.degree() > 0) out.emplace_back(z.monic(), i * mult);
        ++i;
        w = y;
        c = exact_div(c, y);
    }
    if (c.degree() > 0) squarefree(pth_root(c.monic()), mult * static_cast<int>(p), out);
}

void equal_degree(const FpPoly& f, int deg, std::mt19937_64& rng, std::vector<FpPoly>& out) {
    if (f.degree() == deg) {
        out.push_back(f.monic());
        return;
    }
    long p = f.prime();
    std::uniform_int_distribution<long> coeff(0, p - 1);
    mpz_class q = 1;
    for (int i = 0; i < deg; ++i) q *= p;
    while (true) {
        std::vector<long> v(f.degree());
        for (auto& x : v) x = coeff(rng);
        FpPoly a(p, std::move(v));
        if (a.degree() < 1) continue;
        FpPoly b(p);
        if (p == 2) {
            FpPoly t = a;
            b = a;
            for (int i = 1; i < deg; ++i) {
                t = divmod(t * t, f).second;
                b = b + t;
            }
        } else {
            b = powmod(a, (q - 1) / 2, f) - FpPoly(p, {1});
        }
        FpPoly g = gcd(b, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree(g, deg, rng, out);
            equal_degree(exact_div(f, g).monic(), deg, rng, out);
            return;
        }
    }
}

void factor_squarefree(const FpPoly& f, std::mt19937_64& rng, std::vector<FpPoly>& out) {
    long p = f.prime();
    if (f.degree() <= 3 && p <= 100000) {
        // Small degree: pull out roots by enumeration; what remains has no root and degree <= 3.
        FpPoly rest = f;
        for (long c = 0; c < p && rest.degree() > 1; ++c) {
            if (rest.eval(c) == 0) {
                FpPoly lin(p, {-c, 1});
                out.push_back(lin);
                rest = exact_div(rest, lin);
            }
        }
        if (rest.degree() >= 1) out.push_back(rest.monic());
        return;
    }
    FpPoly rest = f;
    FpPoly x(p, {0, 1});
    FpPoly h = x;
    int i = 1;
    while (rest.degree() >= 2 * i) {
        h = powmod(h, mpz_class(p), rest);
        FpPoly g = gcd(h - x, rest);
        if (g.degree() > 0) {
            equal_degree(g, i, rng, out);
            rest = exact_div(rest, g).monic();
            h = divmod(h, rest).second;
        }
        ++i;
    }
    if (rest.degree() > 0) out.push_back(rest.monic());
}

}  // namespace

std::vector<std::pair<FpPoly, int>> factor_mod_p(const FpPoly& g) {
    if (g.is_zero()) fail(ErrorKind::InvalidInput, "factor_mod_p of the zero polynomial");
    std::vector<std::pair<FpPoly, int>> parts;
    squarefree(g.monic(), 1, parts);
    std::mt19937_64 rng(0x5eed);
    std::vector<std::pair<FpPoly, int>> result;
    for (const auto& [part, mult] : parts) {
        std::vector<FpPoly> irreducibles;
        factor_squarefree(part, rng, irreducibles);
        for (auto& q : irreducibles) {
            auto it = std::find_if(result.begin(), result.end(), [&](const auto& e) { return e.first == q; });
            if (it == result.end())
                result.emplace_back(q, mult);
            else
                it->second += mult;
        }
    }
    std::sort(result.begin(), result.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return result;
}

bool is_irreducible_bruteforce(const FpPoly& g) {
    long p = g.prime();
    int n = g.degree();
    if (n < 1) return false;
    FpPoly f = g.monic();
    // Try every monic divisor of degree 1..n/2.
    for (int k = 1; 2 * k <= n; ++k) {
        long count = 1;
        for (int i = 0; i < k; ++i) count *= p;
        for (long idx = 0; idx < count; ++idx) {
            std::vector<long> v(k + 1, 0);
            long t = idx;
            for (int i = 0; i < k; ++i) {
                v[i] = t % p;
                t /= p;
            }
            v[k] = 1;
            if (divmod(f, FpPoly(p, std::move(v))).second.is_zero()) return false;
        }
    }
    return true;
}

}  // namespace regmodels
