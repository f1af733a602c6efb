#include "regmodels/maclane.hpp"

#include <numeric>
#include <sstream>

#include "regmodels/errors.hpp"

namespace regmodels {

MacLaneVal MacLaneVal::prefix(int k) const {
    return MacLaneVal(p_, std::vector<Step>(steps_.begin(), steps_.begin() + k));
}

MacLaneVal MacLaneVal::extended(const QPoly& phi, const ExtRat& lambda) const {
    std::vector<Step> s = steps_;
    s.push_back({phi, lambda});
    return MacLaneVal(p_, std::move(s));
}

std::string MacLaneVal::str() const {
    std::ostringstream os;
    os << "[v0";
    for (size_t i = 0; i < steps_.size(); ++i)
        os << ", v" << (i + 1) << "(" << steps_[i].phi.str() << ") = " << steps_[i].lambda.str();
    os << "]";
    return os.str();
}

namespace {

ExtRat gauss_value(const QPoly& g, long p) {
    ExtRat best = ExtRat::infinity();
    for (const auto& c : g.coeffs()) best = min(best, p_valuation(c, p));
    return best;
}

ExtRat value_at_level(const MacLaneVal& v, int level, const QPoly& g) {
    if (g.is_zero()) return ExtRat::infinity();
    if (level == 0) return gauss_value(g, v.prime());
    const Step& st = v.steps()[level - 1];
    if (g.degree() < st.phi.degree()) return value_at_level(v, level - 1, g);
    std::vector<QPoly> digits = expand(g, st.phi);
    if (st.lambda.is_inf()) return value_at_level(v, level - 1, digits[0]);
    ExtRat best = ExtRat::infinity();
    for (size_t i = 0; i < digits.size(); ++i) {
        if (digits[i].is_zero()) continue;
        ExtRat term = value_at_level(v, level - 1, digits[i]) + st.lambda * mpq_class(static_cast<long>(i));
        best = min(best, term);
    }
    return best;
}

long lcm_long(long a, long b) { return a / std::gcd(a, b) * b; }

}  // namespace

ExtRat valuate(const MacLaneVal& v, const QPoly& g) {
    if (g.is_zero()) fail(ErrorKind::InvalidInput, "valuation of the zero polynomial");
    return value_at_level(v, v.length(), g);
}

ExtRat valuate(const MacLaneVal& v, const QPoly& num, const QPoly& den) {
    ExtRat a = valuate(v, num);
    ExtRat b = valuate(v, den);
    if (b.is_inf()) fail(ErrorKind::InvalidInput, "rational function with a denominator of infinite value");
    return a - b.value();
}

long ram_index(const MacLaneVal& v) {
    long e = 1;
    for (const auto& st : v.steps()) {
        if (st.lambda.is_inf()) fail(ErrorKind::InvalidInput, "ramification index of a pseudovaluation");
        e = lcm_long(e, to_long(st.lambda.value().get_den()));
    }
    return e;
}

namespace {

QPoly canonical_linear_key(const QPoly& phi, const ExtRat& lambda, long p) {
    if (phi.degree() != 1 || lambda.is_inf()) return phi;
    mpz_class k = ceil_q(lambda.value());
    if (k < 1) return phi;
    mpz_class modulus;
    mpz_ui_pow_ui(modulus.get_mpz_t(), static_cast<unsigned long>(p), k.get_ui());
    mpq_class c = -phi.coeff(0);
    mpz_class num = c.get_num() % modulus;
    mpz_class den = c.get_den() % modulus;
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), modulus.get_mpz_t()) == 0) return phi;
    mpz_class r = (num * inv) % modulus;
    if (r < 0) r += modulus;
    return QPoly::linear(mpq_class(r));
}

}  // namespace

MacLaneVal normalize(const MacLaneVal& v) {
    std::vector<Step> s = v.steps();
    long p = v.prime();
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < s.size(); ++i) {
            if (i > 0 && s[i].phi.degree() == s[i - 1].phi.degree()) {
                s[i - 1] = s[i];
                s.erase(s.begin() + static_cast<long>(i));
                changed = true;
                break;
            }
            MacLaneVal pre(p, std::vector<Step>(s.begin(), s.begin() + static_cast<long>(i)));
            if (s[i].lambda == valuate(pre, s[i].phi)) {
                s.erase(s.begin() + static_cast<long>(i));
                changed = true;
                break;
            }
        }
    }
    if (!s.empty() && s[0].phi.degree() == 1) s[0].phi = canonical_linear_key(s[0].phi, s[0].lambda, p);
    return MacLaneVal(p, std::move(s));
}

bool leq(const MacLaneVal& v, const MacLaneVal& w) {
    MacLaneVal nv = normalize(v);
    for (const auto& st : nv.steps())
        if (valuate(w, st.phi) < st.lambda) return false;
    return true;
}

bool equal(const MacLaneVal& v, const MacLaneVal& w) {
    if (v.prime() == w.prime() && v.length() == w.length()) {
        bool same = true;
        for (int i = 0; i < v.length() && same; ++i)
            same = v.steps()[i].phi == w.steps()[i].phi && v.steps()[i].lambda == w.steps()[i].lambda;
        if (same) return true;
    }
    return leq(v, w) && leq(w, v);
}

MacLaneVal inf(const MacLaneVal& v, const MacLaneVal& w) {
    MacLaneVal nv = normalize(v);
    for (int i = 0; i < nv.length(); ++i) {
        const Step& st = nv.steps()[i];
        ExtRat wv = valuate(w, st.phi);
        if (wv < st.lambda) {
            MacLaneVal pre = nv.prefix(i);
            if (wv > valuate(pre, st.phi)) return normalize(pre.extended(st.phi, wv));
            return pre;
        }
    }
    return nv;
}

MacLaneVal augment(const MacLaneVal& v0, const QPoly& phi, const ExtRat& lambda) {
    MacLaneVal v = normalize(v0);
    long p = v.prime();
    if (v.is_pseudo()) fail(ErrorKind::InvalidAugmentation, "cannot augment the pseudovaluation " + v.str());
    if (!phi.is_monic() || !is_p_integral(phi, p))
        fail(ErrorKind::NotKeyPolynomial, phi.str() + " is not monic and integral");
    ExtRat cur = valuate(v, phi);
    if (lambda < cur)
        fail(ErrorKind::InvalidAugmentation,
             "value " + lambda.str() + " below " + v.str() + "(" + phi.str() + ") = " + cur.str());
    if (lambda == cur) return v;
    if (v.is_gauss()) {
        if (phi.degree() != 1) fail(ErrorKind::NotKeyPolynomial, phi.str() + " is not a key over v0");
        return normalize(v.extended(phi, lambda));
    }
    const Step& top = v.last();
    if (phi.degree() == top.phi.degree()) {
        MacLaneVal pre = v.prefix(v.length() - 1);
        if (phi == top.phi || valuate(pre, phi - top.phi) >= top.lambda)
            return normalize(pre.extended(phi, lambda));
        fail(ErrorKind::NotKeyPolynomial, phi.str() + " is not a key over " + v.str());
    }
    if (phi.degree() < top.phi.degree()) fail(ErrorKind::NotKeyPolynomial, phi.str() + " has too small a degree");
    bool key = false;
    try {
        key = is_proper_key(v, phi);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::ReducibleInput) throw;
    }
    if (!key) fail(ErrorKind::NotKeyPolynomial, phi.str() + " is not a proper key over " + v.str());
    return normalize(v.extended(phi, lambda));
}

std::vector<MacLaneVal> predecessors(const MacLaneVal& v) {
    MacLaneVal nv = normalize(v);
    std::vector<MacLaneVal> out;
    for (int k = 0; k < nv.length(); ++k) out.push_back(nv.prefix(k));
    return out;
}

Monomial monomial(const MacLaneVal& v, const mpq_class& gamma) {
    int n = v.length();
    std::vector<long> e(n + 1, 1);
    for (int j = 1; j <= n; ++j) e[j] = ram_index(v.prefix(j));
    Monomial m;
    m.y.assign(n, 0);
    mpq_class rest = gamma;
    for (int j = n; j >= 1; --j) {
        const mpq_class& lam = v.steps()[j - 1].lambda.value();
        long rel = e[j] / e[j - 1];
        bool found = false;
        for (long y = 0; y < rel; ++y) {
            mpq_class r = (rest - lam * y) * e[j - 1];
            r.canonicalize();
            if (is_integer(r)) {
                m.y[j - 1] = y;
                rest -= lam * y;
                found = true;
                break;
            }
        }
        if (!found) fail(ErrorKind::InvalidInput, rat_str(gamma) + " is not in the value group of " + v.str());
    }
    rest.canonicalize();
    if (!is_integer(rest)) fail(ErrorKind::InvalidInput, rat_str(gamma) + " is not in the value group of " + v.str());
    m.x = rest.get_num();
    return m;
}

QPoly monomial_poly(const MacLaneVal& v, const Monomial& m) {
    if (m.x < 0) fail(ErrorKind::InvalidInput, "monomial with a negative power of p");
    mpz_class px;
    mpz_ui_pow_ui(px.get_mpz_t(), static_cast<unsigned long>(v.prime()), m.x.get_ui());
    QPoly out{mpq_class(px)};
    for (int j = 0; j < v.length(); ++j)
        if (m.y[j] > 0) out = out * v.steps()[j].phi.pow(static_cast<int>(m.y[j]));
    return out;
}

QPoly charpoly_mod(const QPoly& u, const QPoly& g) {
    int n = g.degree();
    // Column j of the matrix holds u * t^j mod g.
    std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n, mpq_class(0)));
    QPoly col = u % g;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) a[i][j] = col.coeff(i);
        col = (col * QPoly::x()) % g;
    }
    // Faddeev-LeVerrier.
    std::vector<mpq_class> c(n + 1, mpq_class(0));
    c[n] = 1;
    std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n, mpq_class(0)));
    for (int k = 1; k <= n; ++k) {
        std::vector<std::vector<mpq_class>> am(n, std::vector<mpq_class>(n, mpq_class(0)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                mpq_class s = 0;
                for (int l = 0; l < n; ++l) s += a[i][l] * m[l][j];
                am[i][j] = s;
            }
        for (int i = 0; i < n; ++i) am[i][i] += c[n - k + 1];
        m = am;
        mpq_class tr = 0;
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < n; ++l) tr += a[i][l] * m[l][i];
        c[n - k] = -tr / k;
    }
    return QPoly(std::move(c));
}

namespace {

// The single residual root of h mod p, or the error that explains why there is none.
long unique_residual_root(const QPoly& h, long p, const std::string& context) {
    if (!is_p_integral(h, p)) fail(ErrorKind::ReducibleInput, context + ": roots of unequal value");
    auto fac = factor_mod_p(FpPoly::from_q(h, p));
    if (fac.size() != 1) fail(ErrorKind::ReducibleInput, context + ": residual polynomial has distinct factors");
    const FpPoly& q = fac[0].first;
    if (q.degree() > 1)
        fail(ErrorKind::RequiresResidueExtension, context + ": residual factor " + q.str("y") + " of degree > 1");
    return (p - q.coeff(0)) % p;
}

}  // namespace

MacLaneVal maclane_chain(const QPoly& g, long p) {
    if (!g.is_monic() || !is_p_integral(g, p) || g.degree() < 1)
        fail(ErrorKind::InvalidInput, g.str() + " is not a monic integral polynomial of positive degree");
    MacLaneVal prefix(p);
    if (g.degree() == 1) return prefix;
    if (gcd(g, g.derivative()).degree() > 0) fail(ErrorKind::ReducibleInput, g.str() + " has a repeated factor");
    std::string ctx = "reduction of " + g.str();
    long c0 = unique_residual_root(g, p, ctx);
    QPoly phi = QPoly::linear(c0);
    const int limit = 64 * g.degree() + 256;
    for (int iter = 0; iter < limit; ++iter) {
        ExtRat lam = root_valuation(phi, g, p);
        if (lam.is_inf()) fail(ErrorKind::ReducibleInput, g.str() + " shares a root with " + phi.str());
        long e = ram_index(prefix);
        mpq_class scaled = lam.value() * e;
        scaled.canonicalize();
        long order = to_long(scaled.get_den());
        mpq_class target = lam.value() * order;
        Monomial mon = monomial(prefix, target);
        QPoly mpoly = monomial_poly(prefix, mon);
        QPoly u = (phi.pow(static_cast<int>(order)) * invmod(mpoly, g)) % g;
        QPoly chi = charpoly_mod(u, g);
        long c = unique_residual_root(chi, p, ctx);
        if (c == 0) fail(ErrorKind::ReducibleInput, ctx + ": residual root zero");
        QPoly next = phi.pow(static_cast<int>(order)) - mpoly * mpq_class(c);
        if (order > 1) prefix = normalize(prefix.extended(phi, lam));
        if (next.degree() == g.degree()) return prefix;
        if (next.degree() > g.degree()) fail(ErrorKind::ReducibleInput, ctx + ": key degree overshoots");
        phi = next;
    }
    fail(ErrorKind::NonTermination, "Mac Lane approximation of " + g.str() + " did not terminate");
}

MacLaneVal pseudo_of(const QPoly& g, long p) {
    return maclane_chain(g, p).extended(g, ExtRat::infinity());
}

bool is_proper_key(const MacLaneVal& v0, const QPoly& g) {
    MacLaneVal v = normalize(v0);
    long p = v.prime();
    if (!g.is_monic() || !is_p_integral(g, p)) return false;
    if (v.is_pseudo()) return false;
    if (v.is_gauss()) return g.degree() == 1;
    const Step& top = v.last();
    if (g.degree() % top.phi.degree() != 0) return false;
    long e = g.degree() / top.phi.degree();
    long rel = ram_index(v) / ram_index(v.prefix(v.length() - 1));
    if (e != rel) return false;
    if (valuate(v, g) != top.lambda * mpq_class(e)) return false;
    return equal(maclane_chain(g, p), v);
}

}  // namespace regmodels
