#include "regmodels/npath.hpp"

#include <numeric>
#include <sstream>

#include "regmodels/errors.hpp"

namespace regmodels {

std::string NPath::str() const {
    std::ostringstream os;
    for (size_t i = 0; i < entries.size(); ++i) {
        if (i) os << " > ";
        os << rat_str(entries[i]);
    }
    return os.str();
}

mpq_class simplest_between(const mpq_class& lo, const mpq_class& hi) {
    if (!(lo < hi)) fail(ErrorKind::InvalidInput, "empty interval");
    mpz_class fl = floor_q(lo);
    mpq_class next(fl + 1);
    if (next < hi) return next;
    mpq_class x = lo - mpq_class(fl);
    mpq_class y = hi - mpq_class(fl);
    mpq_class inner;
    if (x == 0) {
        inner = mpq_class(floor_q(mpq_class(1 / y)) + 1);
    } else {
        inner = simplest_between(mpq_class(1 / y), mpq_class(1 / x));
    }
    mpq_class out = mpq_class(fl) + 1 / inner;
    out.canonicalize();
    return out;
}

namespace {

bool farey_adjacent(const mpq_class& a, const mpq_class& b) {
    return a.get_num() * b.get_den() - b.get_num() * a.get_den() == 1;
}

mpz_class lcm_z(const mpz_class& a, const mpz_class& b) {
    mpz_class r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

}  // namespace

bool is_n_step(long n, const mpq_class& a, const mpq_class& b) {
    if (!(a > b)) return false;
    mpz_class nz = n;
    mpq_class expected(nz, lcm_z(nz, a.get_den()) * lcm_z(nz, b.get_den()));
    expected.canonicalize();
    return a - b == expected;
}

NPath shortest_n_path(long n, const mpq_class& hi, const mpq_class& lo) {
    if (n < 1) fail(ErrorKind::InvalidInput, "N-path needs N >= 1");
    if (!(hi > lo)) fail(ErrorKind::InvalidInput, "N-path needs hi > lo");
    mpq_class h = hi * n, l = lo * n;
    h.canonicalize();
    l.canonicalize();
    // Scaled by N, the path is a 1-path; fill gaps between non-adjacent neighbors.
    std::vector<mpq_class> done{h};
    std::vector<mpq_class> pending{l};
    while (!pending.empty()) {
        mpq_class top = pending.back();
        if (farey_adjacent(done.back(), top)) {
            done.push_back(top);
            pending.pop_back();
        } else {
            pending.push_back(simplest_between(top, done.back()));
        }
    }
    NPath path;
    path.n = n;
    for (auto& x : done) {
        mpq_class y = x / n;
        y.canonicalize();
        path.entries.push_back(y);
    }
    return path;
}

bool is_aligned(long n, const mpq_class& lam, const mpq_class& lam_prime) {
    if (!(lam_prime > lam)) fail(ErrorKind::InvalidInput, "is_aligned needs lam' > lam");
    return shortest_n_path(n, lam_prime, lam).entries.size() == 2;
}

LatticeBasis lattice_basis(const std::vector<std::pair<mpq_class, mpq_class>>& gens) {
    if (gens.empty()) fail(ErrorKind::DegenerateLattice, "no generators");
    mpz_class den = 1;
    for (const auto& [x, y] : gens) den = lcm_z(lcm_z(den, x.get_den()), y.get_den());
    // Coordinates (x, y - x), scaled to integers.
    std::vector<std::pair<mpz_class, mpz_class>> rows;
    for (const auto& [x, y] : gens) {
        mpq_class a = x * mpq_class(den), b = (y - x) * mpq_class(den);
        a.canonicalize();
        b.canonicalize();
        rows.emplace_back(a.get_num(), b.get_num());
    }
    // Euclid on the second coordinate.
    while (true) {
        size_t best = rows.size();
        for (size_t i = 0; i < rows.size(); ++i)
            if (rows[i].second != 0 && (best == rows.size() || abs(rows[i].second) < abs(rows[best].second))) best = i;
        if (best == rows.size()) break;
        bool reduced = false;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == best || rows[i].second == 0) continue;
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), rows[i].second.get_mpz_t(), rows[best].second.get_mpz_t());
            rows[i].first -= q * rows[best].first;
            rows[i].second -= q * rows[best].second;
            reduced = true;
        }
        if (!reduced) break;
    }
    mpz_class diag = 0, a_off = 0, b_off = 0;
    for (const auto& [a, b] : rows) {
        if (b == 0) {
            mpz_gcd(diag.get_mpz_t(), diag.get_mpz_t(), a.get_mpz_t());
        } else {
            a_off = a;
            b_off = b;
        }
    }
    if (diag == 0 || b_off == 0) fail(ErrorKind::DegenerateLattice, "lattice has rank < 2");
    if (b_off < 0) {
        a_off = -a_off;
        b_off = -b_off;
    }
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), a_off.get_mpz_t(), diag.get_mpz_t());
    LatticeBasis out;
    out.diag = mpq_class(diag, den);
    out.lam = mpq_class(r, den);
    out.lam_prime = mpq_class(r + b_off, den);
    out.diag.canonicalize();
    out.lam.canonicalize();
    out.lam_prime.canonicalize();
    return out;
}

long crossing_r(long d, long e) {
    long g = std::gcd(d, e);
    long m = d / g;
    if (m == 1) return 0;
    long k = (e / g) % m;
    if (k < 0) k += m;
    return mod_inverse(k, m);
}

CrossingLattice crossing_lattice(long n, long d, long e, long s, const mpq_class& lam, const mpq_class& lam_prime) {
    long g = std::gcd(d, e);
    long g3 = std::gcd(g, s);
    CrossingLattice out;
    out.n_tilde = n * g / g3;
    out.r = crossing_r(d, e);
    mpq_class shift(out.r * s, n * d);
    shift.canonicalize();
    mpq_class scale(g, d);
    scale.canonicalize();
    out.lam_t = scale * lam + shift;
    out.lam_t_prime = scale * lam_prime + shift;
    out.lam_t.canonicalize();
    out.lam_t_prime.canonicalize();
    return out;
}

}  // namespace regmodels
