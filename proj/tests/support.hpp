#pragma once

// Generators and independent oracles shared by the unit tests and the acceptance binary.
// Oracles avoid the library code they check: they use only QPoly arithmetic and p_valuation.

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "regmodels/batch.hpp"
#include "regmodels/errors.hpp"
#include "regmodels/fiber.hpp"
#include "regmodels/npath.hpp"

namespace support {

using namespace regmodels;

inline QPoly poly(std::initializer_list<long> lowest_first) {
    std::vector<mpq_class> c;
    for (long x : lowest_first) c.emplace_back(x);
    return QPoly(c);
}

inline mpq_class q(long num, long den = 1) { return frac(num, den); }

inline long pick(std::mt19937_64& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline long ipow(long b, long e) {
    long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

inline MacLaneVal chain(long p, std::vector<std::pair<QPoly, mpq_class>> steps) {
    MacLaneVal v(p);
    for (auto& [phi, lam] : steps) v = augment(v, phi, ExtRat(lam));
    return v;
}

inline CoverSpec make_spec(long p, long d, long a, std::vector<std::pair<QPoly, long>> factors) {
    CoverSpec s;
    s.p = p;
    s.d = d;
    s.a = a;
    for (auto& [f, e] : factors) s.factors.push_back({f, e});
    return s;
}

// z^5 = (t - 1)^2 (t^3 - p^2)
inline CoverSpec quintic(long p = 3) { return make_spec(p, 5, 0, {{poly({-1, 1}), 2}, {poly({-p * p, 0, 0, 1}), 1}}); }
// z^2 = (t - 1)(t - 2)(t^2 - p)
inline CoverSpec elliptic(long p) { return make_spec(p, 2, 0, {{poly({-1, 1}), 1}, {poly({-2, 1}), 1}, {poly({-p, 0, 1}), 1}}); }
// z^8 = p (t^2 - p)^4
inline CoverSpec octic(long p = 3) { return make_spec(p, 8, 1, {{poly({-p, 0, 1}), 4}}); }
// z^6 = p (t^3 - p) ((t - 1)^3 - p)
inline CoverSpec sextic(long p = 5) {
    return make_spec(p, 6, 1, {{poly({-p, 0, 0, 1}), 1}, {poly({-1 - p, 3, -3, 1}), 1}});
}

inline std::vector<std::string> strs(const ValuationForest& f) {
    std::vector<std::string> out;
    for (const auto& v : f.sorted()) out.push_back(v.str());
    return out;
}

inline std::vector<std::string> sorted_strs(std::vector<MacLaneVal> vs) {
    std::vector<std::string> out;
    for (const auto& v : vs) out.push_back(v.str());
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<std::string> sorted_strs(std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
}

// Random integral polynomial of degree <= max_deg, not zero.
inline QPoly random_poly(std::mt19937_64& rng, long p, int max_deg) {
    for (;;) {
        int deg = static_cast<int>(pick(rng, 0, max_deg));
        std::vector<mpq_class> c;
        long bound = ipow(p, 3);
        for (int i = 0; i <= deg; ++i) c.emplace_back(pick(rng, -bound, bound));
        QPoly g(c);
        if (!g.is_zero()) return g;
    }
}

// Valuation of inductive length 0..2 with explicit keys t - c and (t - c)^k - p^b u.
inline MacLaneVal random_valuation(std::mt19937_64& rng, long p) {
    long len = pick(rng, 0, 2);
    if (len == 0) return MacLaneVal(p);
    long c = pick(rng, 0, p * p - 1);
    mpq_class lam = q(pick(rng, 1, 8), pick(rng, 1, 4));
    MacLaneVal v1 = augment(MacLaneVal(p), QPoly::linear(c), lam);
    long k = to_long(lam.get_den());
    if (len == 1 || k == 1) return v1;
    long b = to_long(lam.get_num());
    QPoly phi2 = QPoly::linear(c).pow(static_cast<int>(k)) - QPoly(mpq_class(ipow(p, b) * pick(rng, 1, p - 1)));
    mpq_class lam2 = mpq_class(b) + q(pick(rng, 1, 6), pick(rng, 1, 3));
    return augment(v1, phi2, lam2);
}

// A pseudovaluation v_g^inf for a random irreducible g of the shapes above.
inline MacLaneVal random_pseudo(std::mt19937_64& rng, long p) {
    long c = pick(rng, 0, p * p - 1);
    long k = pick(rng, 1, 3);
    if (k == 1) return pseudo_of(QPoly::linear(c), p);
    long b = pick(rng, 1, 5);
    while (std::gcd(b, k) != 1) ++b;
    QPoly g = QPoly::linear(c).pow(static_cast<int>(k)) - QPoly(mpq_class(ipow(p, b) * pick(rng, 1, p - 1)));
    return pseudo_of(g, p);
}

// ---- N-paths --------------------------------------------------------------

inline mpz_class lcmz(const mpz_class& a, const mpz_class& b) {
    mpz_class r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// a - b = N / (lcm(N, den a) lcm(N, den b))
inline bool n_step_identity(long n, const mpq_class& a, const mpq_class& b) {
    mpz_class nn(n);
    mpq_class rhs(nn, lcmz(nn, a.get_den()) * lcmz(nn, b.get_den()));
    rhs.canonicalize();
    return a - b == rhs;
}

inline bool is_n_path(long n, const std::vector<mpq_class>& e) {
    for (size_t i = 0; i + 1 < e.size(); ++i)
        if (!(e[i] > e[i + 1]) || !n_step_identity(n, e[i], e[i + 1])) return false;
    return !e.empty();
}

// No proper subsequence keeping both endpoints is an N-path.
inline bool subsequence_minimal(long n, const std::vector<mpq_class>& e) {
    size_t inner = e.size() >= 2 ? e.size() - 2 : 0;
    for (unsigned mask = 0; mask + 1 < (1u << inner); ++mask) {
        std::vector<mpq_class> sub{e.front()};
        for (size_t i = 0; i < inner; ++i)
            if (mask & (1u << i)) sub.push_back(e[i + 1]);
        if (e.size() >= 2) sub.push_back(e.back());
        if (is_n_path(n, sub)) return false;
    }
    return true;
}

// Fewest entries of an N-path from hi down to lo through rationals with denominator <= max_den.
inline std::optional<size_t> bfs_shortest(long n, const mpq_class& hi, const mpq_class& lo, long max_den) {
    if (hi == lo) return 1;
    std::vector<mpq_class> nodes;
    std::set<mpq_class> seen;
    for (long den = 1; den <= max_den; ++den) {
        mpz_class start = floor_q(lo * den);
        for (mpz_class num = start; mpq_class(num, den) <= hi; ++num) {
            mpq_class x(num, den);
            x.canonicalize();
            if (x >= lo && x <= hi && seen.insert(x).second) nodes.push_back(x);
        }
    }
    std::map<mpq_class, size_t> dist{{hi, 1}};
    std::deque<mpq_class> queue{hi};
    while (!queue.empty()) {
        mpq_class x = queue.front();
        queue.pop_front();
        if (x == lo) return dist[x];
        for (const auto& y : nodes)
            if (y < x && !dist.count(y) && n_step_identity(n, x, y)) {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
    }
    return std::nullopt;
}

// ---- lattices -------------------------------------------------------------

// Hermite form (a, b, c) of the row lattice: rows (a, b), (0, c) with a, c > 0 and 0 <= b < c.
inline std::tuple<mpq_class, mpq_class, mpq_class> hermite(const std::vector<std::pair<mpq_class, mpq_class>>& gens) {
    mpz_class den = 1;
    for (const auto& [x, y] : gens) den = lcmz(lcmz(den, x.get_den()), y.get_den());
    std::vector<std::pair<mpz_class, mpz_class>> rows;
    for (const auto& [x, y] : gens) {
        mpq_class sx = x * den, sy = y * den;
        rows.emplace_back(sx.get_num(), sy.get_num());
    }
    for (;;) {
        std::vector<size_t> nz;
        for (size_t i = 0; i < rows.size(); ++i)
            if (rows[i].first != 0) nz.push_back(i);
        if (nz.size() <= 1) break;
        size_t piv = nz.front();
        for (size_t i : nz)
            if (abs(rows[i].first) < abs(rows[piv].first)) piv = i;
        for (size_t i : nz) {
            if (i == piv) continue;
            mpz_class qq = rows[i].first / rows[piv].first;
            rows[i].first -= qq * rows[piv].first;
            rows[i].second -= qq * rows[piv].second;
        }
    }
    mpz_class a = 0, b = 0, c = 0;
    for (const auto& [x, y] : rows) {
        if (x != 0) {
            a = x;
            b = y;
        } else {
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), c.get_mpz_t(), y.get_mpz_t());
            c = g;
        }
    }
    if (a < 0) {
        a = -a;
        b = -b;
    }
    if (c != 0) {
        b %= c;
        if (b < 0) b += c;
    }
    return {frac(a, den), frac(b, den), frac(c, den)};
}

// ---- F_p polynomials ------------------------------------------------------

using Coeffs = std::vector<long>;  // lowest first, mod p, trimmed

inline Coeffs trim(Coeffs c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
    return c;
}

// Quotient if d divides a exactly (d monic).
inline std::optional<Coeffs> divide_exact(Coeffs a, const Coeffs& d, long p) {
    if (a.size() < d.size()) return std::nullopt;
    Coeffs quot(a.size() - d.size() + 1, 0);
    for (size_t k = quot.size(); k-- > 0;) {
        long coef = a[k + d.size() - 1];
        quot[k] = coef;
        for (size_t j = 0; j < d.size(); ++j) a[k + j] = ((a[k + j] - coef * d[j]) % p + p) % p;
    }
    if (!trim(a).empty()) return std::nullopt;
    return trim(quot);
}

// Trial division by every monic polynomial in increasing degree; returns irreducible factors
// with multiplicity.
inline std::vector<std::pair<Coeffs, int>> brute_factor(Coeffs g, long p) {
    g = trim(g);
    long lc = g.back();
    long inv = 1;
    while ((inv * lc) % p != 1) ++inv;
    for (auto& x : g) x = (x * inv) % p;
    std::vector<std::pair<Coeffs, int>> out;
    for (size_t deg = 1; g.size() > 1 && deg + 1 <= g.size(); ++deg) {
        long total = ipow(p, static_cast<long>(deg));
        for (long code = 0; code < total && g.size() > 1; ++code) {
            Coeffs d(deg + 1, 1);
            long c = code;
            for (size_t i = 0; i < deg; ++i) {
                d[i] = c % p;
                c /= p;
            }
            int mult = 0;
            while (auto quo = divide_exact(g, d, p)) {
                g = *quo;
                ++mult;
            }
            if (mult > 0) out.emplace_back(d, mult);
        }
    }
    return out;
}

inline Coeffs reduce_mod_p(const QPoly& f, long p) {
    Coeffs c;
    for (const auto& x : f.coeffs()) c.push_back(residue_mod(x, p));
    return trim(c);
}

// ---- valuations -----------------------------------------------------------

// v = [v0, v1(t - c) = lam] via the Taylor expansion of g at c.
inline ExtRat taylor_value(const mpq_class& c, const mpq_class& lam, const QPoly& g, long p) {
    QPoly shifted = g.compose(QPoly({c, mpq_class(1)}));
    std::optional<ExtRat> best;
    for (size_t i = 0; i < shifted.coeffs().size(); ++i) {
        if (shifted.coeffs()[i] == 0) continue;
        ExtRat val = p_valuation(shifted.coeffs()[i], p) + ExtRat(lam * static_cast<long>(i));
        if (!best || val < *best) best = val;
    }
    return best ? *best : ExtRat::infinity();
}

// leq by sampling: v(g) <= w(g) on the keys of both chains and on random integral polynomials.
inline bool sampled_leq(const MacLaneVal& v, const MacLaneVal& w, std::mt19937_64& rng, int samples = 40) {
    std::vector<QPoly> gs{QPoly::x()};
    for (const auto& st : v.steps()) gs.push_back(st.phi);
    for (const auto& st : w.steps()) gs.push_back(st.phi);
    for (int i = 0; i < samples; ++i) gs.push_back(random_poly(rng, v.prime(), 4));
    for (const auto& g : gs)
        if (valuate(v, g) > valuate(w, g)) return false;
    return true;
}

// Maximum under leq of the truncation candidates of v that lie below w.
inline MacLaneVal inf_by_truncation(const MacLaneVal& v0, const MacLaneVal& w) {
    MacLaneVal v = normalize(v0);
    std::vector<MacLaneVal> cands{MacLaneVal(v.prime())};
    for (int i = 1; i <= v.length(); ++i) {
        MacLaneVal pre = v.prefix(i - 1);
        const Step& st = v.steps()[static_cast<size_t>(i - 1)];
        cands.push_back(v.prefix(i));
        ExtRat mu = valuate(w, st.phi);
        if (mu > valuate(pre, st.phi) && mu <= st.lambda) cands.push_back(pre.extended(st.phi, mu));
    }
    std::optional<MacLaneVal> best;
    for (const auto& c : cands) {
        if (!leq(c, v) || !leq(c, w)) continue;
        if (!best || leq(*best, c)) best = c;
    }
    return *best;
}

// ---- curves ---------------------------------------------------------------

// 2g - 2 summed over the geometric components of the generic fiber; infinity is unbranched.
inline long riemann_hurwitz(const CoverSpec& s) {
    long out = -2 * s.d;
    for (const auto& fa : s.factors) out += (s.d - std::gcd(s.d, fa.a)) * fa.f.degree();
    return out;
}

// K.F = sum m_i (2 p_a(C_i) - 2 - C_i^2), loops raising p_a by one.
inline long adjunction_degree(const FiberGraph& g) {
    long out = 0;
    for (size_t i = 0; i < g.vertices.size(); ++i) {
        const FiberVertex& v = g.vertices[i];
        long loops = 0;
        for (const auto& e : g.edges)
            if (e.a == i && e.b == i) ++loops;
        long self = v.self_intersection.value_or(0);
        out += v.mult * (2 * (v.genus + loops) - 2 - self);
    }
    return out;
}

inline bool connected(const FiberGraph& g) {
    std::vector<size_t> parent(g.vertices.size());
    std::iota(parent.begin(), parent.end(), size_t{0});
    auto find = [&](size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& e : g.edges) parent[find(e.a)] = find(e.b);
    for (size_t i = 0; i < parent.size(); ++i)
        if (find(i) != find(0)) return false;
    return true;
}

// Components above v = [v0, t - c = b] (b integer, or v = v0) from the reduction of
// f(c + p^b x) / p^{v(f)}: gcd of d, v(f) and the multiplicities of its irreducible factors.
inline std::optional<long> count_by_reduction(const CoverSpec& s, const MacLaneVal& v) {
    mpq_class c = 0;
    long b = 0;
    if (!v.is_gauss()) {
        if (v.length() != 1 || v.last().phi.degree() != 1) return std::nullopt;
        mpq_class lam = v.last().lambda.value();
        if (!is_integer(lam)) return std::nullopt;
        c = -v.last().phi.coeff(0);
        b = to_long(lam.get_num());
    }
    QPoly sub({c, mpq_class(ipow(s.p, b))});
    QPoly f = QPoly(mpq_class(ipow(s.p, s.a)));
    for (const auto& fa : s.factors) f = f * fa.f.compose(sub).pow(static_cast<int>(fa.a));
    ExtRat low = ExtRat::infinity();
    for (const auto& x : f.coeffs())
        if (x != 0) low = min(low, p_valuation(x, s.p));
    mpz_class scale;
    mpz_pow_ui(scale.get_mpz_t(), mpz_class(s.p).get_mpz_t(), to_long(low.value().get_num()));
    f = f * (mpq_class(1) / mpq_class(scale));
    Coeffs red = reduce_mod_p(f, s.p);
    long n = std::gcd(s.d, to_long(low.value().get_num()));
    for (const auto& [fac, mult] : brute_factor(red, s.p)) n = std::gcd(n, static_cast<long>(mult));
    return n;
}

inline std::vector<CoverSpec> random_pool(std::uint64_t seed, size_t count, bool monic_odd = false) {
    RandomSpecOptions opt;
    opt.monic = monic_odd;
    opt.odd_d = monic_odd;
    return random_specs(seed, count, opt);
}

}  // namespace support
