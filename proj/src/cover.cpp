#include "regmodels/cover.hpp"

#include <algorithm>
#include <numeric>

#include "regmodels/errors.hpp"

namespace regmodels {

namespace {

long lgcd(long a, long b) { return std::gcd(a, b); }

long integer_or_fail(const mpq_class& q, const std::string& what) {
    if (!is_integer(q)) fail(ErrorKind::StructureViolation, what + " = " + rat_str(q) + " is not an integer");
    return to_long(q.get_num());
}

mpz_class pow_p(long p, long b) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(b));
    return r;
}

// f(c + p t) / p^deg f
QPoly rescale(const QPoly& f, const mpq_class& c, long p) {
    QPoly inner({c, mpq_class(p)});
    QPoly g = f.compose(inner);
    mpq_class scale(1, pow_p(p, f.degree()));
    scale.canonicalize();
    return g * scale;
}

}  // namespace

long Cover::degree() const {
    long deg = 0;
    for (const auto& fa : spec.factors) deg += fa.a * fa.f.degree();
    return deg;
}

mpq_class Cover::value(const MacLaneVal& v) const {
    mpq_class total = spec.a;
    for (const auto& fa : spec.factors) total += valuate(v, fa.f).value() * fa.a;
    total.canonicalize();
    return total;
}

mpq_class Cover::value_without(const MacLaneVal& v, size_t i) const {
    mpq_class total = spec.a;
    for (size_t j = 0; j < spec.factors.size(); ++j)
        if (j != i) total += valuate(v, spec.factors[j].f).value() * spec.factors[j].a;
    total.canonicalize();
    return total;
}

bool Cover::above(const MacLaneVal& v, size_t i) const { return leq(v, pseudo[i]); }

ValuationForest Cover::pseudos() const { return ValuationForest(spec.p, pseudo); }

Cover validate_normalize(const CoverSpec& raw) {
    if (raw.p < 2 || !is_prime(raw.p)) fail(ErrorKind::InvalidInput, "p = " + std::to_string(raw.p) + " is not prime");
    if (raw.d < 2) fail(ErrorKind::InvalidInput, "d must be at least 2");
    if (raw.d % raw.p == 0) fail(ErrorKind::InvalidInput, "p divides d");
    Cover cover;
    CoverSpec& spec = cover.spec;
    spec.p = raw.p;
    spec.d = raw.d;
    spec.a = ((raw.a % raw.d) + raw.d) % raw.d;
    for (const auto& fa : raw.factors) {
        if (fa.f.degree() < 1 || !fa.f.is_monic() || !is_p_integral(fa.f, raw.p))
            fail(ErrorKind::InvalidInput, "factor " + fa.f.str() + " is not monic, integral and nonconstant");
        for (const auto& other : raw.factors)
            if (&other != &fa && other.f == fa.f) fail(ErrorKind::InvalidInput, "factor " + fa.f.str() + " repeated");
        long ai = ((fa.a % raw.d) + raw.d) % raw.d;
        if (ai == 0) {
            cover.notes.push_back("dropped " + fa.f.str() + ": exponent divisible by d");
            continue;
        }
        spec.factors.push_back({fa.f, ai});
    }
    long deg = cover.degree();
    if (deg % spec.d != 0) fail(ErrorKind::InvalidInput, "d does not divide deg f");
    if (deg < 3) fail(ErrorKind::InvalidInput, "deg f must be at least 3");
    long common = std::gcd(spec.d, spec.a);
    for (const auto& fa : spec.factors) common = std::gcd(common, fa.a);
    if (common > 1)
        fail(ErrorKind::ReducibleInput, "f is a perfect power of exponent " + std::to_string(common) + " up to a unit; the cover is reducible");
    for (const auto& fa : spec.factors) maclane_chain(fa.f, spec.p);

    // Weak minimality: no residue class contains every root to depth 1.
    for (int round = 0;; ++round) {
        if (round > 4096) fail(ErrorKind::NonTermination, "weak-minimality normalization did not terminate");
        std::optional<long> shared;
        bool common = true;
        for (const auto& fa : spec.factors) {
            auto facs = factor_mod_p(FpPoly::from_q(fa.f, spec.p));
            long c = (spec.p - facs.front().first.coeff(0)) % spec.p;
            if (facs.size() != 1 || facs.front().first.degree() != 1 || (shared && *shared != c)) {
                common = false;
                break;
            }
            shared = c;
        }
        if (common) {
            QPoly key = QPoly::linear(*shared);
            for (const auto& fa : spec.factors)
                if (root_valuation(key, fa.f, spec.p) < ExtRat(1)) common = false;
        }
        if (!common) break;
        for (auto& fa : spec.factors) fa.f = rescale(fa.f, *shared, spec.p);
        Substitution& sub = cover.substitution ? *cover.substitution : cover.substitution.emplace();
        sub.c += mpq_class(pow_p(spec.p, sub.b)) * *shared;
        sub.c.canonicalize();
        sub.b += 1;
    }
    for (const auto& fa : spec.factors) {
        cover.base.push_back(maclane_chain(fa.f, spec.p));
        cover.pseudo.push_back(normalize(cover.base.back().extended(fa.f, ExtRat::infinity())));
    }
    return cover;
}

CrossingData crossing_numbers(const Cover& cover, const CrossingPoint& c) {
    const CoverSpec& spec = cover.spec;
    long d = spec.d;
    CrossingData out;
    out.point = c;
    out.n = ram_index(c.prefix);
    MacLaneVal lower = c.lower();
    long g_deg = 0;
    mpq_class h_val = spec.a;
    for (size_t i = 0; i < spec.factors.size(); ++i) {
        const auto& fa = spec.factors[i];
        bool under = leq(c.prefix, cover.pseudo[i]);
        ExtRat rv = under ? root_valuation(c.phi, fa.f, spec.p) : ExtRat(0);
        if (under && ExtRat(c.lam) < rv && rv < ExtRat(c.lam_prime))
            fail(ErrorKind::BranchMeetsCrossing,
                 fa.f.str() + " meets the crossing of " + lower.str() + " and " + c.upper().str());
        if (under && ExtRat(c.lam) < rv) {
            g_deg += fa.a * fa.f.degree();
        } else {
            h_val += valuate(lower, fa.f).value() * fa.a;
        }
    }
    if (g_deg % c.phi.degree() != 0)
        fail(ErrorKind::StructureViolation, "deg g not divisible by deg " + c.phi.str());
    out.e = g_deg / c.phi.degree();
    out.s = integer_or_fail(h_val * out.n, "s");
    CrossingLattice cl = crossing_lattice(out.n, d, out.e, out.s, c.lam, c.lam_prime);
    out.n_tilde = cl.n_tilde;
    out.r = cl.r;
    out.lam_t = cl.lam_t;
    out.lam_t_prime = cl.lam_t_prime;
    return out;
}

CrossingData crossing_data(const Cover& cover, const CrossingPoint& c) {
    if (!(c.lam < c.lam_prime)) fail(ErrorKind::InvalidInput, "crossing needs lam < lam'");
    return crossing_numbers(cover, c);
}

std::vector<MacLaneVal> link(const Cover& cover, const CrossingPoint& c) {
    if (c.lam == c.lam_prime) return {c.lower()};
    CrossingData cd = crossing_data(cover, c);
    long d = cover.spec.d;
    long g = lgcd(d, cd.e);
    mpq_class shift(cd.r * cd.s, cd.n * d);
    shift.canonicalize();
    mpq_class back(d, g);
    back.canonicalize();
    std::vector<MacLaneVal> out;
    for (const auto& x : shortest_n_path(cd.n_tilde, cd.lam_t_prime, cd.lam_t).entries) {
        mpq_class lam = (x - shift) * back;
        lam.canonicalize();
        out.push_back(normalize(c.prefix.extended(c.phi, ExtRat(lam))));
    }
    std::reverse(out.begin(), out.end());
    return out;
}

std::vector<MacLaneVal> tail(const Cover& cover, const CuspPoint& cusp) {
    MacLaneVal v = normalize(cusp.v);
    if (v.is_gauss() || v.is_pseudo()) fail(ErrorKind::InvalidInput, "tail needs a cusp valuation");
    CrossingPoint c{v.prefix(v.length() - 1), v.last().phi, v.last().lambda.value(), v.last().lambda.value()};
    long bound = cover.degree() * cover.spec.d + 1;
    for (long round = 0; round < bound; ++round) {
        CrossingData cd = crossing_numbers(cover, c);
        mpq_class next(ceil_q(c.lam * cd.n_tilde), cd.n_tilde);
        next.canonicalize();
        if (next == c.lam_prime) return link(cover, c);
        c.lam_prime = next;
    }
    fail(ErrorKind::NonTermination, "tail at " + v.str() + " did not stabilize");
}

std::vector<MacLaneVal> branch_tail(const Cover& cover, const ValuationForest& forest, size_t i) {
    const CoverSpec& spec = cover.spec;
    const Factor& fa = spec.factors.at(i);
    auto sp = specialization(forest, fa.f);
    if (!sp) fail(ErrorKind::StructureViolation, "no member below the divisor of " + fa.f.str());
    mpq_class lam = valuate(*sp, fa.f).value();
    const MacLaneVal& base = cover.base[i];
    CrossingPoint c{base, fa.f, lam, lam};
    if (!equal(c.lower(), *sp))
        fail(ErrorKind::StructureViolation, sp->str() + " is not of the form [v_g, g = lambda] for " + fa.f.str());
    long d = spec.d;
    long n = ram_index(base);
    long s = integer_or_fail(cover.value_without(*sp, i) * n, "s");
    long n_tilde = n * lgcd(d, fa.a) / lgcd(lgcd(d, fa.a), s);
    mpz_class k = ceil_q(lam * n_tilde);
    for (long step = 0; step <= d; ++step, ++k) {
        mpq_class lp(k, n_tilde);
        lp.canonicalize();
        mpq_class cond = (frac(s, n) + lp * fa.a) * n_tilde / d;
        if (is_integer(cond)) {
            c.lam_prime = lp;
            return link(cover, c);
        }
    }
    fail(ErrorKind::StructureViolation, "no branch tail endpoint for " + fa.f.str());
}

Resolution resolve(const Cover& cover, const ValuationForest& start) {
    Resolution r{start, inf_closure(start), ValuationForest(start.prime()), ValuationForest(start.prime()),
                 ValuationForest(start.prime())};
    r.v3 = r.v2;
    for (const auto& c : standard_crossings(r.v2))
        for (const auto& v : link(cover, c)) r.v3.insert(v);
    r.v4 = r.v3;
    for (const auto& cusp : finite_cusps(r.v3))
        for (const auto& v : tail(cover, cusp)) r.v4.insert(v);
    r.v5 = r.v4;
    for (size_t i = 0; i < cover.spec.factors.size(); ++i)
        for (const auto& v : branch_tail(cover, r.v4, i)) r.v5.insert(v);
    return r;
}

VReg build_vreg(const Cover& cover) {
    ValuationForest v1(cover.spec.p);
    v1.insert(MacLaneVal(cover.spec.p));
    for (const auto& ps : cover.pseudo) {
        v1.insert(ps);
        for (const auto& pre : predecessors(ps)) v1.insert(pre);
    }
    Resolution r = resolve(cover, v1);
    ValuationForest vreg = r.v5.valuations_only();
    return {std::move(r), std::move(vreg)};
}

namespace {

ValuationForest with_pseudos(const Cover& cover, const ValuationForest& v) {
    ValuationForest out = v;
    for (const auto& ps : cover.pseudo) out.insert(ps);
    return out;
}

}  // namespace

std::vector<std::string> regularity_failures(const Cover& cover, const ValuationForest& vreg) {
    std::vector<std::string> out;
    ValuationForest full = with_pseudos(cover, vreg);
    for (const auto& c : standard_crossings(full)) {
        CrossingData cd = crossing_data(cover, c);
        if (!is_aligned(cd.n_tilde, cd.lam_t, cd.lam_t_prime))
            out.push_back("crossing " + c.lower().str() + " / " + c.upper().str() + " is not aligned");
    }
    for (const auto& cusp : finite_cusps(full)) {
        const MacLaneVal& v = cusp.v;
        CrossingPoint c{v.prefix(v.length() - 1), v.last().phi, v.last().lambda.value(), v.last().lambda.value()};
        CrossingData cd = crossing_numbers(cover, c);
        if (!is_integer(c.lam * cd.n_tilde)) out.push_back("cusp on " + v.str() + " is singular");
    }
    const long d = cover.spec.d;
    for (size_t i = 0; i < cover.spec.factors.size(); ++i) {
        const Factor& fa = cover.spec.factors[i];
        auto sp = specialization(full, fa.f);
        if (!sp) {
            out.push_back("no specialization for " + fa.f.str());
            continue;
        }
        long n = ram_index(cover.base[i]);
        mpq_class lam = valuate(*sp, fa.f).value();
        long s = integer_or_fail(cover.value_without(*sp, i) * n, "s");
        long n_tilde = n * lgcd(d, fa.a) / lgcd(lgcd(d, fa.a), s);
        bool ok = is_integer(lam * n_tilde) && is_integer((frac(s, n) + lam * fa.a) * n_tilde / d);
        if (!ok) out.push_back("branch specialization of " + fa.f.str() + " on " + sp->str() + " is singular");
    }
    return out;
}

bool resolution_is_fixed(const Cover& cover, const ValuationForest& vreg) {
    Resolution r = resolve(cover, with_pseudos(cover, vreg));
    ValuationForest again = r.v5.valuations_only();
    if (again.size() != vreg.size()) return false;
    for (const auto& v : again.members())
        if (!vreg.contains(v)) return false;
    return true;
}

RemovabilityResult removability_pass(const Cover& cover, const ValuationForest& vreg) {
    const CoverSpec& spec = cover.spec;
    const long d = spec.d;
    RemovabilityResult out{ValuationForest(spec.p), {}};
    for (const auto& v : vreg.members()) {
        bool remove = false;
        if (!v.is_gauss() && upper_neighbors(vreg, v).empty()) {
            std::vector<size_t> hits;
            for (size_t i = 0; i < spec.factors.size(); ++i)
                if (equal(cover.base[i], v)) hits.push_back(i);
            auto lower = lower_neighbors(vreg, v);
            if (hits.size() == 1 && lower.size() == 1) {
                size_t i = hits.front();
                long n = ram_index(v.prefix(v.length() - 1));
                long ev = ram_index(v);
                const MacLaneVal& w = lower.front();
                long ew = ram_index(w);
                long gw = lgcd(d, integer_or_fail(cover.value(w) * ew, "e_w w(f)"));
                long gv = lgcd(d, integer_or_fail(cover.value(v) * ev, "e_v v(f)"));
                bool b = 2 * spec.factors[i].a == d;
                bool c = ev == 2 * n;
                bool dd = frac(ew, n) == frac(gw, gv);
                if (b && c && dd) {
                    remove = true;
                    out.removed.push_back({v, i,
                                           {"(a) v = v_f for " + spec.factors[i].f.str(),
                                            "(b) a_i = d/2 = " + std::to_string(d / 2),
                                            "(c) e_v/N = 2",
                                            "(d) e_w/N = " + rat_str(frac(ew, n)) + " for w = " + w.str()}});
                }
            }
        }
        if (!remove) out.kept.insert(v);
    }
    return out;
}

InftyData infty_data(const Cover& cover, const MacLaneVal& v0) {
    const CoverSpec& spec = cover.spec;
    const long d = spec.d;
    MacLaneVal v = normalize(v0);
    if (v.length() > 1 || v.is_pseudo()) fail(ErrorKind::InvalidInput, v.str() + " has inductive length > 1");
    QPoly phi = v.is_gauss() ? QPoly::x() : v.last().phi;
    mpq_class lam = v.is_gauss() ? mpq_class(0) : v.last().lambda.value();
    InftyData out;
    out.v = v;
    long g = 0;
    for (size_t i = 0; i < spec.factors.size(); ++i) {
        if (cover.above(v, i)) {
            out.e += spec.factors[i].a * spec.factors[i].f.degree();
        } else {
            out.outside.push_back(i);
            g = lgcd(g, spec.factors[i].a);
        }
    }
    g = lgcd(lgcd(g, d), out.e);
    out.beta = lgcd(g, spec.a);
    long ev = ram_index(v);
    long evf = integer_or_fail(cover.value(v) * ev, "e_v v(f)");
    out.cond_i = (g / out.beta) % ev == 0;
    out.cond_ii = out.outside.empty();
    if (out.outside.size() == 1) {
        const Factor& f1 = spec.factors[out.outside.front()];
        out.cond_iii = f1.f.degree() == 1 && lgcd(d / lgcd(d, f1.a), d / lgcd(d, evf)) == 1;
        out.cond_iv = ev == 1 && d == 2 * out.beta && evf % (2 * out.beta) == 0 && f1.f.degree() == 2 &&
                      root_valuation(phi, f1.f, spec.p) == ExtRat(lam - frac(1, 2));
    }
    return out;
}

std::vector<MacLaneVal> compute_s(const Cover& cover, const ValuationForest& vprime) {
    std::vector<MacLaneVal> out;
    for (const auto& v : vprime.members())
        if (!v.is_pseudo() && v.length() <= 1 && infty_data(cover, v).in_s()) out.push_back(v);
    return out;
}

namespace {

mpq_class key_root(const MacLaneVal& v) { return -v.last().phi.coeff(0); }

void require_infty_shape(const MacLaneVal& v, const MacLaneVal& vp) {
    if (v.length() != 1 || vp.length() != 1 || v.is_pseudo() || vp.is_pseudo())
        fail(ErrorKind::InvalidInput, "infinity crossing needs two length-1 valuations");
    if (p_valuation(key_root(v) - key_root(vp), v.prime()) != ExtRat(0))
        fail(ErrorKind::InvalidInput, "infinity crossing needs centers in distinct residue classes");
}

bool partitioned(const Cover& cover, const MacLaneVal& v, const MacLaneVal& vp) {
    for (size_t i = 0; i < cover.spec.factors.size(); ++i)
        if (!cover.above(v, i) && !cover.above(vp, i)) return false;
    return true;
}

}  // namespace

InftyCrossingData infty_crossing_data(const Cover& cover, const MacLaneVal& v0, const MacLaneVal& vp0) {
    MacLaneVal v = normalize(v0), vp = normalize(vp0);
    require_infty_shape(v, vp);
    if (!partitioned(cover, v, vp))
        fail(ErrorKind::NotPartitioned, "some factor lies above neither " + v.str() + " nor " + vp.str());
    const CoverSpec& spec = cover.spec;
    const long d = spec.d;
    InftyCrossingData out;
    for (size_t i = 0; i < spec.factors.size(); ++i) {
        long deg = spec.factors[i].a * spec.factors[i].f.degree();
        if (cover.above(v, i)) {
            out.delta += deg;
        } else {
            out.delta_prime += deg;
        }
    }
    out.mu = v.last().lambda.value();
    out.mu_prime = vp.last().lambda.value();
    long g = lgcd(d, out.delta_prime);
    out.r = crossing_r(d, out.delta_prime);
    out.n_tilde = g / lgcd(g, spec.a);
    mpq_class shift(out.r * spec.a, d);
    mpq_class scale(g, d);
    shift.canonicalize();
    scale.canonicalize();
    out.lo = -scale * out.mu + shift;
    out.hi = scale * out.mu_prime + shift;
    out.lo.canonicalize();
    out.hi.canonicalize();
    out.aligned = is_aligned(out.n_tilde, out.lo, out.hi);
    return out;
}

bool infty_crossing_check(const Cover& cover, const MacLaneVal& v, const MacLaneVal& vp) {
    return infty_crossing_data(cover, v, vp).aligned;
}

const char* min_case_name(MinCase c) {
    switch (c) {
        case MinCase::I: return "3(i)";
        case MinCase::II: return "3(ii)";
        case MinCase::III: return "3(iii)";
    }
    return "?";
}

MinResult minimize(const Cover& cover, const ValuationForest& vprime) {
    const CoverSpec& spec = cover.spec;
    MinResult out;
    out.vmin = vprime;
    out.s = compute_s(cover, vprime);
    MacLaneVal gauss(spec.p);
    if (!vprime.contains(gauss)) fail(ErrorKind::StructureViolation, "v0 missing from the base");
    auto nbrs = neighbors(vprime, gauss);
    out.v0_neighbors = static_cast<long>(nbrs.size());

    if (out.s.size() == 1) {
        if (nbrs.size() != 2) {
            out.which = MinCase::I;
            return out;
        }
        out.which = MinCase::II;
        auto side = [&](const MacLaneVal& w) {
            std::vector<MacLaneVal> c;
            for (const auto& v : vprime.members())
                if (v.length() == 1 && leq(w, v)) c.push_back(v);
            return c;
        };
        std::vector<std::pair<MacLaneVal, MacLaneVal>> valid;
        for (const auto& v : side(nbrs[0]))
            for (const auto& vp : side(nbrs[1])) {
                if (p_valuation(key_root(v) - key_root(vp), spec.p) != ExtRat(0)) continue;
                if (!partitioned(cover, v, vp)) continue;
                if (infty_crossing_check(cover, v, vp)) valid.emplace_back(v, vp);
            }
        std::vector<std::pair<MacLaneVal, MacLaneVal>> maximal;
        for (const auto& a : valid) {
            bool dominated = false;
            for (const auto& b : valid)
                if (leq(a.first, b.first) && leq(a.second, b.second) &&
                    !(equal(a.first, b.first) && equal(a.second, b.second)))
                    dominated = true;
            if (!dominated) maximal.push_back(a);
        }
        if (maximal.size() > 1) fail(ErrorKind::StructureViolation, "no unique maximal infinity-crossing pair");
        if (maximal.empty()) return out;
        out.pair = maximal.front();
        ValuationForest vmin(spec.p);
        for (const auto& nu : vprime.members())
            if (leq(out.pair->first, nu) || leq(out.pair->second, nu)) vmin.insert(nu);
        out.vmin = vmin;
        return out;
    }

    out.which = MinCase::III;
    std::vector<MacLaneVal> tops;
    for (const auto& a : out.s) {
        bool top = true;
        for (const auto& b : out.s)
            if (lt(a, b)) top = false;
        if (top) tops.push_back(a);
    }
    if (tops.size() != 1) fail(ErrorKind::StructureViolation, "S has no unique maximal element");
    const MacLaneVal v = tops.front();
    out.s_max = v;
    ValuationForest above(spec.p);
    for (const auto& w : vprime.members())
        if (leq(v, w)) above.insert(w);
    out.vmin = above;
    if (v.length() != 1) return out;
    auto ups = upper_neighbors(above, v);
    if (ups.size() != 1 || ups.front().length() != 2) return out;
    const MacLaneVal& w = ups.front();
    long ew = ram_index(w);
    bool c1 = ram_index(v) == 2;
    bool c2 = true;
    for (size_t i = 0; i < spec.factors.size(); ++i) c2 = c2 && cover.above(w, i);
    long ewf = integer_or_fail(cover.value(w) * ew, "e_w w(f)");
    long gda = spec.a == 0 ? spec.d : lgcd(spec.d, spec.a);
    bool c3 = lgcd(spec.d, ewf) == 2 * ew * gda;
    if (c1 && c2 && c3) {
        out.placeholder_removed = true;
        ValuationForest vmin(spec.p);
        for (const auto& u : above.members())
            if (!equal(u, v)) vmin.insert(u);
        out.vmin = vmin;
    }
    return out;
}

Pipeline run_pipeline(const CoverSpec& spec) {
    Pipeline out{validate_normalize(spec), {}, {}, {}};
    out.reg = build_vreg(out.cover);
    out.removal = removability_pass(out.cover, out.reg.vreg);
    out.min = minimize(out.cover, out.removal.kept);
    return out;
}

}  // namespace regmodels
