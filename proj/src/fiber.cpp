#include "regmodels/fiber.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "regmodels/errors.hpp"

namespace regmodels {

namespace {

long lgcd(long a, long b) { return std::gcd(a, b); }

long integral(const mpq_class& q, const std::string& what) {
    if (!is_integer(q)) fail(ErrorKind::StructureViolation, what + " = " + rat_str(q) + " is not an integer");
    return to_long(q.get_num());
}

struct Frame {
    MacLaneVal v, prefix;
    QPoly phi;
    mpq_class lam;
    long e = 1, e_rel = 1;
};

Frame frame_of(const MacLaneVal& v0) {
    Frame f;
    f.v = normalize(v0);
    if (f.v.is_gauss()) {
        f.prefix = f.v;
        f.phi = QPoly::x();
        f.lam = 0;
        return f;
    }
    f.prefix = f.v.prefix(f.v.length() - 1);
    f.phi = f.v.last().phi;
    f.lam = f.v.last().lambda.value();
    f.e = ram_index(f.v);
    f.e_rel = f.e / ram_index(f.prefix);
    return f;
}

// Which direction at v the valuation or pseudovaluation u lies in.
size_t direction_of(const Frame& fr, std::vector<Direction>& dirs, std::vector<MacLaneVal>& reps,
                    const MacLaneVal& u) {
    if (!leq(fr.v, u)) return 0;
    if (valuate(u, fr.phi) > ExtRat(fr.lam)) return 1;
    for (size_t k = 2; k < dirs.size(); ++k)
        if (lt(fr.v, inf(u, reps[k]))) return k;
    dirs.push_back(Direction{DirKind::Class, {}, {}, 0});
    reps.push_back(u);
    return dirs.size() - 1;
}

}  // namespace

long mult_upstairs(const Cover& cover, const MacLaneVal& v) {
    long e = ram_index(v);
    long big_g = integral(cover.value(v) * e, "e_v v(f)");
    return e * cover.spec.d / lgcd(cover.spec.d, big_g);
}

ComponentData component_data(const Cover& cover, const ValuationForest& base, const MacLaneVal& v0) {
    const CoverSpec& spec = cover.spec;
    const long d = spec.d;
    Frame fr = frame_of(v0);
    ComponentData out;
    out.v = fr.v;
    out.e = fr.e;
    out.big_g = integral(cover.value(fr.v) * fr.e, "e_v v(f)");
    long g0 = lgcd(d, out.big_g);
    out.mult = fr.e * d / g0;

    long y_n = 0;
    if (!fr.v.is_gauss()) y_n = monomial(fr.v, frac(1, fr.e)).y.back();

    out.directions = {Direction{DirKind::Down, {}, {}, 0}, Direction{DirKind::Zero, {}, {}, 0}};
    std::vector<MacLaneVal> reps(2);
    for (const auto& u : neighbors(base.valuations_only(), fr.v))
        out.directions[direction_of(fr, out.directions, reps, u)].members.push_back(u);

    mpz_class sum_min = 0, sum_max = 0;
    std::vector<mpz_class> class_num(out.directions.size(), 0);
    for (size_t i = 0; i < spec.factors.size(); ++i) {
        const Factor& fa = spec.factors[i];
        size_t k = direction_of(fr, out.directions, reps, cover.pseudo[i]);
        out.directions[k].factors.push_back(i);
        auto digits = expand(fa.f, fr.phi);
        std::optional<ExtRat> best;
        long i_min = 0, i_max = 0;
        for (size_t j = 0; j < digits.size(); ++j) {
            if (digits[j].is_zero()) continue;
            ExtRat val = valuate(fr.prefix, digits[j]) + ExtRat(fr.lam * static_cast<long>(j));
            if (!best || val < *best) {
                best = val;
                i_min = i_max = static_cast<long>(j);
            } else if (val == *best) {
                i_max = static_cast<long>(j);
            }
        }
        sum_min += mpz_class(fa.a * i_min);
        sum_max += mpz_class(fa.a * i_max);
        class_num.resize(out.directions.size(), 0);
        if (k >= 2) class_num[k] += mpz_class(fa.a * (i_max - i_min));
    }
    class_num.resize(out.directions.size(), 0);
    mpz_class shift = mpz_class(out.big_g) * y_n;
    out.directions[0].order = -integral(frac(sum_max - shift, fr.e_rel), "order at the lower point");
    out.directions[1].order = integral(frac(sum_min - shift, fr.e_rel), "order at the zero point");
    for (size_t k = 2; k < out.directions.size(); ++k)
        out.directions[k].order = integral(frac(class_num[k], fr.e_rel), "order at a residue class");

    long total = 0;
    long n = lgcd(d, out.big_g);
    for (const auto& dir : out.directions) {
        total += dir.order;
        n = lgcd(n, dir.order);
    }
    if (total != 0) fail(ErrorKind::StructureViolation, "residual orders on " + fr.v.str() + " do not sum to zero");
    out.count = n;
    out.degree = g0 / n;
    long m = out.degree;
    long twice = 2 - 2 * m;
    for (const auto& dir : out.directions) twice += m - lgcd(m, dir.order / n);
    if (twice % 2 != 0 || twice < 0)
        fail(ErrorKind::StructureViolation, "genus above " + fr.v.str() + " is not a nonnegative integer");
    out.genus = twice / 2;
    return out;
}

long component_count(const Cover& cover, const ValuationForest& base, const MacLaneVal& v) {
    return component_data(cover, base, v).count;
}

namespace {

long points_on_lifts(const ComponentData& c, const Direction& dir) {
    return c.count * lgcd(c.degree, dir.order / c.count);
}

size_t find_direction(const ComponentData& c, const MacLaneVal& member) {
    for (size_t k = 0; k < c.directions.size(); ++k)
        for (const auto& m : c.directions[k].members)
            if (equal(m, member)) return k;
    fail(ErrorKind::StructureViolation, member.str() + " is not a neighbor of " + c.v.str());
}

}  // namespace

namespace {

// Direction at c.v holding u, or none for a class carrying no factor and no member.
std::optional<size_t> locate(const Cover& cover, const ComponentData& c, const MacLaneVal& u) {
    Frame fr = frame_of(c.v);
    if (!leq(fr.v, u)) return 0;
    if (valuate(u, fr.phi) > ExtRat(fr.lam)) return 1;
    for (size_t k = 2; k < c.directions.size(); ++k) {
        std::vector<MacLaneVal> reps = c.directions[k].members;
        for (size_t i : c.directions[k].factors) reps.push_back(cover.pseudo[i]);
        for (const auto& r : reps)
            if (lt(fr.v, inf(u, r))) return k;
    }
    return std::nullopt;
}

size_t find_root(std::vector<size_t>& parent, size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
}

// The base is the regular base ref with members removed. Points above the image of the removed
// components are the connected components of their lifts in ref.
FiberGraph assemble(const Cover& cover, const ValuationForest& base0, const FiberGraph* ref) {
    const CoverSpec& spec = cover.spec;
    const long d = spec.d;
    ValuationForest base = base0.valuations_only();
    std::vector<MacLaneVal> vals = base.sorted();
    FiberGraph g;
    std::vector<size_t> offset;
    for (const auto& v : vals) {
        g.components.push_back(component_data(cover, base, v));
        const ComponentData& c = g.components.back();
        offset.push_back(g.vertices.size());
        for (long j = 0; j < c.count; ++j) {
            FiberVertex fv;
            fv.v = c.v;
            fv.lift = j;
            fv.mult = c.mult;
            fv.degree = c.degree;
            fv.genus = c.genus;
            for (const auto& dir : c.directions) {
                long pts = lgcd(c.degree, dir.order / c.count);
                if (pts < c.degree) fv.ramification.emplace_back(pts, c.degree / pts);
            }
            g.vertices.push_back(fv);
        }
    }
    auto index_of = [&](const MacLaneVal& v) -> std::optional<size_t> {
        for (size_t k = 0; k < vals.size(); ++k)
            if (equal(vals[k], v)) return k;
        return std::nullopt;
    };
    auto must_index = [&](const MacLaneVal& v) {
        auto k = index_of(v);
        if (!k) fail(ErrorKind::StructureViolation, v.str() + " is not in the base");
        return *k;
    };
    auto connect = [&](size_t ka, size_t kb, long count, const std::string& kind) {
        long na = g.components[ka].count, nb = g.components[kb].count;
        for (long j = 0; j < count; ++j)
            g.edges.push_back({offset[ka] + static_cast<size_t>(j % na), offset[kb] + static_cast<size_t>(j % nb),
                               kind, count});
    };
    // Points above y on a single component: P points, I = count * g_y branches.
    auto single = [&](size_t k, const Direction& dir, long fiber) {
        const ComponentData& c = g.components[k];
        long branches = points_on_lifts(c, dir);
        if (branches == fiber) return;
        if (branches != 2 * fiber)
            fail(ErrorKind::StructureViolation, "point on " + c.v.str() + " has " + std::to_string(fiber) +
                                                    " points above it but " + std::to_string(branches) + " branches");
        for (long i = 0; i < fiber; ++i)
            g.edges.push_back({offset[k] + static_cast<size_t>(i % c.count),
                               offset[k] + static_cast<size_t>((i + fiber) % c.count), "node", fiber});
    };

    std::vector<std::vector<bool>> handled(vals.size());
    for (size_t k = 0; k < vals.size(); ++k) handled[k].assign(g.components[k].directions.size(), false);

    for (auto [a, b] : base.hasse_edges()) {
        size_t ka = must_index(base.members()[a]), kb = must_index(base.members()[b]);
        CrossingData cd = crossing_data(cover, crossing_point(vals[ka], vals[kb]));
        long fiber = lgcd(lgcd(d, cd.e), cd.s);
        size_t da = find_direction(g.components[ka], vals[kb]);
        size_t db = find_direction(g.components[kb], vals[ka]);
        long ia = points_on_lifts(g.components[ka], g.components[ka].directions[da]);
        long ib = points_on_lifts(g.components[kb], g.components[kb].directions[db]);
        if (ia != fiber || ib != fiber)
            fail(ErrorKind::StructureViolation, "crossing of " + vals[ka].str() + " and " + vals[kb].str() +
                                                    " has inconsistent fiber sizes");
        handled[ka][da] = handled[kb][db] = true;
        connect(ka, kb, fiber, "crossing");
    }

    if (ref) {
        // ref vertex -> base vertex, or npos for lifts of removed valuations
        const size_t none = static_cast<size_t>(-1);
        std::vector<size_t> to_base(ref->vertices.size(), none);
        for (size_t r = 0; r < ref->vertices.size(); ++r)
            if (auto k = index_of(ref->vertices[r].v)) to_base[r] = offset[*k] + static_cast<size_t>(ref->vertices[r].lift);
        std::vector<size_t> parent(ref->vertices.size());
        std::iota(parent.begin(), parent.end(), size_t{0});
        for (const auto& e : ref->edges)
            if (to_base[e.a] == none && to_base[e.b] == none) parent[find_root(parent, e.a)] = find_root(parent, e.b);
        std::map<size_t, std::vector<size_t>> branches;  // contracted point -> base vertices through it
        std::map<size_t, bool> at_infinity;
        for (size_t r = 0; r < ref->vertices.size(); ++r)
            if (to_base[r] == none && ref->vertices[r].v.is_gauss()) at_infinity[find_root(parent, r)] = true;
        for (const auto& e : ref->edges) {
            bool ra = to_base[e.a] == none, rb = to_base[e.b] == none;
            if (ra == rb) continue;
            size_t removed = ra ? e.a : e.b, kept = ra ? e.b : e.a;
            branches[find_root(parent, removed)].push_back(to_base[kept]);
            size_t k = must_index(ref->vertices[kept].v);
            if (auto q = locate(cover, g.components[k], ref->vertices[removed].v)) handled[k][*q] = true;
        }
        for (auto& [root, through] : branches) {
            if (through.size() == 1) continue;
            if (through.size() > 2)
                fail(ErrorKind::StructureViolation, "contracted point meets " + std::to_string(through.size()) +
                                                        " branches");
            size_t a = std::min(through[0], through[1]), b = std::max(through[0], through[1]);
            std::string kind = equal(g.vertices[a].v, g.vertices[b].v) ? "node"
                               : at_infinity.count(root)               ? "infinity"
                                                                       : "crossing";
            g.edges.push_back({a, b, kind, 1});
        }
    }

    std::vector<size_t> minimal;
    for (const auto& m : minimal_members(base)) minimal.push_back(must_index(m));
    if (minimal.size() > 2) fail(ErrorKind::StructureViolation, "base has more than two minimal valuations");
    if (minimal.size() == 2 && !handled[minimal[0]][0]) {
        size_t k1 = minimal[0], k2 = minimal[1];
        InftyCrossingData icd = infty_crossing_data(cover, vals[k1], vals[k2]);
        long fiber = lgcd(lgcd(d, icd.delta_prime), spec.a);
        long i1 = points_on_lifts(g.components[k1], g.components[k1].directions[0]);
        long i2 = points_on_lifts(g.components[k2], g.components[k2].directions[0]);
        if (i1 != fiber || i2 != fiber)
            fail(ErrorKind::StructureViolation, "infinity crossing has inconsistent fiber sizes");
        handled[k1][0] = handled[k2][0] = true;
        connect(k1, k2, fiber, "infinity");
    } else if (minimal.size() == 1 && !handled[minimal[0]][0]) {
        size_t k = minimal.front();
        long fiber = lgcd(d, spec.a);
        for (size_t i = 0; i < spec.factors.size(); ++i)
            if (!cover.above(vals[k], i)) fiber = lgcd(fiber, spec.factors[i].a);
        handled[k][0] = true;
        single(k, g.components[k].directions[0], fiber);
    }

    for (size_t k = 0; k < vals.size(); ++k) {
        const ComponentData& c = g.components[k];
        for (size_t q = 0; q < c.directions.size(); ++q) {
            const Direction& dir = c.directions[q];
            if (handled[k][q]) continue;
            if (!dir.members.empty() || dir.kind == DirKind::Down)
                fail(ErrorKind::StructureViolation, "unmatched direction at " + c.v.str());
            Frame fr = frame_of(c.v);
            long fiber;
            if (dir.kind == DirKind::Zero && fr.e_rel > 1) {
                CrossingData cd = crossing_numbers(cover, CrossingPoint{fr.prefix, fr.phi, fr.lam, fr.lam});
                fiber = lgcd(lgcd(d, cd.e), cd.s);
            } else {
                fiber = lgcd(d, c.big_g);
                for (size_t i : dir.factors) fiber = lgcd(fiber, spec.factors[i].a);
            }
            single(k, dir, fiber);
        }
    }
    self_intersections(g);
    return g;
}

}  // namespace

FiberGraph dual_graph(const Cover& cover, const ValuationForest& base) { return assemble(cover, base, nullptr); }

FiberGraph dual_graph(const Cover& cover, const ValuationForest& base, const ValuationForest& reference) {
    FiberGraph ref = assemble(cover, reference, nullptr);
    ValuationForest b = base.valuations_only();
    for (const auto& v : b.members())
        if (!std::any_of(reference.members().begin(), reference.members().end(),
                         [&](const MacLaneVal& r) { return equal(r, v); }))
            fail(ErrorKind::InvalidInput, v.str() + " is not in the reference base");
    if (b.size() == ref.components.size()) return ref;
    return assemble(cover, b, &ref);
}

void self_intersections(FiberGraph& g) {
    if (g.vertices.size() == 1) {
        g.vertices.front().self_intersection.reset();
        return;
    }
    std::vector<long> sum(g.vertices.size(), 0);
    for (const auto& e : g.edges) {
        if (e.a == e.b) continue;
        sum[e.a] += g.vertices[e.b].mult;
        sum[e.b] += g.vertices[e.a].mult;
    }
    for (size_t i = 0; i < g.vertices.size(); ++i) {
        FiberVertex& v = g.vertices[i];
        if (sum[i] % v.mult != 0 || sum[i] == 0)
            fail(ErrorKind::StructureViolation,
                 "self-intersection of lift " + std::to_string(v.lift) + " above " + v.v.str() + " is not a negative integer");
        v.self_intersection = -sum[i] / v.mult;
    }
}

std::vector<MacLaneVal> contractible_components(const FiberGraph& g) {
    std::vector<MacLaneVal> out;
    size_t i = 0;
    while (i < g.vertices.size()) {
        size_t j = i;
        while (j < g.vertices.size() && equal(g.vertices[j].v, g.vertices[i].v)) ++j;
        bool all = true;
        for (size_t k = i; k < j && all; ++k) {
            const FiberVertex& fv = g.vertices[k];
            if (fv.genus != 0 || fv.self_intersection != std::optional<long>(-1)) all = false;
            std::map<size_t, long> met;
            for (const auto& e : g.edges) {
                if (e.a != k && e.b != k) continue;
                size_t other = e.a == k ? e.b : e.a;
                if (other >= i && other < j) all = false;  // loops and edges among the lifts
                else ++met[other];
            }
            if (!all) break;
            bool one = met.size() == 1 && met.begin()->second == 1 && g.vertices[met.begin()->first].mult == fv.mult;
            bool two = met.size() == 2;
            if (two) {
                long msum = 0;
                for (auto [o, cnt] : met) {
                    if (cnt != 1) two = false;
                    msum += g.vertices[o].mult;
                }
                two = two && msum == fv.mult;
            }
            if (!one && !two) all = false;
        }
        if (all) out.push_back(g.vertices[i].v);
        i = j;
    }
    return out;
}

}  // namespace regmodels
