#include "regmodels/model.hpp"

#include <algorithm>

#include "regmodels/errors.hpp"

namespace regmodels {

ValuationForest::ValuationForest(long p, const std::vector<MacLaneVal>& members) : p_(p) {
    for (const auto& m : members) insert(m);
}

std::optional<size_t> ValuationForest::find(const MacLaneVal& v) const {
    for (size_t i = 0; i < members_.size(); ++i)
        if (members_[i].is_pseudo() == v.is_pseudo() && equal(members_[i], v)) return i;
    return std::nullopt;
}

bool ValuationForest::contains(const MacLaneVal& v) const { return find(v).has_value(); }

bool ValuationForest::insert(const MacLaneVal& v) {
    if (v.prime() != p_) fail(ErrorKind::InvalidInput, "valuation over a different prime");
    if (contains(v)) return false;
    append(normalize(v));
    return true;
}

void ValuationForest::append(const MacLaneVal& v) {
    size_t n = members_.size();
    for (size_t i = 0; i < n; ++i) le_[i].push_back(leq(members_[i], v));
    std::vector<bool> row(n + 1, true);
    for (size_t j = 0; j < n; ++j) row[j] = leq(v, members_[j]);
    le_.push_back(std::move(row));
    members_.push_back(v);
}

ValuationForest ValuationForest::valuations_only() const {
    ValuationForest out(p_);
    std::vector<size_t> keep;
    for (size_t i = 0; i < members_.size(); ++i)
        if (!members_[i].is_pseudo()) keep.push_back(i);
    for (size_t i : keep) {
        out.members_.push_back(members_[i]);
        std::vector<bool> row;
        for (size_t j : keep) row.push_back(le_[i][j]);
        out.le_.push_back(std::move(row));
    }
    return out;
}

std::vector<MacLaneVal> ValuationForest::sorted() const {
    std::vector<MacLaneVal> out = members_;
    std::sort(out.begin(), out.end(), [](const MacLaneVal& a, const MacLaneVal& b) { return a.str() < b.str(); });
    return out;
}

std::vector<std::pair<size_t, size_t>> ValuationForest::hasse_edges() const {
    const auto& le = le_;
    size_t n = members_.size();
    std::vector<std::pair<size_t, size_t>> edges;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (i == j || !le[i][j]) continue;
            bool direct = true;
            for (size_t k = 0; k < n && direct; ++k)
                if (k != i && k != j && le[i][k] && le[k][j]) direct = false;
            if (direct) edges.emplace_back(i, j);
        }
    return edges;
}

ValuationForest inf_closure(const ValuationForest& v) {
    ValuationForest out = v;
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<MacLaneVal> cur = out.members();
        for (size_t i = 0; i < cur.size(); ++i)
            for (size_t j = i + 1; j < cur.size(); ++j)
                if (out.insert(inf(cur[i], cur[j]))) grew = true;
    }
    return out;
}

std::vector<MacLaneVal> upper_neighbors(const ValuationForest& forest, const MacLaneVal& v) {
    auto idx = forest.find(v);
    if (!idx) fail(ErrorKind::InvalidInput, v.str() + " is not a member");
    std::vector<MacLaneVal> out;
    for (auto [a, b] : forest.hasse_edges())
        if (a == *idx) out.push_back(forest.members()[b]);
    return out;
}

std::vector<MacLaneVal> lower_neighbors(const ValuationForest& forest, const MacLaneVal& v) {
    auto idx = forest.find(v);
    if (!idx) fail(ErrorKind::InvalidInput, v.str() + " is not a member");
    std::vector<MacLaneVal> out;
    for (auto [a, b] : forest.hasse_edges())
        if (b == *idx) out.push_back(forest.members()[a]);
    return out;
}

std::vector<MacLaneVal> neighbors(const ValuationForest& forest, const MacLaneVal& v) {
    std::vector<MacLaneVal> out = lower_neighbors(forest, v);
    for (auto& w : upper_neighbors(forest, v)) out.push_back(w);
    std::sort(out.begin(), out.end(), [](const MacLaneVal& a, const MacLaneVal& b) { return a.str() < b.str(); });
    return out;
}

std::vector<MacLaneVal> minimal_members(const ValuationForest& forest) {
    std::vector<MacLaneVal> out;
    for (const auto& m : forest.members()) {
        bool minimal = true;
        for (const auto& w : forest.members())
            if (&w != &m && lt(w, m)) minimal = false;
        if (minimal) out.push_back(m);
    }
    return out;
}

MacLaneVal CrossingPoint::lower() const { return normalize(prefix.extended(phi, ExtRat(lam))); }
MacLaneVal CrossingPoint::upper() const { return normalize(prefix.extended(phi, ExtRat(lam_prime))); }

CrossingPoint crossing_point(const MacLaneVal& lower, const MacLaneVal& upper) {
    MacLaneVal up = normalize(upper);
    if (up.is_gauss() || up.is_pseudo())
        fail(ErrorKind::StructureViolation, "no shared-prefix form for " + lower.str() + " < " + upper.str());
    CrossingPoint c{up.prefix(up.length() - 1), up.last().phi, 0, up.last().lambda.value()};
    ExtRat lv = valuate(lower, c.phi);
    if (lv.is_inf() || !(lv < up.last().lambda) || lv < valuate(c.prefix, c.phi))
        fail(ErrorKind::StructureViolation, "no shared-prefix form for " + lower.str() + " < " + upper.str());
    c.lam = lv.value();
    if (!equal(c.lower(), lower))
        fail(ErrorKind::StructureViolation, "no shared-prefix form for " + lower.str() + " < " + upper.str());
    return c;
}

std::vector<CrossingPoint> standard_crossings(const ValuationForest& v) {
    ValuationForest vals = v.valuations_only();
    std::vector<CrossingPoint> out;
    for (auto [a, b] : vals.hasse_edges()) out.push_back(crossing_point(vals.members()[a], vals.members()[b]));
    return out;
}

std::vector<CuspPoint> finite_cusps(const ValuationForest& v) {
    std::vector<CuspPoint> out;
    for (const auto& m : v.members()) {
        if (m.is_pseudo() || m.is_gauss()) continue;
        long n = m.length();
        if (ram_index(m) <= ram_index(m.prefix(n - 1))) continue;
        bool cusp = true;
        for (const auto& w : v.members())
            if (leq(m, w) && valuate(w, m.last().phi) != m.last().lambda) cusp = false;
        if (cusp) out.push_back({m});
    }
    return out;
}

std::optional<MacLaneVal> specialization(const ValuationForest& v, const QPoly& g) {
    MacLaneVal top = pseudo_of(g, v.prime());
    std::optional<MacLaneVal> best;
    for (const auto& m : v.members()) {
        if (m.is_pseudo() || !leq(m, top)) continue;
        if (!best || leq(*best, m)) best = m;
    }
    return best;
}

mpq_class intersection_number(const CrossingPoint& c) {
    long n = ram_index(c.prefix);
    mpq_class out = mpq_class(n) / ((c.lam_prime - c.lam) * ram_index(c.lower()) * ram_index(c.upper()));
    out.canonicalize();
    return out;
}

}  // namespace regmodels
