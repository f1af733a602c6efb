#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "regmodels/maclane.hpp"

namespace regmodels {

// Finite set of Mac Lane (pseudo)valuations, distinct as valuations, kept in insertion order.
class ValuationForest {
public:
    ValuationForest() : p_(0) {}
    explicit ValuationForest(long p) : p_(p) {}
    ValuationForest(long p, const std::vector<MacLaneVal>& members);

    long prime() const { return p_; }
    const std::vector<MacLaneVal>& members() const { return members_; }
    size_t size() const { return members_.size(); }

    // Adds v (normalized) unless an equal valuation is present; returns whether it was added.
    bool insert(const MacLaneVal& v);
    bool contains(const MacLaneVal& v) const;
    std::optional<size_t> find(const MacLaneVal& v) const;

    ValuationForest valuations_only() const;
    // Members sorted by canonical string.
    std::vector<MacLaneVal> sorted() const;
    // Pairs (lower, upper) of indices into members() with no member strictly between.
    std::vector<std::pair<size_t, size_t>> hasse_edges() const;

private:
    void append(const MacLaneVal& v);  // v normalized and new

    long p_;
    std::vector<MacLaneVal> members_;
    std::vector<std::vector<bool>> le_;  // le_[i][j]: members_[i] <= members_[j]
};

ValuationForest inf_closure(const ValuationForest& v);
std::vector<MacLaneVal> neighbors(const ValuationForest& forest, const MacLaneVal& v);
std::vector<MacLaneVal> upper_neighbors(const ValuationForest& forest, const MacLaneVal& v);
std::vector<MacLaneVal> lower_neighbors(const ValuationForest& forest, const MacLaneVal& v);
std::vector<MacLaneVal> minimal_members(const ValuationForest& forest);

// Intersection of the components of lower = [prefix, phi = lam] and upper = [prefix, phi = lam'].
struct CrossingPoint {
    MacLaneVal prefix;
    QPoly phi;
    mpq_class lam;
    mpq_class lam_prime;

    MacLaneVal lower() const;  // normalized
    MacLaneVal upper() const;  // normalized
};

// Shared-prefix form of an adjacent pair lower < upper; StructureViolation if impossible.
CrossingPoint crossing_point(const MacLaneVal& lower, const MacLaneVal& upper);
// One crossing per adjacent pair of valuations.
std::vector<CrossingPoint> standard_crossings(const ValuationForest& v);

struct CuspPoint {
    MacLaneVal v;  // minimal presentation [.., phi_n = lambda_n]
};

std::vector<CuspPoint> finite_cusps(const ValuationForest& v);

// Maximal valuation member strictly below g^inf; nullopt when none.
std::optional<MacLaneVal> specialization(const ValuationForest& v, const QPoly& g);

mpq_class intersection_number(const CrossingPoint& c);

}  // namespace regmodels
