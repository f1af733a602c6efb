#pragma once

#include <optional>
#include <string>
#include <vector>

#include "regmodels/model.hpp"
#include "regmodels/npath.hpp"

namespace regmodels {

struct Factor {
    QPoly f;  // monic, p-integral, irreducible
    long a;   // exponent, 1 <= a < d after normalization
};

// z^d = p^a * prod f_i^{a_i}
struct CoverSpec {
    long p = 0;
    long d = 0;
    long a = 0;
    std::vector<Factor> factors;
};

// t_old = c + p^b * t_new
struct Substitution {
    mpq_class c = 0;
    long b = 0;
};

// A validated spec with the Mac Lane data of each factor.
struct Cover {
    CoverSpec spec;
    std::vector<MacLaneVal> base;    // v_{f_i}
    std::vector<MacLaneVal> pseudo;  // v_{f_i}^inf
    std::optional<Substitution> substitution;
    std::vector<std::string> notes;  // adjustments made while normalizing

    long degree() const;          // sum a_i deg f_i
    mpq_class value(const MacLaneVal& v) const;  // v(f), f including p^a; v a valuation
    mpq_class value_without(const MacLaneVal& v, size_t i) const;  // v(f / f_i^{a_i})
    bool above(const MacLaneVal& v, size_t i) const;  // v < v_{f_i}^inf
    ValuationForest pseudos() const;
};

Cover validate_normalize(const CoverSpec& spec);

struct CrossingData {
    CrossingPoint point;
    long n = 1;
    long e = 0;
    long s = 0;
    long n_tilde = 1;
    long r = 0;
    mpq_class lam_t;
    mpq_class lam_t_prime;
};

// Factors with prefix <= f_i^inf and rv(phi, f_i) > lam form g; the rest (and p^a) form h.
CrossingData crossing_data(const Cover& cover, const CrossingPoint& c);
// As crossing_data, also allowing lam == lam' (the data of a cusp).
CrossingData crossing_numbers(const Cover& cover, const CrossingPoint& c);
std::vector<MacLaneVal> link(const Cover& cover, const CrossingPoint& c);
std::vector<MacLaneVal> tail(const Cover& cover, const CuspPoint& cusp);
std::vector<MacLaneVal> branch_tail(const Cover& cover, const ValuationForest& v, size_t i);

struct Resolution {
    ValuationForest v1, v2, v3, v4, v5;
};

// Links, then tails, then branch tails, starting from the given forest (pseudos included).
Resolution resolve(const Cover& cover, const ValuationForest& start);

struct VReg {
    Resolution stages;
    ValuationForest vreg;  // valuations only
};

VReg build_vreg(const Cover& cover);

// Every crossing aligned, every cusp and branch specialization satisfying its congruences.
std::vector<std::string> regularity_failures(const Cover& cover, const ValuationForest& vreg);
// Whether resolving vreg plus the factor pseudovaluations adds nothing.
bool resolution_is_fixed(const Cover& cover, const ValuationForest& vreg);

struct Removal {
    MacLaneVal v;
    size_t factor;
    std::vector<std::string> clauses;
};

struct RemovabilityResult {
    ValuationForest kept;
    std::vector<Removal> removed;
};

RemovabilityResult removability_pass(const Cover& cover, const ValuationForest& vreg);

struct InftyData {
    MacLaneVal v;
    std::vector<size_t> outside;  // factors with v not below f_i^inf
    long e = 0;
    long beta = 0;
    bool cond_i = false, cond_ii = false, cond_iii = false, cond_iv = false;
    bool in_s() const { return cond_i && (cond_ii || cond_iii || cond_iv); }
};

InftyData infty_data(const Cover& cover, const MacLaneVal& v);
std::vector<MacLaneVal> compute_s(const Cover& cover, const ValuationForest& vprime);

struct InftyCrossingData {
    long delta = 0;
    long delta_prime = 0;
    long r = 0;
    long n_tilde = 1;
    mpq_class mu, mu_prime;
    mpq_class lo, hi;  // the two path endpoints
    bool aligned = false;
};

// v = [v0, t - c = mu], v' = [v0, t - c' = mu'] with v_p(c - c') = 0.
InftyCrossingData infty_crossing_data(const Cover& cover, const MacLaneVal& v, const MacLaneVal& vp);
bool infty_crossing_check(const Cover& cover, const MacLaneVal& v, const MacLaneVal& vp);

enum class MinCase { I, II, III };
const char* min_case_name(MinCase c);

struct MinResult {
    MinCase which = MinCase::I;
    std::vector<MacLaneVal> s;
    long v0_neighbors = 0;
    std::optional<std::pair<MacLaneVal, MacLaneVal>> pair;  // case (ii)
    std::optional<MacLaneVal> s_max;                          // case (iii)
    bool placeholder_removed = false;                        // case (iii)
    ValuationForest vmin;
};

MinResult minimize(const Cover& cover, const ValuationForest& vprime);

struct Pipeline {
    Cover cover;
    VReg reg;
    RemovabilityResult removal;
    MinResult min;
};

Pipeline run_pipeline(const CoverSpec& spec);

}  // namespace regmodels
