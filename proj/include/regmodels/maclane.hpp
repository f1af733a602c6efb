#pragma once

#include <string>
#include <vector>

#include "regmodels/arith.hpp"

namespace regmodels {

struct Step {
    QPoly phi;
    ExtRat lambda;
};

// Inductive valuation [v0, v1(phi_1) = lambda_1, ..., vn(phi_n) = lambda_n] over Q with v(p) = 1.
// An empty chain is the Gauss valuation; lambda_n = inf makes it a pseudovaluation.
// The chain is stored as given; normalize() produces the minimal presentation.
class MacLaneVal {
public:
    MacLaneVal() : p_(0) {}
    explicit MacLaneVal(long p) : p_(p) {}
    MacLaneVal(long p, std::vector<Step> steps) : p_(p), steps_(std::move(steps)) {}

    long prime() const { return p_; }
    const std::vector<Step>& steps() const { return steps_; }
    int length() const { return static_cast<int>(steps_.size()); }
    bool is_gauss() const { return steps_.empty(); }
    bool is_pseudo() const { return !steps_.empty() && steps_.back().lambda.is_inf(); }
    const Step& last() const { return steps_.back(); }

    MacLaneVal prefix(int k) const;
    // Appends a step without checks; callers normalize afterwards.
    MacLaneVal extended(const QPoly& phi, const ExtRat& lambda) const;

    // "[v0, v1(t) = 2/3, v2(t^3 - 9) = 5/2]"
    std::string str() const;

private:
    long p_;
    std::vector<Step> steps_;
};

ExtRat valuate(const MacLaneVal& v, const QPoly& g);
ExtRat valuate(const MacLaneVal& v, const QPoly& num, const QPoly& den);

long ram_index(const MacLaneVal& v);
MacLaneVal normalize(const MacLaneVal& v);

bool leq(const MacLaneVal& v, const MacLaneVal& w);
bool equal(const MacLaneVal& v, const MacLaneVal& w);
inline bool lt(const MacLaneVal& v, const MacLaneVal& w) { return leq(v, w) && !leq(w, v); }

MacLaneVal inf(const MacLaneVal& v, const MacLaneVal& w);
MacLaneVal augment(const MacLaneVal& v, const QPoly& phi, const ExtRat& lambda);
std::vector<MacLaneVal> predecessors(const MacLaneVal& v);

bool is_proper_key(const MacLaneVal& v, const QPoly& g);
// The unique valuation over which the monic, integral g is a proper key polynomial.
MacLaneVal maclane_chain(const QPoly& g, long p);
// [v_g, g = inf].
MacLaneVal pseudo_of(const QPoly& g, long p);

// Monomial p^x * prod phi_j^{y_j} with 0 <= y_j < e_j/e_{j-1} and value gamma under v.
struct Monomial {
    mpz_class x;
    std::vector<long> y;
};
Monomial monomial(const MacLaneVal& v, const mpq_class& gamma);
QPoly monomial_poly(const MacLaneVal& v, const Monomial& m);  // requires x >= 0

// Characteristic polynomial of multiplication by u on Q[t]/(g).
QPoly charpoly_mod(const QPoly& u, const QPoly& g);

}  // namespace regmodels
