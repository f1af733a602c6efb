#pragma once

#include <string>
#include <utility>
#include <vector>

#include "regmodels/arith.hpp"

namespace regmodels {

struct NPath {
    long n = 1;
    std::vector<mpq_class> entries;  // strictly decreasing

    std::string str() const;  // "a0 > a1 > ... > ak"
};

// Simplest rational strictly between lo and hi (smallest denominator; ties impossible
// except among integers, where the least integer above lo is returned).
mpq_class simplest_between(const mpq_class& lo, const mpq_class& hi);

// Whether a > b are consecutive entries of an N-path.
bool is_n_step(long n, const mpq_class& a, const mpq_class& b);

NPath shortest_n_path(long n, const mpq_class& hi, const mpq_class& lo);
bool is_aligned(long n, const mpq_class& lam, const mpq_class& lam_prime);

struct LatticeBasis {
    mpq_class diag;     // the diagonal generator is (diag, diag)
    mpq_class lam;      // (lam, lam_prime) minimizes lam_prime - lam > 0
    mpq_class lam_prime;
};

// Basis of the subgroup of Q^2 generated by the given pairs. The off-diagonal element
// is reduced so that 0 <= lam < diag.
LatticeBasis lattice_basis(const std::vector<std::pair<mpq_class, mpq_class>>& gens);

struct CrossingLattice {
    long n_tilde;
    long r;
    mpq_class lam_t;
    mpq_class lam_t_prime;
};

// Closed form for the lattice generated by (1/N, 1/N), (lam, lam') and
// ((e/d) lam + s/(N d), (e/d) lam' + s/(N d)).
CrossingLattice crossing_lattice(long n, long d, long e, long s, const mpq_class& lam, const mpq_class& lam_prime);
// Least r >= 0 with r * (e / gcd(d, e)) = 1 mod d / gcd(d, e).
long crossing_r(long d, long e);

}  // namespace regmodels
