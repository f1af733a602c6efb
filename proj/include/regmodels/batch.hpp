#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "regmodels/cover.hpp"

namespace regmodels {

struct RandomSpecOptions {
    std::vector<long> primes{3, 5, 7};
    long max_d = 8;
    long max_degree = 8;  // sum of deg f_i
    bool monic = false;   // force a = 0
    bool odd_d = false;
};

// A spec accepted by validate_normalize.
CoverSpec random_spec(std::mt19937_64& rng, const RandomSpecOptions& opt);
std::vector<CoverSpec> random_specs(std::uint64_t seed, size_t count, const RandomSpecOptions& opt);

struct BatchOutcome {
    bool ok = false;
    std::string error;
    std::vector<std::string> vreg;
    std::vector<std::string> vmin;
    std::string min_case;
    size_t fiber_vertices = 0;
    size_t fiber_edges = 0;
    std::vector<std::string> regularity_failures;
    bool fixed_point = false;

    bool operator==(const BatchOutcome&) const = default;
};

// Full pipeline plus fiber assembly and the regularity re-check for one spec.
BatchOutcome evaluate_spec(const CoverSpec& spec);

std::vector<BatchOutcome> evaluate_serial(const std::vector<CoverSpec>& specs);
// Same results as evaluate_serial; specs are independent and run on OpenMP threads.
std::vector<BatchOutcome> evaluate_parallel(const std::vector<CoverSpec>& specs);

}  // namespace regmodels
