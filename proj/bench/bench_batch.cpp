// Times the serial and OpenMP batch drivers on the same random specs and checks they agree.

#include <omp.h>

#include <chrono>
#include <cstdio>

#include <CLI11.hpp>

#include "regmodels/batch.hpp"

int main(int argc, char** argv) {
    using namespace regmodels;
    CLI::App app{"batch pipeline benchmark"};
    size_t count = 200;
    std::uint64_t seed = 2024;
    long max_d = 8;
    app.add_option("--specs", count, "number of random specs");
    app.add_option("--seed", seed, "generator seed");
    app.add_option("--max-d", max_d, "largest d");
    CLI11_PARSE(app, argc, argv);

    RandomSpecOptions opt;
    opt.max_d = max_d;
    auto specs = random_specs(seed, count, opt);

    using clock = std::chrono::steady_clock;
    auto t0 = clock::now();
    auto serial = evaluate_serial(specs);
    auto t1 = clock::now();
    auto parallel = evaluate_parallel(specs);
    auto t2 = clock::now();

    double ms_serial = std::chrono::duration<double, std::milli>(t1 - t0).count();
    double ms_parallel = std::chrono::duration<double, std::milli>(t2 - t1).count();
    size_t failures = 0;
    for (const auto& o : serial) failures += o.ok ? 0 : 1;
    bool same = serial == parallel;

    std::printf("specs      %zu (seed %llu, d <= %ld)\n", specs.size(), static_cast<unsigned long long>(seed), max_d);
    std::printf("threads    %d\n", omp_get_max_threads());
    std::printf("serial     %.1f ms (%.2f ms/spec)\n", ms_serial, ms_serial / static_cast<double>(specs.size()));
    std::printf("parallel   %.1f ms (speedup %.2fx)\n", ms_parallel, ms_parallel > 0 ? ms_serial / ms_parallel : 0.0);
    std::printf("failures   %zu\n", failures);
    std::printf("agreement  %s\n", same ? "identical" : "MISMATCH");
    return same && failures == 0 ? 0 : 1;
}
