#include "regmodels/batch.hpp"

#include "regmodels/errors.hpp"
#include "regmodels/fiber.hpp"

namespace regmodels {

namespace {

long pick(std::mt19937_64& rng, long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

long ipow(long b, long e) {
    long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

QPoly random_factor(std::mt19937_64& rng, long p, long max_deg) {
    QPoly t = QPoly::x();
    long c = pick(rng, 0, ipow(p, 3) - 1);
    long k = pick(rng, 1, std::min<long>(3, max_deg));
    if (k == 1) return t - QPoly(mpq_class(c));
    long j = pick(rng, 1, 3);
    long u = pick(rng, 1, p - 1);
    QPoly shifted = t - QPoly(mpq_class(c % p));
    return shifted.pow(static_cast<int>(k)) - QPoly(mpq_class(ipow(p, j) * u));
}

}  // namespace

CoverSpec random_spec(std::mt19937_64& rng, const RandomSpecOptions& opt) {
    for (int attempt = 0; attempt < 10000; ++attempt) {
        CoverSpec spec;
        spec.p = opt.primes[static_cast<size_t>(pick(rng, 0, static_cast<long>(opt.primes.size()) - 1))];
        spec.d = pick(rng, 2, opt.max_d);
        if (spec.d % spec.p == 0 || (opt.odd_d && spec.d % 2 == 0)) continue;
        spec.a = opt.monic ? 0 : pick(rng, 0, spec.d - 1);
        long nf = pick(rng, 1, 4);
        long deg = 0;
        for (long i = 0; i < nf && deg < opt.max_degree; ++i) {
            QPoly f = random_factor(rng, spec.p, opt.max_degree - deg);
            bool dup = false;
            for (const auto& fa : spec.factors) dup = dup || fa.f == f;
            if (dup) continue;
            deg += f.degree();
            spec.factors.push_back({f, pick(rng, 1, spec.d - 1)});
        }
        if (spec.factors.empty()) continue;
        long rest = 0;
        for (size_t i = 0; i + 1 < spec.factors.size(); ++i) rest += spec.factors[i].a * spec.factors[i].f.degree();
        Factor& last = spec.factors.back();
        bool fixed = false;
        for (long a = 1; a < spec.d && !fixed; ++a)
            if ((rest + a * last.f.degree()) % spec.d == 0) {
                last.a = a;
                fixed = true;
            }
        if (!fixed || deg < 3) continue;  // at least three branch points
        try {
            validate_normalize(spec);
            return spec;
        } catch (const Error&) {
        }
    }
    fail(ErrorKind::NonTermination, "no valid random spec found");
}

std::vector<CoverSpec> random_specs(std::uint64_t seed, size_t count, const RandomSpecOptions& opt) {
    std::mt19937_64 rng(seed);
    std::vector<CoverSpec> out;
    for (size_t i = 0; i < count; ++i) out.push_back(random_spec(rng, opt));
    return out;
}

BatchOutcome evaluate_spec(const CoverSpec& spec) {
    BatchOutcome out;
    try {
        Pipeline pl = run_pipeline(spec);
        for (const auto& v : pl.reg.vreg.sorted()) out.vreg.push_back(v.str());
        for (const auto& v : pl.min.vmin.sorted()) out.vmin.push_back(v.str());
        out.min_case = min_case_name(pl.min.which);
        out.regularity_failures = regularity_failures(pl.cover, pl.reg.vreg);
        out.fixed_point = resolution_is_fixed(pl.cover, pl.reg.vreg);
        FiberGraph g = dual_graph(pl.cover, pl.reg.vreg);
        dual_graph(pl.cover, pl.min.vmin, pl.reg.vreg);
        out.fiber_vertices = g.vertices.size();
        out.fiber_edges = g.edges.size();
        out.ok = true;
    } catch (const Error& e) {
        out.error = e.what();
    }
    return out;
}

std::vector<BatchOutcome> evaluate_serial(const std::vector<CoverSpec>& specs) {
    std::vector<BatchOutcome> out;
    out.reserve(specs.size());
    for (const auto& s : specs) out.push_back(evaluate_spec(s));
    return out;
}

std::vector<BatchOutcome> evaluate_parallel(const std::vector<CoverSpec>& specs) {
    std::vector<BatchOutcome> out(specs.size());
    const long n = static_cast<long>(specs.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) out[static_cast<size_t>(i)] = evaluate_spec(specs[static_cast<size_t>(i)]);
    return out;
}

}  // namespace regmodels
