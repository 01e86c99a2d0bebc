#include "mwc/montecarlo.hpp"

#include "mwc/error.hpp"
#include "mwc/format.hpp"
#include "mwc/parallel.hpp"

#include <cmath>

namespace mwc {

namespace {

void check_budget(double epsilon, std::uint64_t n) {
    if (!(epsilon > 0.0 && epsilon <= 1e-2)) fail("domain_error", "epsilon must lie in (0, 1e-2]");
    if (n < 10000) fail("domain_error", "need at least 10^4 trials");
}

std::string describe(const SchemeMixture& mix) {
    if (!mix.name.empty()) return mix.name;
    std::string s;
    for (const auto& e : mix.entries) s += (s.empty() ? "" : "+") + to_string(e.scheme.kind);
    return s;
}

SchemeMixture wrap(const Scheme& scheme) { return {to_string(scheme.kind), {{1.0, scheme}}}; }

}  // namespace

DensityEstimate estimate_density(const SchemeMixture& mix, const EdgeSpec& edge, std::uint64_t n, std::uint64_t seed,
                                 int threads) {
    check_budget(edge.epsilon, n);
    mix.validate();
    const int k = edge.location.k();
    const SimplexPoint a = edge.location;
    const SimplexPoint b = edge.other_endpoint();
    constexpr std::uint64_t chunk = 1 << 14;
    const std::uint64_t chunks = (n + chunk - 1) / chunk;
    std::vector<std::uint64_t> counts(chunks, 0);
    const RandomSource base(seed);
    parallel_for(chunks, threads, [&](std::size_t c) {
        std::uint64_t cuts = 0;
        const std::uint64_t end = std::min<std::uint64_t>(n, (c + 1) * chunk);
        for (std::uint64_t t = c * chunk; t < end; ++t) {
            const Partition part = draw_partition(mix, k, base.split(t));
            if (part.label(a.coords()) != part.label(b.coords())) ++cuts;
        }
        counts[c] = cuts;
    });
    DensityEstimate r;
    for (auto c : counts) r.cuts += c;
    r.n = n;
    r.epsilon = edge.epsilon;
    r.k = k;
    r.scheme = describe(mix);
    r.u1 = a[static_cast<std::size_t>(edge.i)];
    r.u2 = a[static_cast<std::size_t>(edge.j)];
    const double p = static_cast<double>(r.cuts) / static_cast<double>(n);
    r.mean = p / edge.epsilon;
    r.stderr_ = std::sqrt(p * (1.0 - p) / static_cast<double>(n)) / edge.epsilon;
    return r;
}

DensityEstimate estimate_density(const SchemeMixture& mix, double u1, double u2, int k, double epsilon, std::uint64_t n,
                                 std::uint64_t seed, int threads) {
    check_budget(epsilon, n);
    std::vector<std::string> warnings;
    if (u2 < epsilon) {
        warnings.push_back("u2 = " + format_double(u2) + " shifted to epsilon = " + format_double(epsilon));
        u2 = epsilon;
    }
    if (u1 + epsilon > 1.0 + kSimplexTol) fail("domain_error", "edge leaves the simplex");
    auto edge = EdgeSpec::make(worst_case_location(u1, u2, k), 0, 1, epsilon);
    DensityEstimate r = estimate_density(mix, edge, n, seed, threads);
    r.u1 = u1;
    r.u2 = u2;
    r.warnings = std::move(warnings);
    return r;
}

DensityEstimate estimate_density(const Scheme& scheme, double u1, double u2, int k, double epsilon, std::uint64_t n,
                                 std::uint64_t seed, int threads) {
    return estimate_density(wrap(scheme), u1, u2, k, epsilon, n, seed, threads);
}

Extrapolated richardson(const DensityEstimate& coarse, const DensityEstimate& fine) {
    if (!(std::abs(coarse.epsilon - 2.0 * fine.epsilon) <= 1e-15 * coarse.epsilon))
        fail("domain_error", "richardson needs epsilon and epsilon / 2");
    return {2.0 * fine.mean - coarse.mean, std::sqrt(4.0 * fine.stderr_ * fine.stderr_ + coarse.stderr_ * coarse.stderr_)};
}

}  // namespace mwc
