#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mwc/geometry.hpp"
#include "mwc/schemes.hpp"

namespace mwc {

struct DensityEstimate {
    double mean = 0.0;    // cut frequency / epsilon
    double stderr_ = 0.0; // sqrt(p(1-p)/n) / epsilon
    std::uint64_t n = 0;
    std::uint64_t cuts = 0;
    double epsilon = 0.0;
    std::string scheme;
    double u1 = 0.0;
    double u2 = 0.0;
    int k = 0;
    std::vector<std::string> warnings;
};

// Both endpoints of the edge are labeled by the same partition in every trial.
// The location is worst_case_location(u1, u2, k) and the edge moves epsilon
// from terminal 1 to terminal 0; u2 < epsilon is shifted to epsilon.
DensityEstimate estimate_density(const SchemeMixture& mix, double u1, double u2, int k, double epsilon, std::uint64_t n,
                                 std::uint64_t seed, int threads = 0);
DensityEstimate estimate_density(const Scheme& scheme, double u1, double u2, int k, double epsilon, std::uint64_t n,
                                 std::uint64_t seed, int threads = 0);
DensityEstimate estimate_density(const SchemeMixture& mix, const EdgeSpec& edge, std::uint64_t n, std::uint64_t seed,
                                 int threads = 0);

// 2 * d(eps/2) - d(eps) from two estimates at eps and eps/2.
struct Extrapolated {
    double value = 0.0;
    double stderr_ = 0.0;
};
Extrapolated richardson(const DensityEstimate& coarse, const DensityEstimate& fine);

}  // namespace mwc
