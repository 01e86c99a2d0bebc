#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "mwc/schemes.hpp"

namespace mwc {

// Joint law of (X, Y) on {0..m-1}^2, row-major.
struct PairDistribution {
    int m = 0;
    std::vector<double> p;

    double operator()(int a, int b) const { return p[static_cast<std::size_t>(a * m + b)]; }
    bool symmetric(double tol = 1e-12) const;
    void validate() const;  // shape, nonnegative, total 1 within 1e-12
};

struct ProductComponent {
    double weight = 0.0;
    std::vector<double> p;
};

struct ProductMixture {
    std::vector<ProductComponent> components;

    int domain_size() const { return components.empty() ? 0 : static_cast<int>(components.front().p.size()); }
    void validate() const;
    // sum_s weight_s p_s p_s^T
    PairDistribution pair_matrix() const;
};

// n_samples rows of k values, row-major.
std::vector<int> realize(const ProductMixture& mix, int k, std::size_t n_samples, std::uint64_t seed, int threads = 0);
PairDistribution empirical_pair(const std::vector<int>& samples, int k, int i, int j, int m);

struct PsdResult {
    bool is_psd = false;
    double min_eigenvalue = 0.0;
};

PsdResult psd_check(const PairDistribution& rho);

enum class DecomposeStatus { Found, NotFound, NotPsd };

struct DecomposeResult {
    DecomposeStatus status = DecomposeStatus::NotFound;
    std::optional<ProductMixture> mixture;
    double residual = 0.0;  // infinity norm of the reconstruction error
    std::size_t columns = 0;
};

// Heuristic: LP over the columns p p^T with p on the simplex grid of the given resolution.
DecomposeResult try_decompose(const PairDistribution& rho, int grid_resolution);

// Pair law of two terminals' thresholds, discretized into equal bins.
PairDistribution threshold_pair_distribution(const Scheme& scheme, int bins);

// "m" then m rows of m reals; '#' comments.
PairDistribution read_pair_distribution(std::istream& in);
void write_pair_distribution(std::ostream& out, const PairDistribution& rho);
// "r m" then r rows "weight p_0 .. p_{m-1}".
ProductMixture read_product_mixture(std::istream& in);
void write_product_mixture(std::ostream& out, const ProductMixture& mix);

}  // namespace mwc
