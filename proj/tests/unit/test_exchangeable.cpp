#include "mwc/density.hpp"
#include "mwc/error.hpp"
#include "mwc/exchangeable.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

using namespace mwc;

namespace {

PairDistribution matrix(int m, std::vector<double> v) { return {m, std::move(v)}; }

ProductMixture random_mixture(int m, int r, std::uint64_t seed) {
    RandomSource rng(seed);
    ProductMixture mix;
    double w = 0.0;
    for (int s = 0; s < r; ++s) {
        ProductComponent c;
        c.weight = 0.1 + rng.uniform(Stream::Aux, static_cast<std::uint64_t>(s * 100));
        double t = 0.0;
        for (int a = 0; a < m; ++a) {
            c.p.push_back(rng.uniform(Stream::Aux, static_cast<std::uint64_t>(s * 100 + a + 1)));
            t += c.p.back();
        }
        for (double& x : c.p) x /= t;
        w += c.weight;
        mix.components.push_back(c);
    }
    for (auto& c : mix.components) c.weight /= w;
    return mix;
}

double max_diff(const PairDistribution& a, const PairDistribution& b) {
    double e = 0.0;
    for (std::size_t i = 0; i < a.p.size(); ++i) e = std::max(e, std::abs(a.p[i] - b.p[i]));
    return e;
}

}  // namespace

TEST(Exchangeable, PsdExamples) {
    auto anti = psd_check(matrix(2, {0, 0.5, 0.5, 0}));
    EXPECT_FALSE(anti.is_psd);
    EXPECT_NEAR(anti.min_eigenvalue, -0.5, 1e-12);
    auto diag = psd_check(matrix(2, {0.5, 0, 0, 0.5}));
    EXPECT_TRUE(diag.is_psd);
    EXPECT_NEAR(diag.min_eigenvalue, 0.5, 1e-12);
    EXPECT_THROW(psd_check(matrix(2, {0.5, 0.3, 0.2, 0})), Error);
    EXPECT_THROW(psd_check(matrix(2, {0.5, 0.3, 0.3, 0})), Error);
}

TEST(Exchangeable, MixturesArePsd) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const int m = 2 + static_cast<int>(seed % 5);
        auto rho = random_mixture(m, 1 + static_cast<int>(seed % 4), seed).pair_matrix();
        EXPECT_TRUE(psd_check(rho).is_psd) << seed;
    }
}

TEST(Exchangeable, PsdPermutationInvariant) {
    auto rho = random_mixture(4, 3, 7).pair_matrix();
    rho.p[1] += 0.05;
    rho.p[4] += 0.05;
    rho.p[0] -= 0.05;
    rho.p[5] -= 0.05;
    const double base = psd_check(rho).min_eigenvalue;
    std::vector<int> perm = {0, 1, 2, 3};
    while (std::next_permutation(perm.begin(), perm.end())) {
        PairDistribution q{4, std::vector<double>(16)};
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) q.p[static_cast<std::size_t>(a * 4 + b)] = rho(perm[a], perm[b]);
        EXPECT_NEAR(psd_check(q).min_eigenvalue, base, 1e-12);
    }
}

TEST(Exchangeable, RealizeUniformPairs) {
    ProductMixture mix{{{1.0, {0.5, 0.5}}}};
    const std::size_t n = 200000;
    auto s = realize(mix, 3, n, 3);
    const double sigma = std::sqrt(0.25 * 0.75 / static_cast<double>(n));
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            auto e = empirical_pair(s, 3, i, j, 2);
            for (double x : e.p) EXPECT_NEAR(x, 0.25, 4 * sigma);
        }
}

TEST(Exchangeable, RealizePointMasses) {
    ProductMixture mix{{{0.5, {1.0, 0.0}}, {0.5, {0.0, 1.0}}}};
    const std::size_t n = 100000;
    auto s = realize(mix, 5, n, 9);
    const double sigma = std::sqrt(0.25 / static_cast<double>(n));
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) {
            auto e = empirical_pair(s, 5, i, j, 2);
            EXPECT_EQ(e(0, 1), 0.0);
            EXPECT_EQ(e(1, 0), 0.0);
            EXPECT_NEAR(e(0, 0), 0.5, 4 * sigma);
        }
}

TEST(Exchangeable, RealizeMatchesMixtureMatrix) {
    for (std::uint64_t seed : {11u, 12u, 13u}) {
        auto mix = random_mixture(3, 3, seed);
        const auto rho = mix.pair_matrix();
        const std::size_t n = 100000;
        auto s = realize(mix, 4, n, seed);
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                EXPECT_LE(max_diff(empirical_pair(s, 4, i, j, 3), rho), 5.0 / std::sqrt(static_cast<double>(n)));
    }
}

TEST(Exchangeable, RealizeThreadInvariant) {
    auto mix = random_mixture(3, 2, 4);
    EXPECT_EQ(realize(mix, 3, 20000, 5, 1), realize(mix, 3, 20000, 5, 4));
}

TEST(Exchangeable, DecomposeSingleProduct) {
    ProductMixture mix{{{1.0, {0.25, 0.5, 0.25}}}};
    auto rho = mix.pair_matrix();
    auto r = try_decompose(rho, 4);
    ASSERT_EQ(r.status, DecomposeStatus::Found);
    EXPECT_LE(max_diff(r.mixture->pair_matrix(), rho), 1e-9);
}

TEST(Exchangeable, DecomposeTwoComponents) {
    ProductMixture mix{{{0.5, {0.5, 0.25, 0.25, 0.0}}, {0.5, {0.0, 0.25, 0.25, 0.5}}}};
    auto rho = mix.pair_matrix();
    auto r = try_decompose(rho, 8);
    ASSERT_EQ(r.status, DecomposeStatus::Found);
    EXPECT_LE(r.residual, 1e-6);
    EXPECT_LE(max_diff(r.mixture->pair_matrix(), rho), 1e-6);
    EXPECT_TRUE(psd_check(r.mixture->pair_matrix()).is_psd);
}

TEST(Exchangeable, DecomposeRejectsCounterexample) {
    auto r = try_decompose(matrix(2, {0, 0.5, 0.5, 0}), 8);
    EXPECT_EQ(r.status, DecomposeStatus::NotPsd);
    EXPECT_EQ(r.columns, 0u);
    EXPECT_THROW(try_decompose(PairDistribution{5, std::vector<double>(25, 0.04)}, 4), Error);
}

TEST(Exchangeable, DecomposeOffGridNotFound) {
    // third of a unit is not on a resolution-2 grid
    ProductMixture mix{{{1.0, {1.0 / 3, 2.0 / 3}}}};
    auto r = try_decompose(mix.pair_matrix(), 2);
    EXPECT_EQ(r.status, DecomposeStatus::NotFound);
    EXPECT_GT(r.residual, 1e-6);
}

TEST(Exchangeable, ThresholdPairs) {
    auto phi = uniform_density(1.0);
    auto single = threshold_pair_distribution(Scheme::single(phi), 4);
    for (int a = 0; a < 4; ++a) EXPECT_NEAR(single(a, a), 0.25, 1e-15);
    auto ind = threshold_pair_distribution(Scheme::independent(phi), 4);
    for (double x : ind.p) EXPECT_NEAR(x, 1.0 / 16, 1e-15);
    EXPECT_TRUE(psd_check(single).is_psd);
    EXPECT_THROW(threshold_pair_distribution(Scheme::clocks(), 4), Error);
}

TEST(Exchangeable, TextRoundTrip) {
    auto mix = random_mixture(3, 2, 21);
    std::stringstream ss;
    write_product_mixture(ss, mix);
    auto back = read_product_mixture(ss);
    ASSERT_EQ(back.components.size(), 2u);
    EXPECT_EQ(back.components[1].p, mix.components[1].p);
    auto rho = mix.pair_matrix();
    std::stringstream ms;
    write_pair_distribution(ms, rho);
    EXPECT_EQ(read_pair_distribution(ms).p, rho.p);
    std::istringstream bad("2\n0.5 0.5\n0.5");
    EXPECT_THROW(read_pair_distribution(bad), Error);
}
