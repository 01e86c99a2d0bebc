#include "mwc/rng.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

using namespace mwc;

TEST(Rng, Deterministic) {
    RandomSource a(7), b(7), c(8);
    EXPECT_EQ(a.bits(Stream::Aux, 3), b.bits(Stream::Aux, 3));
    EXPECT_NE(a.bits(Stream::Aux, 3), c.bits(Stream::Aux, 3));
    EXPECT_NE(a.bits(Stream::Aux, 3), a.bits(Stream::Clocks, 3));
    EXPECT_NE(a.split(1).bits(Stream::Aux, 0), a.split(2).bits(Stream::Aux, 0));
    EXPECT_EQ(a.split(5).trial(), 5u);
}

TEST(Rng, UniformRangeAndMoments) {
    RandomSource r(11);
    const int n = 200000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = r.uniform(Stream::Aux, static_cast<std::uint64_t>(i));
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        s += u;
        s2 += u * u;
    }
    const double mean = s / n, var = s2 / n - mean * mean;
    EXPECT_NEAR(mean, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / n));
    EXPECT_NEAR(var, 1.0 / 12.0, 2e-3);
}

TEST(Rng, IndexMapRedirectsTerminals) {
    std::vector<int> map = {2, 0, 1};
    RandomSource base(3, 4);
    auto r = base.with_index_map(map);
    for (int t = 0; t < 3; ++t)
        EXPECT_EQ(r.terminal_uniform(Stream::Thresholds, t), base.uniform(Stream::Thresholds, static_cast<std::uint64_t>(map[t])));
    EXPECT_EQ(r.split(4).terminal_uniform(Stream::Thresholds, 0), r.terminal_uniform(Stream::Thresholds, 0));
}

TEST(Rng, SplitmixDistinct) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 10000; ++i) seen.insert(splitmix64(i));
    EXPECT_EQ(seen.size(), 10000u);
}
