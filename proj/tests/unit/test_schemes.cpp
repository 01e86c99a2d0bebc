#include "mwc/analytic.hpp"
#include "mwc/error.hpp"
#include "mwc/montecarlo.hpp"
#include "mwc/schemes.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

using namespace mwc;

namespace {

FractionalEmbedding random_embedding(int n, int k, std::uint64_t seed) {
    RandomSource rng(seed);
    FractionalEmbedding emb;
    for (int t = 0; t < k; ++t) {
        emb.points.push_back(SimplexPoint::vertex(k, t));
        emb.terminals.push_back(t);
    }
    for (int v = k; v < n; ++v) {
        std::vector<double> c(static_cast<std::size_t>(k));
        double s = 0.0;
        for (int t = 0; t < k; ++t) {
            const double u = rng.uniform(Stream::Aux, static_cast<std::uint64_t>(v * k + t));
            c[static_cast<std::size_t>(t)] = u < 0.3 ? 0.0 : -std::log1p(-u);
            s += c[static_cast<std::size_t>(t)];
        }
        if (s == 0.0) c[0] = s = 1.0;
        for (double& x : c) x /= s;
        emb.points.push_back(SimplexPoint::make(c));
    }
    return emb;
}

std::vector<Scheme> all_schemes() {
    return {Scheme::clocks(), Scheme::single(phi_1309()), Scheme::descending(uniform_density(0.5)),
            Scheme::independent(uniform_density(6.0 / 11.0))};
}

}  // namespace

TEST(Schemes, TerminalsKeepOwnLabel) {
    for (std::uint64_t seed = 0; seed < 2500; ++seed) {
        const int k = 2 + static_cast<int>(seed % 5);
        const auto emb = random_embedding(k + 4, k, seed);
        for (const auto& s : all_schemes()) {
            const Labeling l = run_scheme(s, emb, RandomSource(seed).split(seed));
            ASSERT_TRUE(separates_terminals(l, emb.terminals));
            ASSERT_TRUE(l.complete());
        }
    }
}

TEST(Schemes, ExplicitPartitions) {
    auto single = Partition::make(SchemeKind::SingleThreshold, {0, 1, 2}, {0.5, 0.5, 0.5});
    const double x[] = {0.6, 0.4, 0.0};
    EXPECT_EQ(single.label(x), 0);
    const double y[] = {0.3, 0.3, 0.4};
    EXPECT_EQ(single.label(y), 2);  // nobody reaches the threshold: remainder
    auto clocks = Partition::make(SchemeKind::ExponentialClocks, {}, {1.0, 0.5, 2.0});
    EXPECT_EQ(clocks.label(x), 1);
    const double z[] = {0.0, 0.0, 1.0};
    EXPECT_EQ(clocks.label(z), 2);
}

TEST(Schemes, Deterministic) {
    const auto emb = random_embedding(30, 4, 9);
    for (const auto& s : all_schemes())
        EXPECT_EQ(run_scheme(s, emb, RandomSource(3, 7)).assignment, run_scheme(s, emb, RandomSource(3, 7)).assignment);
}

TEST(Schemes, PermutationEquivariance) {
    const std::vector<int> pi = {2, 0, 3, 1};  // terminal t -> pi[t]
    std::vector<int> map(4);
    for (int t = 0; t < 4; ++t) map[static_cast<std::size_t>(pi[static_cast<std::size_t>(t)])] = t;
    const auto emb = random_embedding(25, 4, 12);
    FractionalEmbedding perm;
    for (const auto& p : emb.points) {
        std::vector<double> c(4);
        for (int t = 0; t < 4; ++t) c[static_cast<std::size_t>(pi[static_cast<std::size_t>(t)])] = p[static_cast<std::size_t>(t)];
        perm.points.push_back(SimplexPoint::make(c));
    }
    perm.terminals = {0, 1, 2, 3};
    for (std::uint64_t seed = 0; seed < 50; ++seed)
        for (const auto& s : all_schemes()) {
            const RandomSource rng(seed);
            const Labeling a = run_scheme(s, emb, rng);
            const Labeling b = run_scheme(s, perm, rng.with_index_map(map));
            for (std::size_t v = 4; v < a.assignment.size(); ++v)
                ASSERT_EQ(b.assignment[v], pi[static_cast<std::size_t>(a.assignment[v])]) << to_string(s.kind);
        }
}

TEST(Schemes, ClocksHalfSplit) {
    FractionalEmbedding emb{{SimplexPoint::vertex(2, 0), SimplexPoint::vertex(2, 1), SimplexPoint::make({0.5, 0.5})}, {0, 1}};
    const int n = 1000000;
    int ones = 0;
    const RandomSource base(1);
    for (int t = 0; t < n; ++t)
        if (draw_partition(Scheme::clocks(), 2, base.split(static_cast<std::uint64_t>(t))).label(emb.points[2].coords()) == 0) ++ones;
    EXPECT_NEAR(ones / static_cast<double>(n), 0.5, 4 * std::sqrt(0.25 / n));
}

TEST(Schemes, IndependentSymmetric) {
    const auto xi = uniform_density(1.0);
    const double x[] = {1.0 / 3, 1.0 / 3, 1.0 / 3};
    const int n = 1000000;
    std::array<int, 3> cnt{};
    const RandomSource base(2);
    for (int t = 0; t < n; ++t) ++cnt[static_cast<std::size_t>(draw_partition(Scheme::independent(xi), 3, base.split(static_cast<std::uint64_t>(t))).label(x))];
    for (int c : cnt) EXPECT_NEAR(c / static_cast<double>(n), 1.0 / 3, 4 * std::sqrt(2.0 / 9 / n));
}

TEST(Schemes, DensityExamples) {
    // descending, upper-bound form
    const auto psi = uniform_density(0.5);
    auto d = estimate_density(Scheme::descending(psi), 0.1, 0.3, 8, 1e-3, 400000, 31);
    EXPECT_NEAR(density_descending(0.1, 0.3, psi), 3.2, 1e-12);
    EXPECT_LE(d.mean, 3.2 + 3 * d.stderr_ + 0.05);
    // independent, Case I bound
    const double b = 6.0 / 11.0;
    auto e = estimate_density(Scheme::independent(uniform_density(b)), 0.2, 0.3, 40, 5e-4, 400000, 32);
    EXPECT_LE(e.mean, density_independent(0.2, 0.3, b, KargerCase::BothLowOthersLow) + 3 * e.stderr_ + 0.05);
    // descending k=2 edge at the midpoint
    auto f = estimate_density(Scheme::descending(uniform_density(1.0)), 0.5, 0.5, 3, 1e-3, 200000, 33);
    EXPECT_LE(f.mean, 2.0 + 3 * f.stderr_ + 10 * f.epsilon);
}

TEST(Schemes, MixtureConstruction) {
    const auto m9 = mixture_1309();
    ASSERT_EQ(m9.entries.size(), 2u);
    EXPECT_NEAR(m9.entries[0].weight, (5 + 3 * std::sqrt(5.0)) / 20, 1e-15);
    EXPECT_EQ(m9.entries[0].scheme.kind, SchemeKind::ExponentialClocks);
    EXPECT_EQ(m9.entries[1].scheme.kind, SchemeKind::SingleThreshold);
    const auto m2 = mixture_1302();
    EXPECT_NEAR(m2.entries[2].weight, (11 * std::sqrt(3.0) - 18) / 26, 1e-15);
    const auto m6 = mixture_1296();
    ASSERT_EQ(m6.entries.size(), 4u);
    const double s = 0.31052 + 0.305782 + 0.015338 + 0.36836;
    EXPECT_NEAR(m6.entries[0].weight * s, 0.31052, 1e-15);
    EXPECT_NEAR(m6.entries[3].weight * s, 0.36836, 1e-15);
    EXPECT_THROW(mixture_by_name("1234"), Error);
    SchemeMixture bad{"bad", {{0.5, Scheme::clocks()}}};
    EXPECT_THROW(bad.validate(), Error);
}

TEST(Schemes, SingleEntryMixtureMatchesScheme) {
    const auto emb = random_embedding(20, 3, 4);
    const Scheme s = Scheme::single(phi_1302());
    const SchemeMixture m{"one", {{1.0, s}}};
    for (std::uint64_t seed = 0; seed < 20; ++seed)
        EXPECT_EQ(run_mixture(m, emb, RandomSource(seed)).assignment, run_scheme(s, emb, RandomSource(seed)).assignment);
}
