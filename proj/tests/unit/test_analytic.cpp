#include "mwc/analytic.hpp"
#include "mwc/error.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace mwc;

namespace {
const double s5 = std::sqrt(5.0), s3 = std::sqrt(3.0);
const double a9 = (4 + 2 * s5) / 3, b9 = s5 - 2;
const double f9 = (3 + s5) / 4, z2 = (10 + 4 * s3) / 13;
const std::array<KargerCase, 5> kcases = {KargerCase::BothLowOthersLow, KargerCase::SplitOthersLow,
                                          KargerCase::BothLowOtherHigh, KargerCase::SplitOtherHigh, KargerCase::BothHigh};
}  // namespace

TEST(Analytic, ExpClocks) {
    EXPECT_EQ(density_expclocks(0, 0), 2.0);
    EXPECT_EQ(density_expclocks(0.5, 0.5), 1.0);
    EXPECT_NEAR(density_expclocks(0.3, 0.2), 1.5, 1e-15);
    EXPECT_EQ(density_expclocks(0.1, 0.7), density_expclocks(0.7, 0.1));
    EXPECT_THROW(density_expclocks(0.6, 0.6), Error);
}

TEST(Analytic, Single) {
    const auto phi = phi_1309();
    for (double u1 : {0.0, 0.1, 0.2})
        for (double u2 : {0.3, 0.5, 0.7}) EXPECT_NEAR(density_single(u1, u2, phi), a9 / 2 * (u1 + u2 + b9), 1e-12);
    EXPECT_EQ(density_single(0, 0, phi), 0.0);
    EXPECT_NEAR(density_single(0.1, 0.9, phi), 0.5 * a9 * 0.1 + a9 / 2 * (0.9 + b9), 1e-12);
    EXPECT_THROW(density_single(0.5, 0.2, phi), Error);
    EXPECT_EQ(density_single_refined(0.1, 0.2, phi, Regime::AllOthersBelow), density_single(0.1, 0.2, phi));
    EXPECT_NEAR(density_single_refined(0.1, 0.2, phi, Regime::SomeOtherBetween), phi.evaluate(0.1) / 3 + phi.evaluate(0.2), 1e-15);
    EXPECT_NEAR(density_single_refined(0.1, 0.2, phi, Regime::SomeOtherAbove), phi.evaluate(0.1) / 3 + phi.evaluate(0.2) / 2, 1e-15);
}

TEST(Analytic, SingleWorstCase) {
    const auto phi = phi_1309();
    // large k with all others below u1 approaches the two-coordinate formula
    EXPECT_NEAR(density_single_worst_case(0.45, 0.5, 1000, phi), density_single(0.45, 0.5, phi), 2e-3);
    EXPECT_LE(density_single_worst_case(0.45, 0.5, 10, phi), density_single(0.45, 0.5, phi));
    EXPECT_THROW(density_single_worst_case(0.3, 0.3, 5, phi), Error);
}

TEST(Analytic, Descending) {
    const double b = 0.4;
    const auto psi = uniform_density(b);
    EXPECT_NEAR(density_descending(0.1, 0.3, psi), (2 - 0.2 / b) / b, 1e-12);
    EXPECT_NEAR(density_descending(0.1, 0.6, psi), 0.1 / (b * b), 1e-12);
    EXPECT_EQ(density_descending(0.45, 0.5, psi), 0.0);
    EXPECT_NEAR(density_descending_refined(0.1, 0.3, 0.2, psi, Regime::SomeOtherBetween),
                (1 - 0.2 / b) * (1 - 0.1 / b) / b + 1 / b, 1e-12);
    EXPECT_THROW(density_descending_refined(0.1, 0.3, 0.4, psi, Regime::SomeOtherBetween), Error);
    EXPECT_THROW(density_descending_refined(0.1, 0.3, 0.2, psi, Regime::SomeOtherAbove), Error);
}

TEST(Analytic, Independent) {
    const double b = 6.0 / 11.0;
    EXPECT_EQ(density_independent(0.6, 0.7 - 0.3, 0.35, KargerCase::BothHigh), 0.0);
    EXPECT_THROW(density_independent(0.1, 0.2, b, KargerCase::BothHigh), Error);
    // a -> 0 limit of bullet 1 on u1 + u2 = 1
    EXPECT_NEAR(density_independent(0.45, 0.55 - 1e-12, 1.0, KargerCase::BothLowOthersLow), 2.0 - 0.5, 1e-6);
    const double lim = 2 / b - 1 / (2 * b * b);
    EXPECT_NEAR(lim, 11.0 / 3 - 121.0 / 72, 1e-14);
    const double u1 = 0.2, u2 = 1 - u1 - 1e-6 * b;
    EXPECT_NEAR(density_independent(u1, u2, b, KargerCase::SplitOthersLow), 1 / (2 * b), 1e-6);
    // direct formula away from the series
    const double a = (1 - 0.1 - 0.2) / b;
    const double f1 = (1 - std::exp(-a)) / a, f2 = (1 - (1 + a) * std::exp(-a)) / (a * a);
    EXPECT_NEAR(density_independent(0.1, 0.2, b, KargerCase::BothLowOthersLow), 2 * f1 / b - 0.3 * f2 / (b * b), 1e-12);
    // continuity across the series switch
    for (double aa : {0.999e-4, 1.001e-4}) {
        const double v1 = 0.3, v2 = 1 - v1 - aa * b;
        if (v2 > b) continue;
        EXPECT_NEAR(density_independent(v1, v2, b, KargerCase::BothLowOthersLow),
                    density_independent(v1, 1 - v1 - 1e-4 * b, b, KargerCase::BothLowOthersLow), 1e-6);
    }
    EXPECT_NEAR(karger_f1(0.99999e-4), karger_f1(1.00001e-4), 1e-9);
    EXPECT_NEAR(karger_f2(0.99999e-4), karger_f2(1.00001e-4), 1e-9);
    EXPECT_NEAR(karger_f12(0.99999e-4), karger_f12(1.00001e-4), 1e-9);
    for (double u = 0.0; u <= 0.5; u += 0.05)
        for (double v = u; v <= 1 - u; v += 0.05)
            for (auto c : kcases)
                if (karger_case_applicable(u, v, b, c)) EXPECT_GE(density_independent(u, v, b, c), 0.0);
}

TEST(Analytic, Mixture1309TightRegion) {
    for (double u1 = 0; u1 <= b9; u1 += b9 / 20)
        for (double u2 = b9; u2 <= 1 - u1; u2 += 0.03) EXPECT_NEAR(density_mixture_1309(u1, u2), f9, 1e-12);
    for (double u1 = 0; u1 <= 0.5; u1 += 0.01)
        for (double u2 = u1; u2 <= 1 - u1; u2 += 0.01) EXPECT_LE(density_mixture_1309(u1, u2), f9 + 1e-12);
}

TEST(Analytic, Mixture1302) {
    EXPECT_NEAR(density_mixture_1302(0, 0, 1), z2, 1e-12);
    double best = 0;
    const double b = 2 * s3 - 3;
    for (int i = 0; i <= 256; ++i)
        for (int j = i; i + j <= 512; ++j) {
            const double u1 = i / 512.0, u2 = j / 512.0;
            for (int c = 1; c <= 3; ++c)
                if (case_applicable_1302(u1, u2, b, c)) best = std::max(best, density_mixture_1302(u1, u2, c));
        }
    EXPECT_NEAR(best, z2, 1e-9);
}

TEST(Analytic, Mixture1296) {
    const double v = density_mixture_1296(0, 0, Case1296::I);
    const double b = 6.0 / 11.0;
    const double a = 1 / b;
    const double expect = 0.31052 * 2 + 0.015338 * 2 / b + 0.36836 * (2 * (1 - std::exp(-a)) / a / b);
    EXPECT_NEAR(v, expect, 1e-12);
    EXPECT_LE(v, 1.296445);
    EXPECT_FALSE(case_applicable_1296(0.6, 0.7 - 0.3, b, Case1296::V));
    EXPECT_THROW(density_mixture_1296(0.6, 0.4, Case1296::V), Error);
    EXPECT_EQ(density_mixture_1296(0.2, 0.1, Case1296::I), density_mixture_1296(0.1, 0.2, Case1296::I));
}
