#include "mwc/constants.hpp"
#include "mwc/error.hpp"
#include "mwc/optimize.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace mwc;

TEST(Optimize1309, ClosedForm) {
    ClosedForm1309 r = minimize_1309_closed_form();
    const double s5 = std::sqrt(5.0);
    EXPECT_NEAR(r.a, 2.0 / 3.0 * (2.0 + s5), 1e-9);
    EXPECT_NEAR(r.b, s5 - 2.0, 1e-9);
    EXPECT_NEAR(r.p, (5.0 + 3.0 * s5) / 20.0, 1e-9);
    EXPECT_NEAR(r.factor, (3.0 + s5) / 4.0, 1e-9);
    EXPECT_LE(std::abs(r.constraint_residual), 1e-12);
}

TEST(Optimize1302, PublishedOptimum) {
    const double s3 = std::sqrt(3.0);
    Param1302Result r = solve_param_lp_1302(2.0 * s3 - 3.0);
    EXPECT_NEAR(r.z_star, (10.0 + 4.0 * s3) / 13.0, 1e-7);
    EXPECT_NEAR(r.p1, (6.0 + 5.0 * s3) / 26.0, 1e-5);
    EXPECT_NEAR(r.a_t, (12.0 + 10.0 * s3) / 39.0, 1e-5);
    EXPECT_NEAR(r.c_t, (6.0 + 5.0 * s3) / 26.0, 1e-5);
    EXPECT_NEAR(r.d_t, (4.0 - s3) / 13.0, 1e-5);
    EXPECT_NEAR(r.p3, (11.0 * s3 - 18.0) / 26.0, 1e-5);
    EXPECT_NEAR(r.p1 + r.p2 + r.p3, 1.0, 1e-7);
}

TEST(Optimize1302, CornersSuffice) {
    for (double b : {0.3, 0.4641016151377546, 0.6}) {
        double corner = solve_param_lp_1302(b).z_star;
        double dense = solve_param_lp_1302(b, 40).z_star;
        EXPECT_NEAR(corner, dense, 1e-7) << b;
    }
}

TEST(Optimize1302, ScanMinimumNearPublishedB) {
    std::vector<double> bs;
    for (int i = 0; i <= 6; ++i) bs.push_back(0.40 + 0.02 * i);
    auto rs = scan_param_1302(bs, 2);
    std::size_t best = 0;
    for (std::size_t i = 1; i < rs.size(); ++i)
        if (rs[i].z_star < rs[best].z_star) best = i;
    EXPECT_NEAR(rs[best].b, 0.46, 1e-12);
    for (const auto& r : rs) EXPECT_GE(r.z_star, (10.0 + 4.0 * std::sqrt(3.0)) / 13.0 - 1e-9);
}

TEST(Optimize1296, ConfigValidation) {
    ParamSearchConfig c;
    c.phi_bins = 4;
    EXPECT_THROW(c.validate(), Error);
    c = ParamSearchConfig{};
    c.grid_spacing = 1.0 / 16;
    EXPECT_THROW(c.validate(), Error);
    c = ParamSearchConfig{};
    c.b = 0.0;
    EXPECT_THROW(c.validate(), Error);
}

TEST(Optimize1296, PublishedVectorFeasible) {
    ParamLp plp = build_param_lp_1296(ParamSearchConfig{});
    auto x = published_param_vector(plp, 1.2970);
    EXPECT_LE(max_row_violation(plp, x), 0.0);
    EXPECT_LE(normalization_residual(plp, x), 1e-6);
}

TEST(Optimize1296, DefaultOptimumAndLeakage) {
    ParamSearchConfig cfg;
    ParamSearchResult r = solve_param_lp_1296(cfg);
    EXPECT_GE(r.z_star, 1.28);
    EXPECT_LE(r.z_star, 1.2965);
    EXPECT_NEAR(r.p1 + r.p2 + r.p3 + r.p4, 1.0, 1e-7);
    EXPECT_LE(param_leakage(r, cfg, 4), r.z_star + 0.01);
}

TEST(Optimize1296, ClocksPlusSingleThresholdOnly) {
    ParamSearchConfig cfg;
    cfg.b = 1.0;
    cfg.use_descending = false;
    cfg.use_independent = false;
    ParamSearchResult r = solve_param_lp_1296(cfg);
    EXPECT_EQ(r.p3, 0.0);
    EXPECT_EQ(r.p4, 0.0);
    EXPECT_GE(r.z_star, (3.0 + std::sqrt(5.0)) / 4.0 - 0.01);
}
