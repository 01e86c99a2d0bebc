#include "mwc/adversary.hpp"

#include "mwc/constants.hpp"
#include "mwc/error.hpp"

#include <algorithm>
#include <cmath>

namespace mwc {

std::string to_string(Profile p) {
    switch (p) {
        case Profile::Point: return "point";
        case Profile::Uniform: return "uniform";
        case Profile::LinearIncreasing: return "linear-increasing";
        case Profile::LinearDecreasing: return "linear-decreasing";
    }
    return "unknown";
}

double AdversaryDistribution::total_mass() const {
    double s = 0.0;
    for (const auto& r : regions) s += r.mass;
    return s;
}

AdversaryDistribution build_adv_1309(int k) {
    if (k < 4) fail("domain_error", "the 1309 adversary needs k >= 4");
    const double b = consts::a1309::b;
    const double km2 = static_cast<double>(k - 2);
    AdversaryDistribution d;
    d.name = "adv_1309";
    d.b = b;
    d.k = k;
    d.epsilon = (1.0 - 2.0 * b) / km2;
    d.regions.push_back({"A", "u_i in [3b, 1], u_j = 0", (1.0 - 3.0 * b) / (1.0 - b) * (1.0 - 1.0 / km2),
                         Profile::Uniform, {{3.0 * b, 0.0}, {1.0, 0.0}}});
    d.regions.push_back({"B", "u_i + 2 u_j = 3b, u_i in [b, 3b]", 2.0 * b / (1.0 - b) - 1.0 / km2, Profile::Uniform,
                         {{b, b}, {3.0 * b, 0.0}}});
    d.regions.push_back({"C", "u_i = 1, u_j = 0", 2.0 * (1.0 - 2.0 * b) / ((1.0 - b) * km2), Profile::Point,
                         {{1.0, 0.0}}});
    return d;
}

AdversaryDistribution build_adv_1302() {
    namespace c = consts::a1302;
    const double b = c::b, a = c::alpha, g = c::gamma;
    AdversaryDistribution d;
    d.name = "adv_1302";
    d.b = b;
    d.alpha = a;
    d.gamma = g;
    const double rc = b / (1.0 - b) * a / 4.0;
    const double rd = (1.0 - 2.0 * b) / (1.0 - b) * a / 4.0;
    d.regions = {
        {"R_A", "u1, u2 in [0, b]", a, Profile::Uniform, {{0, 0}, {b, 0}, {b, b}, {0, b}}},
        {"R_B1", "u1 - ((1-2b)/b) u2 >= b", a / 4.0, Profile::Uniform, {{b, 0}, {1, 0}, {1 - b, b}}},
        {"R_B2", "u2 - ((1-2b)/b) u1 >= b", a / 4.0, Profile::Uniform, {{0, b}, {0, 1}, {b, 1 - b}}},
        {"R_C1", "u1 + u2 = 1, u1 in [1-b, 1]", rc, Profile::LinearIncreasing, {{1 - b, b}, {1, 0}}},
        {"R_C2", "u1 + u2 = 1, u2 in [1-b, 1]", rc, Profile::LinearIncreasing, {{b, 1 - b}, {0, 1}}},
        {"R_D1", "u1 - ((1-2b)/b) u2 = b, u1 in [b, 1-b]", rd, Profile::LinearIncreasing, {{1 - b, b}, {b, 0}}},
        {"R_D2", "u2 - ((1-2b)/b) u1 = b, u2 in [b, 1-b]", rd, Profile::LinearIncreasing, {{b, 1 - b}, {0, b}}},
        {"R_E1", "u1 in [b, 1], u2 = 0", g, Profile::Uniform, {{b, 0}, {1, 0}}},
        {"R_E2", "u2 in [b, 1], u1 = 0", g, Profile::Uniform, {{0, b}, {0, 1}}},
    };
    return d;
}

namespace {

void check_region(const AdversaryRegion& r) {
    const std::size_t n = r.vertices.size();
    const bool ok = (r.profile == Profile::Point && n == 1) || (n == 2) || (r.profile == Profile::Uniform && (n == 3 || n == 4));
    if (!ok) fail("domain_error", "region " + r.name + " has an unsupported shape");
}

std::array<double, 2> lerp(const std::array<double, 2>& p, const std::array<double, 2>& q, double t) {
    return {p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])};
}

double clocks_cost_at(double ui, double uj, double eps) { return (2.0 - ui - uj + eps) / (1.0 + eps); }

}  // namespace

std::array<double, 2> center_of_mass(const AdversaryRegion& r) {
    check_region(r);
    const auto& v = r.vertices;
    switch (v.size()) {
        case 1: return v[0];
        case 2: {
            double t = 0.5;
            if (r.profile == Profile::LinearIncreasing) t = 2.0 / 3.0;
            if (r.profile == Profile::LinearDecreasing) t = 1.0 / 3.0;
            return lerp(v[0], v[1], t);
        }
        case 3: return {(v[0][0] + v[1][0] + v[2][0]) / 3.0, (v[0][1] + v[1][1] + v[2][1]) / 3.0};
        default: return {(v[0][0] + v[1][0] + v[2][0] + v[3][0]) / 4.0, (v[0][1] + v[1][1] + v[2][1] + v[3][1]) / 4.0};
    }
}

double expected_clocks_cost(const AdversaryDistribution& d) {
    double s = 0.0;
    for (const auto& r : d.regions) {
        const auto c = center_of_mass(r);
        s += r.mass * clocks_cost_at(c[0], c[1], d.epsilon);
    }
    return s;
}

double expected_clocks_cost_quadrature(const AdversaryDistribution& d, int points) {
    if (points < 1) fail("domain_error", "quadrature needs at least one point");
    double s = 0.0;
    for (const auto& r : d.regions) {
        check_region(r);
        const auto& v = r.vertices;
        double avg = 0.0;
        if (v.size() == 1) {
            avg = clocks_cost_at(v[0][0], v[0][1], d.epsilon);
        } else if (v.size() == 2) {
            double wsum = 0.0;
            for (int m = 0; m < points; ++m) {
                const double t = (m + 0.5) / points;
                double w = 1.0;
                if (r.profile == Profile::LinearIncreasing) w = t;
                if (r.profile == Profile::LinearDecreasing) w = 1.0 - t;
                const auto p = lerp(v[0], v[1], t);
                avg += w * clocks_cost_at(p[0], p[1], d.epsilon);
                wsum += w;
            }
            avg /= wsum;
        } else {
            const int n = std::max(1, static_cast<int>(std::lround(std::sqrt(static_cast<double>(points)))));
            std::size_t count = 0;
            if (v.size() == 3) {
                auto at = [&](int i, int j) {
                    return std::array<double, 2>{v[0][0] + (i * (v[1][0] - v[0][0]) + j * (v[2][0] - v[0][0])) / n,
                                                 v[0][1] + (i * (v[1][1] - v[0][1]) + j * (v[2][1] - v[0][1])) / n};
                };
                auto tri = [&](std::array<double, 2> a, std::array<double, 2> b, std::array<double, 2> c) {
                    avg += clocks_cost_at((a[0] + b[0] + c[0]) / 3.0, (a[1] + b[1] + c[1]) / 3.0, d.epsilon);
                    ++count;
                };
                for (int i = 0; i < n; ++i)
                    for (int j = 0; i + j < n; ++j) {
                        tri(at(i, j), at(i + 1, j), at(i, j + 1));
                        if (i + j + 2 <= n) tri(at(i + 1, j), at(i, j + 1), at(i + 1, j + 1));
                    }
            } else {
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) {
                        const double s1 = (i + 0.5) / n, s2 = (j + 0.5) / n;
                        const double x = v[0][0] + s1 * (v[1][0] - v[0][0]) + s2 * (v[3][0] - v[0][0]);
                        const double y = v[0][1] + s1 * (v[1][1] - v[0][1]) + s2 * (v[3][1] - v[0][1]);
                        avg += clocks_cost_at(x, y, d.epsilon);
                        ++count;
                    }
            }
            avg /= static_cast<double>(count);
        }
        s += r.mass * avg;
    }
    return s;
}

double eval_1309_expclocks(int k) { return expected_clocks_cost(build_adv_1309(k)); }

double eval_1309_expclocks_limit() {
    const double b = consts::a1309::b;
    return 1.5 * (1.0 - 3.0 * b) + b * (4.0 - 5.0 * b) / (1.0 - b);
}

namespace {

void check_theta(double theta) {
    if (!(theta > 0.0 && theta <= 1.0)) fail("domain_error", "theta must lie in (0, 1]");
}

}  // namespace

double eval_1309_threshold_cost(int k, double theta) {
    if (k < 4) fail("domain_error", "the 1309 adversary needs k >= 4");
    check_theta(theta);
    const double b = consts::a1309::b;
    const double kd = static_cast<double>(k), km2 = kd - 2.0;
    const double eps = (1.0 - 2.0 * b) / km2;
    const double top = 2.0 / (1.0 - b);
    const double a_cost = (1.0 / (1.0 - b)) * (1.0 - 1.0 / km2) * (1.0 - 1.0 / kd);
    const double b_cost = (1.0 / (1.0 - b) - 1.0 / (2.0 * km2 * b)) * (1.0 - 1.0 / kd);
    if (theta <= eps) return 1.0 / (1.0 - b);
    if (theta > 1.0 - eps) return top;
    if (theta > 3.0 * b) return a_cost;
    if (theta >= 3.0 * b - eps) {
        const double w = (theta - (3.0 * b - eps)) / eps;
        return (1.0 - w) * b_cost + w * a_cost;
    }
    if (theta > b) return b_cost;
    return 1.0 / (1.0 - b) - 1.0 / (2.0 * km2 * b);
}

double eval_1309_threshold_cost_limit(double theta) {
    check_theta(theta);
    const double b = consts::a1309::b;
    return theta == 1.0 ? 2.0 / (1.0 - b) : 1.0 / (1.0 - b);
}

std::vector<ThresholdTableRow> threshold_table_1309(int k) {
    if (k < 4) fail("domain_error", "the 1309 adversary needs k >= 4");
    const double b = consts::a1309::b;
    const double eps = (1.0 - 2.0 * b) / static_cast<double>(k - 2);
    std::vector<ThresholdTableRow> rows = {
        {"(1-eps, 1]", 1.0 - eps, 1.0, "C_ij", "i", 0, 0},
        {"(3b, 1-eps]", 3.0 * b, 1.0 - eps, "A_ij", "i", 0, 0},
        {"[3b-eps, 3b]", 3.0 * b - eps, 3.0 * b, "A_ij, B_ij", "i", 0, 0},
        {"(b, 3b-eps)", b, 3.0 * b - eps, "B_ij", "i", 0, 0},
        {"(eps, b]", eps, b, "B_ji", "i (j after i)", 0, 0},
        {"(0, eps]", 0.0, eps, "C_ji", "i", 0, 0},
    };
    for (auto& r : rows) {
        const double mid = r.lo == 1.0 - eps ? 1.0 : 0.5 * (r.lo + r.hi);
        r.cost_exact = eval_1309_threshold_cost(k, mid);
        r.cost_limit = eval_1309_threshold_cost_limit(mid);
    }
    return rows;
}

double min_cost_1309(int k, double spacing_frac) {
    if (k < 4) fail("domain_error", "the 1309 adversary needs k >= 4");
    if (!(spacing_frac > 0.0)) fail("domain_error", "spacing must be positive");
    const double b = consts::a1309::b;
    const double h = (1.0 - 2.0 * b) / static_cast<double>(k - 2) * spacing_frac;
    double best = eval_1309_expclocks(k);
    for (long long j = 1;; ++j) {
        const double theta = std::min(1.0, static_cast<double>(j) * h);
        best = std::min(best, eval_1309_threshold_cost(k, theta));
        if (theta >= 1.0) break;
    }
    return best;
}

double eval_1302_expclocks() { return expected_clocks_cost(build_adv_1302()); }

PairCost eval_1302_threshold_pair(double t1, double t2) {
    check_theta(t1);
    check_theta(t2);
    namespace c = consts::a1302;
    const double b = c::b, a = c::alpha, g = c::gamma;
    const double high = g / (1.0 - b) + a / (2.0 * (1.0 - b));
    if (t1 <= b && t2 <= b) return {1, 2.0 * a / b, false};
    if (t1 > b && t2 > b) return {2, 2.0 * high, false};
    if (t1 > b) return {3, high + a / b, true};
    const bool inside_b2 = t2 - ((1.0 - 2.0 * b) / b) * t1 >= b && t1 + t2 <= 1.0;
    if (inside_b2) return {4, 2.0 * a / b + g / (1.0 - b) + (-1.0 / b + 1.0 / (2.0 * (1.0 - b))) * (a / b) * t1, false};
    return {4, a / b + a * (b - t1) / (b * b) + high, false};
}

}  // namespace mwc
