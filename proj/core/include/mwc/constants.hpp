#pragma once

#include <numbers>

namespace mwc::consts {

inline constexpr double sqrt3 = std::numbers::sqrt3;
inline constexpr double sqrt5 = 2.23606797749978969641;

// Exponential clocks + single threshold.
namespace a1309 {
inline constexpr double a = (4.0 + 2.0 * sqrt5) / 3.0;
inline constexpr double b = sqrt5 - 2.0;
inline constexpr double p = (5.0 + 3.0 * sqrt5) / 20.0;
inline constexpr double factor = (3.0 + sqrt5) / 4.0;
}  // namespace a1309

// Clocks + single threshold + descending thresholds.
namespace a1302 {
inline constexpr double b = 2.0 * sqrt3 - 3.0;
inline constexpr double a_t = (12.0 + 10.0 * sqrt3) / 39.0;
inline constexpr double c_t = (6.0 + 5.0 * sqrt3) / 26.0;
inline constexpr double d_t = (4.0 - sqrt3) / 13.0;
inline constexpr double p1 = c_t;
inline constexpr double p2 = (19.0 - 8.0 * sqrt3) / 13.0;
inline constexpr double p3 = (11.0 * sqrt3 - 18.0) / 26.0;
inline constexpr double p3_printed = (11.0 * sqrt3 - 18.0) / 13.0;
inline constexpr double z = (10.0 + 4.0 * sqrt3) / 13.0;
inline constexpr double alpha = (-3.0 + 4.0 * sqrt3) / 13.0;
inline constexpr double gamma = (19.0 - 8.0 * sqrt3) / 26.0;
}  // namespace a1302

// Clocks + single + descending + independent thresholds (published parameters).
namespace a1296 {
inline constexpr double b = 6.0 / 11.0;
inline constexpr double p1 = 0.31052;
inline constexpr double p2 = 0.305782;
inline constexpr double p3 = 0.015338;
inline constexpr double p4 = 0.36836;
inline constexpr double grid_bound = 1.296445;
inline constexpr double factor = 1.2965;
inline constexpr double hessian_d = 16.0;
inline constexpr double phi_tilde_tol = 2e-3;
}  // namespace a1296

}  // namespace mwc::consts
