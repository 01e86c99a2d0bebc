#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace mwc {

enum class Algorithm { A1309, A1302, A1296 };

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& s);  // "1309" | "1302" | "1296"

struct CertificationReport {
    Algorithm algorithm = Algorithm::A1296;
    int delta_log2 = 12;  // delta = 2^-delta_log2
    double delta = 0.0;
    double grid_max = 0.0;
    double hessian_bound_d = 0.0;
    double error_term = 0.0;
    double certified_factor = 0.0;
    double argmax_u1 = 0.0;
    double argmax_u2 = 0.0;
    std::string argmax_case;
    std::uint64_t cells_evaluated = 0;
    double wall_time_seconds = 0.0;
};

// max of the four cell-corner values plus d*delta^2/4.
double corner_max_bound(const std::array<double, 4>& corners, double d, double delta);

// Scans the triangle 0 <= u1 <= u2, u1 + u2 <= 1 at spacing 2^-delta_log2
// (plus breakpoint columns for the piecewise-affine algorithms), taking the
// max over applicable cases. Throws Error("domain_error") unless 6 <= delta_log2 <= 16.
CertificationReport certify(Algorithm algorithm, int delta_log2, int threads = 0);

// Coordinates scanned along each axis for the given algorithm and spacing.
std::vector<double> certify_axis(Algorithm algorithm, int delta_log2);

// Per-point evaluation used by certify: max over applicable cases (label in *which).
double certify_point(Algorithm algorithm, double u1, double u2, std::string* which = nullptr);

// Writes u1,u2,case,density for every grid point and applicable case.
void dump_certify_csv(Algorithm algorithm, int delta_log2, const std::string& path);

// Tables used by the fast 1296 scan, exposed for testing: value at grid
// point (i, j) of case I/II/III, or NaN when the case does not apply.
struct Fast1296 {
    explicit Fast1296(int delta_log2);
    double case_value(int c, std::int64_t i, std::int64_t j) const;

    std::int64_t n;
    double b;
    std::vector<double> phi;                          // phi_tilde(t/n)
    std::vector<double> base_i, base_ii, base_iii;    // terms depending on s = i + j
};

// Most negative central second difference (step 1e-4) of the case-wise
// density along either axis over random interior points; stencils crossing
// density breakpoints or case boundaries are skipped.
double hessian_scan(Algorithm algorithm, std::size_t samples, std::uint64_t seed = 0x5EED);

// Generic variant: f(u1, u2, case) with case in [0, cases), applicable(u1, u2, case).
double hessian_scan_fn(const std::function<double(double, double, int)>& f,
                       const std::function<bool(double, double, int)>& applicable, int cases,
                       const std::vector<double>& breakpoints, std::size_t samples, std::uint64_t seed);

}  // namespace mwc
