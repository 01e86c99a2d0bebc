#pragma once

#include <cstddef>
#include <vector>

#include "mwc/analytic.hpp"
#include "mwc/density.hpp"
#include "mwc/lp.hpp"

namespace mwc {

struct ParamSearchConfig {
    double b = 6.0 / 11.0;
    int phi_bins = 64;
    double grid_spacing = 1.0 / 64.0;
    std::vector<Case1296> include_cases{Case1296::I, Case1296::II, Case1296::III, Case1296::IV, Case1296::V};
    bool use_descending = true;   // p3 free, else fixed at 0
    bool use_independent = true;  // p4 free, else fixed at 0

    void validate() const;
};

// Variable layout of the parameter LP.
inline constexpr std::size_t kVarZ = 0, kVarP1 = 1, kVarP3 = 2, kVarP4 = 3, kVarBins = 4;

struct ParamLp {
    LinearProgram lp;
    std::vector<double> bin_edges;  // bins are (lo, hi]; phi~(0) = 0
    std::vector<double> axis;       // constraint coordinates
    std::size_t num_points = 0;
};

ParamLp build_param_lp_1296(const ParamSearchConfig& cfg);

struct ParamSearchResult {
    double b = 0.0;
    double z_star = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;
    double p3 = 0.0;
    double p4 = 0.0;
    PiecewiseDensity phi_tilde;  // piecewise constant
    std::size_t lp_iterations = 0;
};

ParamSearchResult solve_param_lp_1296(const ParamSearchConfig& cfg);
std::vector<ParamSearchResult> scan_param_1296(const ParamSearchConfig& cfg, const std::vector<double>& bs,
                                               int threads = 0);

// Published parameters with phi~ averaged over each bin, and z in slot 0.
std::vector<double> published_param_vector(const ParamLp& plp, double z);
// Largest (row activity - rhs) over inequality rows, and |normalization residual|.
double max_row_violation(const ParamLp& plp, const std::vector<double>& x);
double normalization_residual(const ParamLp& plp, const std::vector<double>& x);

// Max of the mixture density on the grid refined by the given factor.
double param_leakage(const ParamSearchResult& r, const ParamSearchConfig& cfg, int refine = 4);

// z >= case density at clipped corners of each case region, for fixed b.
LinearProgram build_param_lp_1302(double b, int extra_grid = 0);

struct Param1302Result {
    double b = 0.0;
    double z_star = 0.0;
    double p1 = 0.0;
    double p3 = 0.0;
    double a_t = 0.0;
    double c_t = 0.0;
    double d_t = 0.0;
    double p2 = 0.0;
    std::size_t lp_iterations = 0;
};

Param1302Result solve_param_lp_1302(double b, int extra_grid = 0);
std::vector<Param1302Result> scan_param_1302(const std::vector<double>& bs, int threads = 0);

struct ClosedForm1309 {
    double a = 0.0;
    double b = 0.0;
    double p = 0.0;
    double factor = 0.0;
    double constraint_residual = 0.0;
};

ClosedForm1309 minimize_1309_closed_form();

}  // namespace mwc
