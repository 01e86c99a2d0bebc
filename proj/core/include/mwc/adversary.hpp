#pragma once

#include <array>
#include <string>
#include <vector>

namespace mwc {

// Density along a region: Point (single edge), Uniform, or linear in the
// parameter running from vertices[0] (Increasing: zero there) to vertices[1].
enum class Profile { Point, Uniform, LinearIncreasing, LinearDecreasing };

std::string to_string(Profile p);

// Edges of type (i, j) located by (u_i, u_j); remaining coordinates are equal.
// 1 vertex: point; 2: segment; 3: triangle; 4: parallelogram (v0, v1, v2, v3 in order).
struct AdversaryRegion {
    std::string name;
    std::string support;
    double mass = 0.0;
    Profile profile = Profile::Uniform;
    std::vector<std::array<double, 2>> vertices;
};

struct AdversaryDistribution {
    std::string name;
    std::vector<AdversaryRegion> regions;
    double b = 0.0;
    double alpha = 0.0;
    double gamma = 0.0;
    double epsilon = 0.0;  // edge length; 0 for the limit game
    int k = 0;             // 0 when k plays no role

    double total_mass() const;
};

AdversaryDistribution build_adv_1309(int k);
AdversaryDistribution build_adv_1302();

std::array<double, 2> center_of_mass(const AdversaryRegion& r);

// Expected exponential-clocks cost per unit length, (2 - u_i - u_j + eps)/(1 + eps)
// averaged over the distribution: by centers of mass, or by quadrature with about
// `points` nodes per region.
double expected_clocks_cost(const AdversaryDistribution& d);
double expected_clocks_cost_quadrature(const AdversaryDistribution& d, int points = 10000);

double eval_1309_expclocks(int k);
double eval_1309_expclocks_limit();

// Single-threshold cost per unit length, exact in k and as k -> infinity.
double eval_1309_threshold_cost(int k, double theta);
double eval_1309_threshold_cost_limit(double theta);

struct ThresholdTableRow {
    std::string range;
    double lo = 0.0;
    double hi = 0.0;
    std::string edges;
    std::string terminal;
    double cost_exact = 0.0;  // at the midpoint of the range
    double cost_limit = 0.0;
};

std::vector<ThresholdTableRow> threshold_table_1309(int k);

// Minimum over clocks and thresholds on a grid of spacing eps * spacing_frac.
double min_cost_1309(int k, double spacing_frac = 0.25);

double eval_1302_expclocks();

struct PairCost {
    int case_id = 0;
    double value = 0.0;
    bool lower_bound = false;
};

PairCost eval_1302_threshold_pair(double theta1, double theta2);

}  // namespace mwc
