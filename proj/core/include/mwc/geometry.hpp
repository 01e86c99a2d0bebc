#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mwc {

inline constexpr double kSimplexTol = 1e-12;
inline constexpr double kRenormTol = 1e-9;

// A point of the unit simplex; terminal indices are 0-based.
class SimplexPoint {
public:
    SimplexPoint() = default;

    // Clamps tiny negatives, renormalizes when the sum is within 1e-9 of 1,
    // throws Error("domain_error") otherwise.
    static SimplexPoint make(std::vector<double> coords);
    static SimplexPoint vertex(int k, int t);

    int k() const noexcept { return static_cast<int>(coords_.size()); }
    double operator[](std::size_t i) const { return coords_[i]; }
    std::span<const double> coords() const noexcept { return coords_; }

    friend bool operator==(const SimplexPoint&, const SimplexPoint&) = default;

private:
    explicit SimplexPoint(std::vector<double> c) : coords_(std::move(c)) {}
    std::vector<double> coords_;
};

// Edge of type (i, j): the second endpoint moves epsilon of mass from j to i.
struct EdgeSpec {
    SimplexPoint location;
    int i = 0;
    int j = 1;
    double epsilon = 1e-3;

    static EdgeSpec make(SimplexPoint location, int i, int j, double epsilon);
    SimplexPoint other_endpoint() const;
};

struct FractionalEmbedding {
    std::vector<SimplexPoint> points;  // indexed by vertex id
    std::vector<int> terminals;        // terminals[s] = vertex id of terminal s

    int k() const noexcept { return static_cast<int>(terminals.size()); }
    int n() const noexcept { return static_cast<int>(points.size()); }
    void validate() const;
};

// assignment[v] = terminal index, or -1 when unassigned.
struct Labeling {
    std::vector<int> assignment;

    bool complete() const;
};

struct WeightedEdge {
    int u = 0;
    int v = 0;
    double w = 1.0;
};

// Simple undirected graph; vertex ids are 0..n-1.
struct WeightedGraph {
    int n = 0;
    std::vector<WeightedEdge> edges;
    std::vector<int> terminals;

    int k() const noexcept { return static_cast<int>(terminals.size()); }

    // Merges parallel edges (weights added), orders endpoints u < v and sorts.
    // Throws on self-loops, bad ids, non-positive weights, bad terminals.
    void normalize();
};

SimplexPoint worst_case_location(double u1, double u2, int k);

double cut_weight(const WeightedGraph& g, const Labeling& labeling);

// True if every terminal carries its own index.
bool separates_terminals(const Labeling& labeling, std::span<const int> terminals);

}  // namespace mwc
