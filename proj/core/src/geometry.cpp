#include "mwc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "mwc/error.hpp"

namespace mwc {

SimplexPoint SimplexPoint::make(std::vector<double> coords) {
    if (coords.size() < 2) fail("domain_error", "simplex point needs k >= 2 coordinates");
    double sum = 0.0;
    for (double& c : coords) {
        if (!std::isfinite(c)) fail("domain_error", "non-finite simplex coordinate");
        if (c < 0.0) {
            if (c < -kRenormTol) fail("domain_error", "negative simplex coordinate " + std::to_string(c));
            c = 0.0;
        }
        sum += c;
    }
    if (std::abs(sum - 1.0) > kRenormTol)
        fail("domain_error", "simplex coordinates sum to " + std::to_string(sum));
    if (sum != 1.0)
        for (double& c : coords) c /= sum;
    return SimplexPoint(std::move(coords));
}

SimplexPoint SimplexPoint::vertex(int k, int t) {
    if (k < 2 || t < 0 || t >= k) fail("domain_error", "bad simplex vertex");
    std::vector<double> c(static_cast<std::size_t>(k), 0.0);
    c[static_cast<std::size_t>(t)] = 1.0;
    return SimplexPoint(std::move(c));
}

EdgeSpec EdgeSpec::make(SimplexPoint location, int i, int j, double epsilon) {
    const int k = location.k();
    if (i < 0 || j < 0 || i >= k || j >= k || i == j) fail("domain_error", "edge type (i,j) invalid");
    if (!(epsilon > 0.0)) fail("domain_error", "edge length must be positive");
    if (location[static_cast<std::size_t>(i)] + epsilon > 1.0 + kSimplexTol ||
        location[static_cast<std::size_t>(j)] - epsilon < -kSimplexTol)
        fail("domain_error", "edge leaves the simplex");
    return EdgeSpec{std::move(location), i, j, epsilon};
}

SimplexPoint EdgeSpec::other_endpoint() const {
    std::vector<double> c(location.coords().begin(), location.coords().end());
    c[static_cast<std::size_t>(i)] += epsilon;
    c[static_cast<std::size_t>(j)] = std::max(0.0, c[static_cast<std::size_t>(j)] - epsilon);
    return SimplexPoint::make(std::move(c));
}

void FractionalEmbedding::validate() const {
    const int kk = k();
    if (kk < 2) fail("domain_error", "embedding needs at least two terminals");
    for (const auto& p : points)
        if (p.k() != kk) fail("domain_error", "embedding dimension mismatch");
    for (int s = 0; s < kk; ++s) {
        const int t = terminals[static_cast<std::size_t>(s)];
        if (t < 0 || t >= n()) fail("domain_error", "terminal vertex out of range");
        const auto& p = points[static_cast<std::size_t>(t)];
        for (int i = 0; i < kk; ++i) {
            const double want = i == s ? 1.0 : 0.0;
            if (std::abs(p[static_cast<std::size_t>(i)] - want) > 1e-9)
                fail("domain_error", "terminal " + std::to_string(s + 1) + " is not at its simplex vertex");
        }
    }
}

bool Labeling::complete() const {
    return std::none_of(assignment.begin(), assignment.end(), [](int l) { return l < 0; });
}

void WeightedGraph::normalize() {
    if (n < 1) fail("domain_error", "graph has no vertices");
    std::map<std::pair<int, int>, double> merged;
    for (const auto& e : edges) {
        if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
            fail("domain_error", "edge endpoint out of range");
        if (e.u == e.v) fail("domain_error", "self-loop at vertex " + std::to_string(e.u + 1));
        if (!(e.w > 0.0) || !std::isfinite(e.w)) fail("domain_error", "edge weight must be positive and finite");
        merged[{std::min(e.u, e.v), std::max(e.u, e.v)}] += e.w;
    }
    edges.clear();
    for (const auto& [key, w] : merged) edges.push_back({key.first, key.second, w});

    if (k() < 2 || k() > n) fail("domain_error", "need 2 <= k <= n terminals");
    std::vector<int> seen = terminals;
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        fail("domain_error", "terminal vertices must be distinct");
    for (int t : terminals)
        if (t < 0 || t >= n) fail("domain_error", "terminal vertex out of range");
}

SimplexPoint worst_case_location(double u1, double u2, int k) {
    if (k < 3) fail("domain_error", "worst_case_location requires k >= 3");
    if (u1 < 0.0 || u2 < 0.0) fail("domain_error", "coordinates must be nonnegative");
    if (u1 + u2 > 1.0 + kSimplexTol) fail("domain_error", "u1 + u2 exceeds 1");
    const double rest = std::max(0.0, 1.0 - (u1 + u2)) / (k - 2);
    std::vector<double> c(static_cast<std::size_t>(k), rest);
    c[0] = u1;
    c[1] = u2;
    return SimplexPoint::make(std::move(c));
}

double cut_weight(const WeightedGraph& g, const Labeling& labeling) {
    if (static_cast<int>(labeling.assignment.size()) < g.n)
        fail("domain_error", "labeling does not cover vertex " + std::to_string(labeling.assignment.size() + 1));
    for (int v = 0; v < g.n; ++v)
        if (labeling.assignment[static_cast<std::size_t>(v)] < 0)
            fail("domain_error", "vertex " + std::to_string(v + 1) + " has no label");
    double total = 0.0;
    for (const auto& e : g.edges)
        if (labeling.assignment[static_cast<std::size_t>(e.u)] != labeling.assignment[static_cast<std::size_t>(e.v)])
            total += e.w;
    return total;
}

bool separates_terminals(const Labeling& labeling, std::span<const int> terminals) {
    for (std::size_t s = 0; s < terminals.size(); ++s) {
        const auto t = static_cast<std::size_t>(terminals[s]);
        if (t >= labeling.assignment.size() || labeling.assignment[t] != static_cast<int>(s)) return false;
    }
    return true;
}

}  // namespace mwc
