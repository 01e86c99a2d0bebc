#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>

#include "mwc/geometry.hpp"
#include "mwc/lp.hpp"
#include "mwc/schemes.hpp"

namespace mwc {

struct RelaxationResult {
    FractionalEmbedding embedding;
    double lp_value = 0.0;
    std::size_t lp_iterations = 0;
    std::uint64_t embedding_hash = 0;
};

// Variables: x(v,i) at v*k+i, then y(e,i) at n*k + e*k + i, edges as given after normalize().
LinearProgram build_ckr_lp(const WeightedGraph& g);
RelaxationResult solve_ckr(const WeightedGraph& g);

std::uint64_t embedding_hash(const FractionalEmbedding& emb);
// Half the weighted L1 stretch of the edges.
double embedding_cost(const WeightedGraph& g, const FractionalEmbedding& emb);

struct BruteForceResult {
    Labeling labeling;
    double weight = 0.0;
};

// Exhaustive with pruning; requires n - k <= 14.
BruteForceResult brute_force_opt(const WeightedGraph& g);

struct RoundingReport {
    std::size_t trials = 0;
    double lp_value = 0.0;
    double best_cut = 0.0;
    double mean_cut = 0.0;
    double stddev_cut = 0.0;  // sample standard deviation across trials
    double ratio_mean = 0.0;
    double ratio_best = 0.0;
    Labeling best_labeling;
    std::uint64_t embedding_hash = 0;
};

RoundingReport round_embedding(const WeightedGraph& g, const RelaxationResult& rel, const SchemeMixture& mix,
                               std::size_t trials, std::uint64_t seed, int threads = 0);
RoundingReport round_and_report(const WeightedGraph& g, const SchemeMixture& mix, std::size_t trials,
                                std::uint64_t seed, int threads = 0);

// Terminals are vertices 0..k-1; each other pair is an edge with probability
// edge_prob and weight uniform in (0, 1].
WeightedGraph random_graph(int n, int k, double edge_prob, std::uint64_t seed);

// "p mwc n m k", "t <vertex> <terminal-index>", "e <u> <v> <w>"; 1-based; '#' comments.
WeightedGraph read_graph(std::istream& in);
void write_graph(std::ostream& out, const WeightedGraph& g);

}  // namespace mwc
