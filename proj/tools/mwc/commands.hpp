#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "output.hpp"

namespace mwc::cli {

struct CertifyArgs {
    std::string alg;
    std::string delta = "2^-12";
    std::string dump_csv;
};

struct OptimizeArgs {
    std::string target;
    std::string b;
    int bins = 64;
    std::string grid = "2^-6";
    std::string scan_b;
    std::string density_out;
};

struct SolveArgs {
    std::string graph;
    std::string mixture = "1296";
    std::uint64_t trials = 1000;
    bool brute_force = false;
};

struct AdversaryArgs {
    std::string example;
    int k = 100000;
    int theta_grid = 512;
    bool theta_grid_set = false;
    std::string csv;
};

struct EstimateArgs {
    std::string scheme;
    double u1 = 0.0;
    double u2 = 0.0;
    int k = 3;
    double eps = 1e-3;
    std::uint64_t samples = 1000000;
    std::string density;
};

struct PairwiseArgs {
    std::string matrix;
    bool decompose = false;
    int grid = 8;
    std::string realize;
    int k = 3;
    std::uint64_t samples = 100000;
};

Json run_certify(const CertifyArgs& a, const Context& ctx);
Json run_optimize(const OptimizeArgs& a, const Context& ctx);
Json run_solve(const SolveArgs& a, const Context& ctx);
Json run_adversary(const AdversaryArgs& a, const Context& ctx);
Json run_estimate(const EstimateArgs& a, const Context& ctx);
Json run_pairwise(const PairwiseArgs& a, const Context& ctx);

// "2^-P" -> P
int parse_power(const std::string& s, const std::string& flag);

}  // namespace mwc::cli
