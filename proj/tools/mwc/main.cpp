#include <chrono>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "mwc/error.hpp"
#include "mwc/format.hpp"

using namespace mwc::cli;

namespace {

int parse_threads(const std::string& s) {
    if (s == "auto") return 0;
    const long long n = mwc::parse_int(s);
    if (n < 1 || n > 1024) mwc::fail("usage_error", "--threads must be 'auto' or in [1, 1024]");
    return static_cast<int>(n);
}

std::uint64_t parse_seed(const std::string& s) {
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(s, &used, 0);
        if (used != s.size() || s.empty() || s[0] == '-') throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        mwc::fail("usage_error", "--seed expects an unsigned 64-bit integer, got '" + s + "'");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multiway cut rounding toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string seed = "0x5EED", threads = "auto";
    bool json = false, timing = false;
    app.add_option("--seed", seed, "Random seed (decimal or 0x hex)")->capture_default_str();
    app.add_option("--threads", threads, "Worker threads or 'auto'")->capture_default_str();
    app.add_flag("--json", json, "Emit JSON");
    app.add_flag("--timing", timing, "Add runtime_seconds to the report");

    CertifyArgs ca;
    auto* certify = app.add_subcommand("certify", "Grid certification of a rounding scheme's cut density");
    certify->add_option("--alg", ca.alg, "1309 | 1302 | 1296")->required();
    certify->add_option("--delta", ca.delta, "Grid spacing 2^-P")->capture_default_str();
    certify->add_option("--dump-csv", ca.dump_csv, "Write per-point densities to CSV");

    OptimizeArgs oa;
    auto* optimize = app.add_subcommand("optimize", "Solve the parameter LP of a scheme mixture");
    optimize->add_option("--target", oa.target, "1296 | 1302 | 1309")->required();
    optimize->add_option("--b", oa.b, "Threshold cap b (1302 also accepts 'exact')");
    optimize->add_option("--bins", oa.bins, "phi bins (1296)")->capture_default_str();
    optimize->add_option("--grid", oa.grid, "Constraint grid spacing 2^-g (1296)")->capture_default_str();
    optimize->add_option("--scan-b", oa.scan_b, "Scan b over lo:hi:step");
    optimize->add_option("--density-out", oa.density_out, "Write the optimized density in text format");

    SolveArgs sa;
    auto* solve = app.add_subcommand("solve", "Relax and round a multiway cut instance");
    solve->add_option("--graph", sa.graph, "Graph file")->required();
    solve->add_option("--mixture", sa.mixture, "1309 | 1302 | 1296")->capture_default_str();
    solve->add_option("--trials", sa.trials, "Rounding trials")->capture_default_str();
    solve->add_flag("--brute-force", sa.brute_force, "Also compute the exact optimum");

    AdversaryArgs aa;
    auto* adversary = app.add_subcommand("adversary", "Evaluate the lower-bound instance distributions");
    adversary->add_option("--example", aa.example, "1309 | 1302")->required();
    adversary->add_option("--k", aa.k, "Number of terminals (1309)")->capture_default_str();
    auto* grid_opt = adversary->add_option("--theta-grid", aa.theta_grid, "Threshold grid size")->capture_default_str();
    adversary->add_option("--csv", aa.csv, "Write the cost table to CSV");

    EstimateArgs ea;
    auto* estimate = app.add_subcommand("estimate", "Monte Carlo cut density at an edge location");
    estimate->add_option("--scheme", ea.scheme, "clocks | single | descending | independent | 1309 | 1302 | 1296")->required();
    estimate->add_option("--u1", ea.u1, "Coordinate u1")->required();
    estimate->add_option("--u2", ea.u2, "Coordinate u2")->required();
    estimate->add_option("--k", ea.k, "Number of terminals")->required();
    estimate->add_option("--eps", ea.eps, "Edge length")->capture_default_str();
    estimate->add_option("--samples", ea.samples, "Trials")->capture_default_str();
    estimate->add_option("--density", ea.density, "phi1309 | phi1302 | phi1296 | uniform:<b> | file:<path>");

    PairwiseArgs pa;
    auto* pairwise = app.add_subcommand("pairwise", "Pairwise-realizable distribution tools");
    pairwise->add_option("--matrix", pa.matrix, "Pair distribution matrix file");
    pairwise->add_flag("--decompose", pa.decompose, "Search for a product-mixture decomposition");
    pairwise->add_option("--grid", pa.grid, "Simplex grid resolution")->capture_default_str();
    pairwise->add_option("--realize", pa.realize, "Product mixture file to sample");
    pairwise->add_option("--k", pa.k, "Variables per sample")->capture_default_str();
    pairwise->add_option("--samples", pa.samples, "Samples")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "error usage_error: " << e.what() << '\n' << app.help();
        return 2;
    }

    try {
        Context ctx;
        ctx.seed = parse_seed(seed);
        ctx.threads = parse_threads(threads);
        ctx.json = json;
        ctx.timing = timing;
        aa.theta_grid_set = grid_opt->count() > 0;
        const auto start = std::chrono::steady_clock::now();
        Json report;
        if (*certify) report = run_certify(ca, ctx);
        else if (*optimize) report = run_optimize(oa, ctx);
        else if (*solve) report = run_solve(sa, ctx);
        else if (*adversary) report = run_adversary(aa, ctx);
        else if (*estimate) report = run_estimate(ea, ctx);
        else report = run_pairwise(pa, ctx);
        if (timing)
            report["runtime_seconds"] =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        emit(std::cout, report, json);
        return 0;
    } catch (const mwc::Error& e) {
        std::cerr << "error " << e.code() << ": " << e.what() << '\n';
        return e.code() == "usage_error" ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error internal_error: " << e.what() << '\n';
        return 1;
    }
}
