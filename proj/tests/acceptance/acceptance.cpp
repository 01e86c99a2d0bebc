#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "mwc/analytic.hpp"
#include "mwc/certify.hpp"
#include "mwc/ckr.hpp"
#include "mwc/constants.hpp"
#include "mwc/density.hpp"
#include "mwc/error.hpp"
#include "mwc/exchangeable.hpp"
#include "mwc/montecarlo.hpp"
#include "../support/quadratic.hpp"

using namespace mwc;
using nlohmann::json;

namespace {

struct Run {
    int status = -1;
    std::string out;
    double seconds = 0.0;
};

Run cli(const std::string& args) {
    const std::string cmd = std::string(MWC_CLI) + " " + args + " 2>/dev/null";
    const auto t0 = std::chrono::steady_clock::now();
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
    const int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

json cli_json(const std::string& args, double* seconds = nullptr) {
    Run r = cli("--json " + args);
    if (seconds) *seconds = r.seconds;
    if (r.status != 0) throw std::runtime_error("mwc " + args + " exited with " + std::to_string(r.status));
    return json::parse(r.out);
}

// Each check appends notes and returns pass/fail.
using Check = std::function<bool(std::ostringstream&)>;

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

bool c1(std::ostringstream& note) {
    double secs = 0.0;
    const json j = cli_json("certify --alg 1309 --delta 2^-12", &secs);
    const double target = consts::a1309::factor;
    const double gm = j["grid_max"];
    bool ok = near(gm, target, 1e-9) && secs < 10.0;
    const int n = 1 << 12;
    const double b = consts::a1309::b;
    double worst = 0.0;
    std::size_t points = 0;
    for (int i = 0; i <= n; ++i) {
        const double u1 = static_cast<double>(i) / n;
        if (u1 > b) break;
        for (int k = 0; i + k <= n; ++k) {
            const double u2 = static_cast<double>(k) / n;
            if (u2 < b) continue;
            worst = std::max(worst, std::abs(density_mixture_1309(u1, u2) - target));
            ++points;
        }
    }
    ok = ok && worst <= 1e-12;
    note << "grid_max=" << gm << " runtime=" << secs << "s tight_points=" << points << " tight_dev=" << worst;
    return ok;
}

bool c2(std::ostringstream& note) {
    namespace c = consts::a1302;
    const json cj = cli_json("certify --alg 1302 --delta 2^-12");
    const double gm = cj["grid_max"];
    const json oj = cli_json("optimize --target 1302 --b exact");
    const json& p = oj["parameters"];
    const double z = p["z_star"];
    double dev = 0.0;
    dev = std::max(dev, std::abs(p["b"].get<double>() - c::b));
    dev = std::max(dev, std::abs(p["p1"].get<double>() - c::p1));
    dev = std::max(dev, std::abs(p["p2"].get<double>() - c::p2));
    dev = std::max(dev, std::abs(p["p3"].get<double>() - c::p3));
    dev = std::max(dev, std::abs(oj["a_tilde"].get<double>() - c::a_t));
    dev = std::max(dev, std::abs(oj["c_tilde"].get<double>() - c::c_t));
    dev = std::max(dev, std::abs(oj["d_tilde"].get<double>() - c::d_t));
    const bool surfaced = oj.contains("p3_printed") && oj.contains("p3_note");
    note << "grid_max=" << gm << " z*=" << z << " param_dev=" << dev << " p3_note=" << (surfaced ? "yes" : "no");
    return near(gm, c::z, 1e-9) && near(z, c::z, 1e-7) && dev <= 1e-5 && surfaced;
}

bool c3(std::ostringstream& note) {
    double slow = 0.0, fast = 0.0;
    const json a = cli_json("certify --alg 1296 --delta 2^-16", &slow);
    const json f = cli_json("certify --alg 1296 --delta 2^-12", &fast);
    const double gm = a["grid_max"], cf = a["certified_factor"];
    const double fgm = f["grid_max"], fe = f["error_term"];
    const bool ok = gm <= 1.296445 && cf == gm + std::ldexp(1.0, -30) && cf < 1.2965 && slow < 900.0 &&
                    fgm <= 1.296445 && fe == 0.25 * 16.0 * std::ldexp(1.0, -24) && fast < 30.0;
    note.precision(10);
    note << "2^-16: grid_max=" << gm << " certified=" << cf << " (" << slow << "s); 2^-12: grid_max=" << fgm
         << " error=" << fe << " (" << fast << "s)";
    return ok;
}

bool c4(std::ostringstream& note) {
    namespace c = consts::a1296;
    const double i1309 = phi_1309().integrate(0.0, 1.0);
    const double i1302 = phi_1302().integrate(0.0, 1.0);
    const double it = phi_tilde_1296().integrate(0.0, 1.0);
    const double total = c::p1 + it + c::p3 + c::p4;
    note << "int phi1309=" << i1309 << " int phi1302=" << i1302 << " int phi_tilde=" << it << " total=" << total;
    return near(i1309, 1.0, 1e-9) && near(i1302, 1.0, 1e-9) && near(it, 0.305782, 2e-3) && near(total, 1.0, 2e-3);
}

bool c5(std::ostringstream& note) {
    const json a = cli_json("adversary --example 1302 --theta-grid 512");
    const double z = consts::a1302::z;
    const double clocks = a["clocks_cost"];
    double grid_min = std::numeric_limits<double>::infinity();
    for (const auto& row : a["cost_table"])
        if (row["strategy"] != "clocks") grid_min = std::min(grid_min, row["min_cost"].get<double>());
    const int k = 100000;
    const json b = cli_json("adversary --example 1309 --k 100000 --theta-grid 4096");
    const double floor1309 = consts::a1309::factor - 20.0 / k;
    double m1309 = b["clocks_cost"];
    for (const auto& row : b["threshold_table"]) m1309 = std::min(m1309, row["cost_exact"].get<double>());
    m1309 = std::min({m1309, b["threshold_grid_min"].get<double>(), b["min_strategy_cost"].get<double>()});
    note.precision(15);
    note << "1302 clocks=" << clocks << " pair_min=" << grid_min << "; 1309 k=1e5 min=" << m1309
         << " floor=" << floor1309;
    return near(clocks, z, 1e-12) && grid_min >= z - 1e-9 && m1309 >= floor1309;
}

bool c6(std::ostringstream& note) {
    const double eps = 1e-3;
    const std::uint64_t n = 1000000;
    const auto phi = phi_1309();
    const auto psi = phi_1302();
    const double bk = consts::a1296::b;
    const auto xi = uniform_density(bk);
    const RandomSource rng(0xACCE);
    int pass = 0, total = 0;
    double worst = -std::numeric_limits<double>::infinity();
    for (int s = 0; s < 20; ++s) {
        const auto u = [&](std::uint64_t i) { return rng.uniform(Stream::Aux, static_cast<std::uint64_t>(4 * s) + i); };
        double u1 = 0.02 + 0.46 * u(0), u2 = 0.02 + 0.46 * u(1);
        if (std::abs(u1 - u2) < 0.01) u2 = std::min(0.49, u2 + 0.02);
        if (u1 > u2) std::swap(u1, u2);
        const int k = 3 + static_cast<int>(u(2) * 6);
        const std::uint64_t seed = 1000 + static_cast<std::uint64_t>(s);
        bool ok = true;
        double slack = 0.0;
        DensityEstimate e;
        const auto tol = [&] { return 3.0 * e.stderr_ + 10.0 * eps; };
        switch (s % 4) {
            case 0: {  // exact
                e = estimate_density(Scheme::clocks(), u1, u2, k, eps, n, seed);
                slack = tol() - std::abs(e.mean - density_expclocks(u1, u2));
                break;
            }
            case 1: {  // exact finite-k oracle, and the two-coordinate bound
                e = estimate_density(Scheme::single(phi), u1, u2, k, eps, n, seed);
                const double r = std::max(0.0, 1.0 - u1 - u2) / (k - 2);
                if (r == u1 || r == u2) break;
                slack = std::min(tol() - std::abs(e.mean - density_single_worst_case(u1, u2, k, phi)),
                                 density_single(u1, u2, phi) + tol() - e.mean);
                break;
            }
            case 2: {
                e = estimate_density(Scheme::descending(psi), u1, u2, k, eps, n, seed);
                slack = density_descending(u1, u2, psi) + tol() - e.mean;
                break;
            }
            default: {
                e = estimate_density(Scheme::independent(xi), u1, u2, k, eps, n, seed);
                double bound = -1.0;
                for (auto c : {KargerCase::BothLowOthersLow, KargerCase::SplitOthersLow, KargerCase::BothLowOtherHigh,
                               KargerCase::SplitOtherHigh, KargerCase::BothHigh})
                    if (karger_case_applicable(u1, u2, bk, c)) bound = std::max(bound, density_independent(u1, u2, bk, c));
                slack = bound + tol() - e.mean;
            }
        }
        ok = slack >= 0.0;
        worst = std::max(worst, -slack);
        ++total;
        pass += ok;
    }
    note << pass << "/" << total << " points within tolerance, worst margin=" << -worst;
    return pass == total;
}

bool c7(std::ostringstream& note) {
    const auto mix = mixture_1296();
    int feasible = 0, sandwich = 0, ratio_ok = 0;
    double pooled = 0.0, worst_z = -std::numeric_limits<double>::infinity();
    const int instances = 30;
    const std::size_t trials = 2000;
    for (int i = 0; i < instances; ++i) {
        const WeightedGraph g = random_graph(10, 3, 0.5, 7000 + static_cast<std::uint64_t>(i));
        RoundingReport r;
        try {
            r = round_and_report(g, mix, trials, 9000 + static_cast<std::uint64_t>(i));
        } catch (const Error&) {
            continue;  // an infeasible labeling aborts the run
        }
        if (r.best_labeling.complete() && separates_terminals(r.best_labeling, g.terminals)) ++feasible;
        const double opt = brute_force_opt(g).weight;
        if (r.best_cut >= opt - 1e-9 && opt >= r.lp_value - 1e-7) ++sandwich;
        const double sigma = r.lp_value > 0.0 ? r.stddev_cut / r.lp_value / std::sqrt(static_cast<double>(trials)) : 0.0;
        if (r.ratio_mean <= 1.2965 + 3.0 * sigma) ++ratio_ok;
        worst_z = std::max(worst_z, r.ratio_mean);
        pooled += r.ratio_mean;
    }
    pooled /= instances;
    note << "mean ratio=" << pooled << " max instance ratio=" << worst_z << " feasible=" << feasible << "/"
         << instances << " sandwich=" << sandwich << "/" << instances << " ratio_ok=" << ratio_ok << "/" << instances;
    return feasible == instances && sandwich == instances && ratio_ok == instances;
}

bool c8(std::ostringstream& note) {
    const RandomSource base(0xD15C);
    int violations = 0;
    const int trials = 10000;
    for (int t = 0; t < trials; ++t) {
        const RandomSource rng = base.split(static_cast<std::uint64_t>(t));
        const double d = 1.0 + 31.0 * rng.uniform(Stream::Thresholds, 0);
        const quad::Quadratic f = quad::random_quadratic(rng, d);
        const double h = std::ldexp(1.0, -static_cast<int>(2 + 10 * rng.uniform(Stream::Thresholds, 1)));
        const double x0 = rng.uniform(Stream::Thresholds, 2), y0 = rng.uniform(Stream::Thresholds, 3);
        const std::array<double, 4> corners{f(x0, y0), f(x0 + h, y0), f(x0, y0 + h), f(x0 + h, y0 + h)};
        if (corner_max_bound(corners, d, h) < quad::cell_max(f, x0, y0, h) - 1e-12) ++violations;
    }
    note << trials << " quadratics, " << violations << " violations";
    return violations == 0;
}

bool c9(std::ostringstream& note) {
    PairDistribution anti{2, {0.0, 0.5, 0.5, 0.0}};
    const PsdResult pr = psd_check(anti);
    bool ok = !pr.is_psd && near(pr.min_eigenvalue, -0.5, 1e-10);
    const RandomSource base(0x9A12);
    int found = 0, stats = 0;
    double worst_res = 0.0, worst_err = 0.0;
    const int cases = 50;
    const std::size_t samples = 100000;
    for (int c = 0; c < cases; ++c) {
        const RandomSource rng = base.split(static_cast<std::uint64_t>(c));
        std::uint64_t idx = 0;
        const auto u = [&] { return rng.uniform(Stream::Aux, idx++); };
        const int m = 2 + static_cast<int>(u() * 3);
        const int r = 1 + static_cast<int>(u() * 3);
        const int res = 8;
        ProductMixture mix;
        double wsum = 0.0;
        for (int i = 0; i < r; ++i) {
            // grid-aligned composition of res into m parts
            std::vector<int> cnt(static_cast<std::size_t>(m), 0);
            for (int q = 0; q < res; ++q) ++cnt[static_cast<std::size_t>(u() * m)];
            ProductComponent pc;
            pc.weight = 0.2 + u();
            for (int v : cnt) pc.p.push_back(static_cast<double>(v) / res);
            wsum += pc.weight;
            mix.components.push_back(pc);
        }
        for (auto& pc : mix.components) pc.weight /= wsum;
        const PairDistribution rho = mix.pair_matrix();
        const DecomposeResult d = try_decompose(rho, res);
        if (d.status == DecomposeStatus::Found && d.mixture) {
            const PairDistribution back = d.mixture->pair_matrix();
            double e = 0.0;
            for (std::size_t q = 0; q < rho.p.size(); ++q) e = std::max(e, std::abs(back.p[q] - rho.p[q]));
            worst_res = std::max(worst_res, e);
            if (e <= 1e-6 && psd_check(back).is_psd) ++found;
        }
        const int k = 4;
        const auto s = realize(mix, k, samples, 500 + static_cast<std::uint64_t>(c));
        double err = 0.0;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) {
                const PairDistribution emp = empirical_pair(s, k, i, j, m);
                for (std::size_t q = 0; q < rho.p.size(); ++q) err = std::max(err, std::abs(emp.p[q] - rho.p[q]));
            }
        worst_err = std::max(worst_err, err);
        if (err <= 5.0 / std::sqrt(static_cast<double>(samples))) ++stats;
    }
    ok = ok && found == cases && stats == cases;
    note << "anti min_eig=" << pr.min_eigenvalue << " decompose " << found << "/" << cases
         << " (max residual " << worst_res << ") realize " << stats << "/" << cases << " (max error " << worst_err
         << ")";
    return ok;
}

bool c10(std::ostringstream& note) {
    const std::vector<std::string> cases = {
        "certify --alg 1296 --delta 2^-10",
        "optimize --target 1296",
        "optimize --target 1302 --b exact",
        "optimize --target 1309",
        "solve --graph " MWC_DATA "/random10.mwc --mixture 1296 --trials 500 --brute-force",
        "adversary --example 1302 --theta-grid 64",
        "adversary --example 1309 --k 1000",
        "estimate --scheme 1296 --u1 0.2 --u2 0.25 --k 4 --samples 50000",
        "pairwise --matrix " MWC_DATA "/mix_pair.mat --decompose --grid 4",
        "pairwise --realize " MWC_DATA "/mix3.txt --k 4 --samples 50000",
    };
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::vector<std::string> threads = {"1", "4", std::to_string(hw), "auto"};
    int identical = 0;
    for (const auto& c : cases) {
        std::string ref;
        bool same = true;
        for (const auto& t : threads)
            for (int rep = 0; rep < 2; ++rep) {
                const Run r = cli("--json --seed 0x5EED --threads " + t + " " + c);
                if (r.status != 0) same = false;
                if (ref.empty()) ref = r.out;
                same = same && r.out == ref && !r.out.empty();
            }
        identical += same;
    }
    note << identical << "/" << cases.size() << " subcommand runs byte-identical over threads {1,4," << hw
         << ",auto} x2";
    return identical == static_cast<int>(cases.size());
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, Check>> checks = {
        {"factor 1.309017", c1},      {"factor 1.30217", c2},   {"factor 1.2965", c3},
        {"normalizations", c4},       {"adversary bounds", c5}, {"oracle agreement", c6},
        {"end-to-end ratio", c7},     {"discretization lemma", c8},
        {"pairwise module", c9},      {"determinism", c10},
    };
    int only = argc > 1 ? std::atoi(argv[1]) : 0;
    int failed = 0;
    for (std::size_t i = 0; i < checks.size(); ++i) {
        if (only && static_cast<int>(i + 1) != only) continue;
        std::ostringstream note;
        bool ok = false;
        try {
            ok = checks[i].second(note);
        } catch (const std::exception& e) {
            note << " exception: " << e.what();
        }
        failed += !ok;
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << checks[i].first << "): " << note.str()
                  << std::endl;
    }
    return failed ? 1 : 0;
}
