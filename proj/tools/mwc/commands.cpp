#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "mwc/adversary.hpp"
#include "mwc/analytic.hpp"
#include "mwc/certify.hpp"
#include "mwc/ckr.hpp"
#include "mwc/constants.hpp"
#include "mwc/density.hpp"
#include "mwc/error.hpp"
#include "mwc/exchangeable.hpp"
#include "mwc/format.hpp"
#include "mwc/montecarlo.hpp"
#include "mwc/optimize.hpp"

namespace mwc::cli {

namespace {

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("file_not_found", "cannot open '" + path + "'");
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) fail("io_error", "cannot write '" + path + "'");
    return out;
}

Json header(const std::string& command, const Context& ctx) {
    Json j;
    j["command"] = command;
    j["seed"] = ctx.seed;
    return j;
}

Json pieces_json(const PiecewiseDensity& d) {
    Json arr = Json::array();
    for (const auto& p : d.pieces()) {
        Json c = Json::array();
        for (int i = 0; i <= std::max(0, p.degree()); ++i) c.push_back(p.c[static_cast<std::size_t>(i)]);
        arr.push_back({{"lo", p.lo}, {"hi", p.hi}, {"coeffs", c}});
    }
    return arr;
}

std::vector<double> parse_range(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    for (std::string t; std::getline(ss, t, ':');) parts.push_back(t);
    if (parts.size() != 3) fail("usage_error", "--scan-b expects lo:hi:step");
    const double lo = parse_double(parts[0]), hi = parse_double(parts[1]), step = parse_double(parts[2]);
    if (!(step > 0.0) || !(lo <= hi)) fail("domain_error", "--scan-b needs lo <= hi and step > 0");
    const auto n = static_cast<long long>(std::floor((hi - lo) / step + 1e-9));
    if (n > 10000) fail("domain_error", "--scan-b range has too many points");
    std::vector<double> bs;
    for (long long i = 0; i <= n; ++i) bs.push_back(lo + static_cast<double>(i) * step);
    return bs;
}

PiecewiseDensity density_from_spec(const std::string& spec) {
    if (spec == "phi1309") return phi_1309();
    if (spec == "phi1302") return phi_1302();
    if (spec == "phi1296") return phi_tilde_1296();
    if (spec.rfind("uniform:", 0) == 0) return uniform_density(parse_double(spec.substr(8)));
    if (spec.rfind("file:", 0) == 0) {
        auto in = open_in(spec.substr(5));
        return read_density(in);
    }
    fail("usage_error", "unknown density '" + spec + "' (phi1309|phi1302|phi1296|uniform:<b>|file:<path>)");
}

}  // namespace

int parse_power(const std::string& s, const std::string& flag) {
    if (s.rfind("2^-", 0) != 0) fail("usage_error", flag + " expects 2^-P, got '" + s + "'");
    const long long p = parse_int(s.substr(3));
    if (p < 0 || p > 62) fail("usage_error", flag + " exponent out of range");
    return static_cast<int>(p);
}

Json run_certify(const CertifyArgs& a, const Context& ctx) {
    const Algorithm alg = algorithm_from_string(a.alg);
    const int p = parse_power(a.delta, "--delta");
    const CertificationReport r = certify(alg, p, ctx.threads);
    if (!a.dump_csv.empty()) dump_certify_csv(alg, p, a.dump_csv);
    Json j = header("certify", ctx);
    j["algorithm"] = to_string(alg);
    j["delta_log2"] = r.delta_log2;
    j["delta"] = r.delta;
    j["grid_max"] = r.grid_max;
    j["hessian_bound_d"] = r.hessian_bound_d;
    j["error_term"] = r.error_term;
    j["certified_factor"] = r.certified_factor;
    j["argmax"] = {{"u1", r.argmax_u1}, {"u2", r.argmax_u2}, {"case", r.argmax_case}};
    j["cells_evaluated"] = r.cells_evaluated;
    return j;
}

namespace {

Json optimize_1296(const OptimizeArgs& a, const Context& ctx) {
    ParamSearchConfig cfg;
    if (!a.b.empty()) cfg.b = parse_double(a.b);
    cfg.phi_bins = a.bins;
    cfg.grid_spacing = std::ldexp(1.0, -parse_power(a.grid, "--grid"));
    cfg.validate();
    Json j = header("optimize", ctx);
    j["target"] = "1296";
    j["bins"] = cfg.phi_bins;
    j["grid_spacing"] = cfg.grid_spacing;
    if (!a.scan_b.empty()) {
        const auto bs = parse_range(a.scan_b);
        const auto rs = scan_param_1296(cfg, bs, ctx.threads);
        Json scan = Json::array();
        std::size_t best = 0;
        for (std::size_t i = 0; i < rs.size(); ++i) {
            scan.push_back({{"b", rs[i].b}, {"z_star", rs[i].z_star}, {"p1", rs[i].p1}, {"p2", rs[i].p2},
                            {"p3", rs[i].p3}, {"p4", rs[i].p4}});
            if (rs[i].z_star < rs[best].z_star) best = i;
        }
        j["scan"] = scan;
        cfg.b = rs[best].b;
    }
    const ParamSearchResult r = solve_param_lp_1296(cfg);
    j["parameters"] = {{"b", r.b}, {"p1", r.p1}, {"p2", r.p2}, {"p3", r.p3}, {"p4", r.p4}, {"z_star", r.z_star}};
    j["lp_iterations"] = r.lp_iterations;
    j["leakage_refined_4x"] = param_leakage(r, cfg, 4);
    namespace c = consts::a1296;
    j["published"] = {{"b", c::b}, {"p1", c::p1}, {"p2", c::p2}, {"p3", c::p3}, {"p4", c::p4}, {"z_star", c::factor}};
    j["phi_tilde"] = pieces_json(r.phi_tilde);
    if (!a.density_out.empty()) {
        auto out = open_out(a.density_out);
        write_density(out, r.phi_tilde);
    }
    return j;
}

Json optimize_1302(const OptimizeArgs& a, const Context& ctx) {
    namespace c = consts::a1302;
    Json j = header("optimize", ctx);
    j["target"] = "1302";
    std::vector<double> bs;
    if (!a.scan_b.empty()) bs = parse_range(a.scan_b);
    double b = c::b;
    if (!a.b.empty() && a.b != "exact") b = parse_double(a.b);
    if (!bs.empty()) {
        const auto rs = scan_param_1302(bs, ctx.threads);
        Json scan = Json::array();
        std::size_t best = 0;
        for (std::size_t i = 0; i < rs.size(); ++i) {
            scan.push_back({{"b", rs[i].b}, {"z_star", rs[i].z_star}});
            if (rs[i].z_star < rs[best].z_star) best = i;
        }
        j["scan"] = scan;
        b = rs[best].b;
    }
    const Param1302Result r = solve_param_lp_1302(b);
    j["parameters"] = {{"b", r.b}, {"p1", r.p1}, {"p2", r.p2}, {"p3", r.p3}, {"p4", 0.0}, {"z_star", r.z_star}};
    j["a_tilde"] = r.a_t;
    j["c_tilde"] = r.c_t;
    j["d_tilde"] = r.d_t;
    j["lp_iterations"] = r.lp_iterations;
    j["closed_form"] = {{"b", c::b},     {"p1", c::p1},   {"p2", c::p2},   {"p3", c::p3},
                        {"a_tilde", c::a_t}, {"c_tilde", c::c_t}, {"d_tilde", c::d_t}, {"z_star", c::z}};
    j["p3_printed"] = c::p3_printed;
    j["p3_note"] = "(11*sqrt(3)-18)/13 violates the normalization; the consistent value (11*sqrt(3)-18)/26 is reported as p3";
    if (r.p2 > 0.0) {
        const PiecewiseDensity phi({{0.0, r.b, {0.0, r.a_t / r.p2, 0.0, 0.0}}, {r.b, 1.0, {r.d_t / r.p2, r.c_t / r.p2, 0.0, 0.0}}},
                                   1.0, 1e-6);
        j["phi"] = pieces_json(phi);
        if (!a.density_out.empty()) {
            auto out = open_out(a.density_out);
            write_density(out, phi);
        }
    }
    return j;
}

Json optimize_1309(const OptimizeArgs& a, const Context& ctx) {
    if (!a.scan_b.empty() || !a.b.empty()) fail("usage_error", "--b and --scan-b do not apply to target 1309");
    const ClosedForm1309 r = minimize_1309_closed_form();
    Json j = header("optimize", ctx);
    j["target"] = "1309";
    j["parameters"] = {{"b", r.b}, {"p1", r.p}, {"p2", 1.0 - r.p}, {"p3", 0.0}, {"p4", 0.0}, {"z_star", r.factor}};
    j["a"] = r.a;
    j["constraint_residual"] = r.constraint_residual;
    const PiecewiseDensity phi({{0.0, r.b, {0.0, r.a, 0.0, 0.0}}, {r.b, 1.0, {r.a * r.b / 2.0, r.a / 2.0, 0.0, 0.0}}}, 1.0,
                               1e-9);
    j["phi"] = pieces_json(phi);
    if (!a.density_out.empty()) {
        auto out = open_out(a.density_out);
        write_density(out, phi);
    }
    return j;
}

}  // namespace

Json run_optimize(const OptimizeArgs& a, const Context& ctx) {
    if (a.target == "1296") return optimize_1296(a, ctx);
    if (a.target == "1302") return optimize_1302(a, ctx);
    if (a.target == "1309") return optimize_1309(a, ctx);
    fail("usage_error", "--target must be 1296, 1302 or 1309");
}

Json run_solve(const SolveArgs& a, const Context& ctx) {
    auto in = open_in(a.graph);
    WeightedGraph g = read_graph(in);
    g.normalize();
    if (a.trials < 1) fail("domain_error", "--trials must be positive");
    const SchemeMixture mix = mixture_by_name(a.mixture);
    const RelaxationResult rel = solve_ckr(g);
    const RoundingReport r = round_embedding(g, rel, mix, a.trials, ctx.seed, ctx.threads);
    Json j = header("solve", ctx);
    j["graph"] = {{"n", g.n}, {"m", g.edges.size()}, {"k", g.k()}};
    j["mixture"] = mix.name;
    j["lp_value"] = rel.lp_value;
    j["lp_iterations"] = rel.lp_iterations;
    j["embedding_hash"] = hex64(rel.embedding_hash);
    j["trials"] = r.trials;
    j["best_cut"] = r.best_cut;
    j["mean_cut"] = r.mean_cut;
    j["stddev_cut"] = r.stddev_cut;
    j["ratio_mean"] = r.ratio_mean;
    j["ratio_best"] = r.ratio_best;
    Json lab = Json::array();
    for (int t : r.best_labeling.assignment) lab.push_back(t + 1);
    j["best_labeling"] = lab;
    if (a.brute_force) {
        const BruteForceResult bf = brute_force_opt(g);
        Json bl = Json::array();
        for (int t : bf.labeling.assignment) bl.push_back(t + 1);
        j["brute_force"] = {{"weight", bf.weight},
                            {"labeling", bl},
                            {"sandwich_holds", r.best_cut >= bf.weight - 1e-9 && bf.weight >= rel.lp_value - 1e-9}};
    }
    return j;
}

namespace {

void write_csv(const std::string& path, const Json& rows) {
    auto out = open_out(path);
    if (rows.empty()) return;
    std::vector<std::string> cols;
    for (auto it = rows.front().begin(); it != rows.front().end(); ++it) cols.push_back(it.key());
    for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? "," : "") << cols[c];
    out << '\n';
    for (const auto& r : rows) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            const Json& v = r[cols[c]];
            out << (c ? "," : "");
            if (v.is_number_float())
                out << format_double(v.get<double>());
            else if (v.is_string())
                out << v.get<std::string>();
            else
                out << v.dump();
        }
        out << '\n';
    }
}

Json regions_json(const AdversaryDistribution& d) {
    Json arr = Json::array();
    for (const auto& r : d.regions) {
        const auto com = center_of_mass(r);
        arr.push_back({{"name", r.name}, {"support", r.support}, {"mass", r.mass}, {"profile", to_string(r.profile)},
                       {"com_u1", com[0]}, {"com_u2", com[1]}});
    }
    return arr;
}

Json adversary_1309(const AdversaryArgs& a, const Context& ctx) {
    const AdversaryDistribution d = build_adv_1309(a.k);
    Json j = header("adversary", ctx);
    j["example"] = "1309";
    j["k"] = a.k;
    j["b"] = d.b;
    j["epsilon"] = d.epsilon;
    j["regions"] = regions_json(d);
    j["total_mass"] = d.total_mass();
    const double clocks = eval_1309_expclocks(a.k);
    j["clocks_cost"] = clocks;
    j["clocks_cost_limit"] = eval_1309_expclocks_limit();
    Json rows = Json::array();
    for (const auto& r : threshold_table_1309(a.k))
        rows.push_back({{"range", r.range}, {"lo", r.lo}, {"hi", r.hi}, {"edges", r.edges}, {"terminal", r.terminal},
                        {"cost_exact", r.cost_exact}, {"cost_limit", r.cost_limit}});
    j["threshold_table"] = rows;
    double best = min_cost_1309(a.k);
    if (a.theta_grid_set) {
        double g = std::numeric_limits<double>::infinity();
        for (int i = 1; i <= a.theta_grid; ++i)
            g = std::min(g, eval_1309_threshold_cost(a.k, static_cast<double>(i) / a.theta_grid));
        j["threshold_grid_min"] = g;
        best = std::min(best, g);
    }
    j["min_strategy_cost"] = best;
    j["target"] = consts::a1309::factor;
    j["lower_bound_slack"] = 20.0 / a.k;
    j["holds"] = best >= consts::a1309::factor - 20.0 / a.k;
    if (!a.csv.empty()) write_csv(a.csv, rows);
    return j;
}

Json adversary_1302(const AdversaryArgs& a, const Context& ctx) {
    if (a.theta_grid < 2 || a.theta_grid > 8192) fail("domain_error", "--theta-grid must lie in [2, 8192]");
    const AdversaryDistribution d = build_adv_1302();
    Json j = header("adversary", ctx);
    j["example"] = "1302";
    j["b"] = d.b;
    j["alpha"] = d.alpha;
    j["gamma"] = d.gamma;
    j["regions"] = regions_json(d);
    j["total_mass"] = d.total_mass();
    j["clocks_cost"] = eval_1302_expclocks();
    j["clocks_cost_quadrature"] = expected_clocks_cost_quadrature(d);
    const int m = a.theta_grid;
    struct CaseMin {
        double v = std::numeric_limits<double>::infinity();
        double t1 = 0.0, t2 = 0.0;
        std::uint64_t count = 0;
        bool lower = false;
    };
    std::array<CaseMin, 5> cases{};
    for (int i = 1; i <= m; ++i)
        for (int jj = 1; jj <= m; ++jj) {
            const double t1 = static_cast<double>(i) / m, t2 = static_cast<double>(jj) / m;
            const PairCost pc = eval_1302_threshold_pair(t1, t2);
            auto& c = cases[static_cast<std::size_t>(pc.case_id)];
            ++c.count;
            c.lower = c.lower || pc.lower_bound;
            if (pc.value < c.v) c = {pc.value, t1, t2, c.count, c.lower};
        }
    Json rows = Json::array();
    rows.push_back({{"strategy", "clocks"}, {"points", 1}, {"min_cost", eval_1302_expclocks()}, {"theta1", nullptr},
                    {"theta2", nullptr}, {"lower_bound_only", false}});
    double best = eval_1302_expclocks();
    for (int c = 1; c <= 4; ++c) {
        const auto& cm = cases[static_cast<std::size_t>(c)];
        if (cm.count == 0) continue;
        rows.push_back({{"strategy", "threshold_case_" + std::to_string(c)}, {"points", cm.count}, {"min_cost", cm.v},
                        {"theta1", cm.t1}, {"theta2", cm.t2}, {"lower_bound_only", cm.lower}});
        best = std::min(best, cm.v);
    }
    j["theta_grid"] = m;
    j["cost_table"] = rows;
    j["min_strategy_cost"] = best;
    j["target"] = consts::a1302::z;
    j["holds"] = best >= consts::a1302::z - 1e-9;
    if (!a.csv.empty()) write_csv(a.csv, rows);
    return j;
}

}  // namespace

Json run_adversary(const AdversaryArgs& a, const Context& ctx) {
    if (a.example == "1309") return adversary_1309(a, ctx);
    if (a.example == "1302") return adversary_1302(a, ctx);
    fail("usage_error", "--example must be 1309 or 1302");
}

Json run_estimate(const EstimateArgs& a, const Context& ctx) {
    static const char* mixtures[] = {"1309", "1302", "1296"};
    SchemeMixture mix;
    bool is_mixture = false;
    for (const char* m : mixtures)
        if (a.scheme == m) {
            mix = mixture_by_name(m);
            is_mixture = true;
        }
    std::optional<PiecewiseDensity> density;
    if (!is_mixture) {
        const SchemeKind kind = scheme_kind_from_string(a.scheme);
        Scheme s;
        switch (kind) {
            case SchemeKind::ExponentialClocks:
                if (!a.density.empty()) fail("usage_error", "--density does not apply to clocks");
                s = Scheme::clocks();
                break;
            case SchemeKind::SingleThreshold:
                density = density_from_spec(a.density.empty() ? "phi1309" : a.density);
                s = Scheme::single(*density);
                break;
            case SchemeKind::DescendingThresholds:
                density = density_from_spec(a.density.empty() ? "uniform:" + format_double(6.0 / 11.0) : a.density);
                s = Scheme::descending(*density);
                break;
            case SchemeKind::IndependentThresholds:
                density = density_from_spec(a.density.empty() ? "uniform:" + format_double(6.0 / 11.0) : a.density);
                s = Scheme::independent(*density);
                break;
        }
        mix = {to_string(kind), {{1.0, s}}};
    } else if (!a.density.empty()) {
        fail("usage_error", "--density does not apply to fixed mixtures");
    }
    const DensityEstimate e = estimate_density(mix, a.u1, a.u2, a.k, a.eps, a.samples, ctx.seed, ctx.threads);
    Json j = header("estimate", ctx);
    j["scheme"] = e.scheme;
    j["u1"] = e.u1;
    j["u2"] = e.u2;
    j["k"] = e.k;
    j["epsilon"] = e.epsilon;
    j["n"] = e.n;
    j["cuts"] = e.cuts;
    j["mean"] = e.mean;
    j["stderr"] = e.stderr_;
    j["tolerance"] = 3.0 * e.stderr_ + 10.0 * e.epsilon;
    Json refs = Json::array();
    const double lo = std::min(e.u1, e.u2), hi = std::max(e.u1, e.u2);
    if (!is_mixture && mix.entries.front().scheme.kind == SchemeKind::ExponentialClocks)
        refs.push_back({{"formula", "2-u1-u2"}, {"kind", "exact"}, {"value", density_expclocks(e.u1, e.u2)}});
    if (!is_mixture && mix.entries.front().scheme.kind == SchemeKind::SingleThreshold) {
        refs.push_back({{"formula", "phi(u1)/2+phi(u2)"}, {"kind", "upper_bound"}, {"value", density_single(lo, hi, *density)}});
        try {
            refs.push_back({{"formula", "worst_case_single"}, {"kind", "exact"},
                            {"value", density_single_worst_case(e.u1, e.u2, e.k, *density)}});
        } catch (const Error&) {
        }
    }
    if (!is_mixture && mix.entries.front().scheme.kind == SchemeKind::DescendingThresholds)
        refs.push_back({{"formula", "descending"}, {"kind", "upper_bound"}, {"value", density_descending(lo, hi, *density)}});
    j["references"] = refs;
    Json w = Json::array();
    for (const auto& s : e.warnings) w.push_back(s);
    j["warnings"] = w;
    return j;
}

Json run_pairwise(const PairwiseArgs& a, const Context& ctx) {
    const bool has_matrix = !a.matrix.empty(), has_mix = !a.realize.empty();
    if (has_matrix == has_mix) fail("usage_error", "pass exactly one of --matrix or --realize");
    Json j = header("pairwise", ctx);
    if (has_matrix) {
        auto in = open_in(a.matrix);
        const PairDistribution rho = read_pair_distribution(in);
        j["mode"] = "matrix";
        j["m"] = rho.m;
        const bool sym = rho.symmetric();
        j["symmetric"] = sym;
        if (sym) {
            const PsdResult p = psd_check(rho);
            j["psd"] = {{"is_psd", p.is_psd}, {"min_eigenvalue", p.min_eigenvalue}};
        }
        if (a.decompose) {
            if (!sym) fail("domain_error", "decomposition needs a symmetric matrix");
            const DecomposeResult r = try_decompose(rho, a.grid);
            const char* status = r.status == DecomposeStatus::Found ? "found" : r.status == DecomposeStatus::NotPsd ? "not_psd" : "not_found";
            Json d = {{"status", status}, {"grid", a.grid}, {"columns", r.columns}, {"residual", r.residual}};
            Json comps = Json::array();
            if (r.mixture)
                for (const auto& c : r.mixture->components) comps.push_back({{"weight", c.weight}, {"p", c.p}});
            d["components"] = comps;
            j["decompose"] = d;
        }
        return j;
    }
    auto in = open_in(a.realize);
    const ProductMixture mix = read_product_mixture(in);
    const PairDistribution rho = mix.pair_matrix();
    const auto samples = realize(mix, a.k, a.samples, ctx.seed, ctx.threads);
    double worst = 0.0;
    for (int i = 0; i < a.k; ++i)
        for (int t = i + 1; t < a.k; ++t) {
            const PairDistribution e = empirical_pair(samples, a.k, i, t, rho.m);
            for (std::size_t q = 0; q < e.p.size(); ++q) worst = std::max(worst, std::abs(e.p[q] - rho.p[q]));
        }
    j["mode"] = "realize";
    j["components"] = mix.components.size();
    j["m"] = rho.m;
    j["k"] = a.k;
    j["samples"] = a.samples;
    Json mat = Json::array();
    for (int r = 0; r < rho.m; ++r) {
        Json row = Json::array();
        for (int c = 0; c < rho.m; ++c) row.push_back(rho(r, c));
        mat.push_back(row);
    }
    j["pair_matrix"] = mat;
    j["max_pair_error"] = worst;
    j["error_bound"] = 5.0 / std::sqrt(static_cast<double>(a.samples));
    j["within_bound"] = worst <= 5.0 / std::sqrt(static_cast<double>(a.samples));
    const PsdResult p = psd_check(rho);
    j["psd"] = {{"is_psd", p.is_psd}, {"min_eigenvalue", p.min_eigenvalue}};
    return j;
}

}  // namespace mwc::cli
