#include "mwc/ckr.hpp"

#include "mwc/error.hpp"
#include "mwc/format.hpp"
#include "mwc/parallel.hpp"
#include "mwc/rng.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

namespace mwc {

LinearProgram build_ckr_lp(const WeightedGraph& graph) {
    WeightedGraph g = graph;
    g.normalize();
    const auto n = static_cast<std::size_t>(g.n), k = static_cast<std::size_t>(g.k()), m = g.edges.size();
    const std::size_t nx = n * k;
    LinearProgram lp(nx + m * k);
    std::vector<int> term_of(n, -1);
    for (std::size_t s = 0; s < k; ++s) term_of[static_cast<std::size_t>(g.terminals[s])] = static_cast<int>(s);
    for (std::size_t v = 0; v < n; ++v) {
        if (term_of[v] >= 0) {
            for (std::size_t i = 0; i < k; ++i) {
                const double val = static_cast<int>(i) == term_of[v] ? 1.0 : 0.0;
                lp.lower[v * k + i] = lp.upper[v * k + i] = val;
            }
            continue;
        }
        std::vector<double> row(lp.num_vars(), 0.0);
        for (std::size_t i = 0; i < k; ++i) row[v * k + i] = 1.0;
        lp.add_row(std::move(row), Relation::Equal, 1.0);
    }
    for (std::size_t e = 0; e < m; ++e) {
        const auto u = static_cast<std::size_t>(g.edges[e].u), v = static_cast<std::size_t>(g.edges[e].v);
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t y = nx + e * k + i;
            lp.objective[y] = 0.5 * g.edges[e].w;
            for (double sgn : {1.0, -1.0}) {
                std::vector<double> row(lp.num_vars(), 0.0);
                row[y] = 1.0;
                row[u * k + i] = -sgn;
                row[v * k + i] = sgn;
                lp.add_row(std::move(row), Relation::GreaterEq, 0.0);
            }
        }
    }
    return lp;
}

std::uint64_t embedding_hash(const FractionalEmbedding& emb) {
    std::uint64_t h = splitmix64(static_cast<std::uint64_t>(emb.n()) * 31u + static_cast<std::uint64_t>(emb.k()));
    for (const SimplexPoint& p : emb.points)
        for (double c : p.coords()) h = splitmix64(h ^ std::bit_cast<std::uint64_t>(c));
    for (int t : emb.terminals) h = splitmix64(h ^ static_cast<std::uint64_t>(t));
    return h;
}

double embedding_cost(const WeightedGraph& g, const FractionalEmbedding& emb) {
    if (emb.n() != g.n) fail("domain_error", "embedding size does not match the graph");
    double total = 0.0;
    for (const auto& e : g.edges) {
        const auto& a = emb.points[static_cast<std::size_t>(e.u)];
        const auto& b = emb.points[static_cast<std::size_t>(e.v)];
        double l1 = 0.0;
        for (int i = 0; i < a.k(); ++i) l1 += std::abs(a[static_cast<std::size_t>(i)] - b[static_cast<std::size_t>(i)]);
        total += 0.5 * e.w * l1;
    }
    return total;
}

RelaxationResult solve_ckr(const WeightedGraph& graph) {
    WeightedGraph g = graph;
    g.normalize();
    LinearProgram lp = build_ckr_lp(g);
    LpSolution s = solve_lp(lp);
    if (s.status == LpStatus::Infeasible || s.status == LpStatus::Unbounded)
        fail("internal_error", "CKR relaxation reported " + to_string(s.status));
    if (s.status != LpStatus::Optimal) fail("internal_error", "LP solver hit its iteration limit");
    const auto k = static_cast<std::size_t>(g.k());
    RelaxationResult r;
    r.lp_iterations = s.iterations;
    r.embedding.terminals = g.terminals;
    for (int v = 0; v < g.n; ++v) {
        std::vector<double> c(k);
        for (std::size_t i = 0; i < k; ++i) c[i] = s.x[static_cast<std::size_t>(v) * k + i];
        r.embedding.points.push_back(SimplexPoint::make(std::move(c)));
    }
    r.lp_value = embedding_cost(g, r.embedding);
    r.embedding_hash = embedding_hash(r.embedding);
    return r;
}

namespace {

double sorted_sum(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

double canonical_cut_weight(const WeightedGraph& g, const Labeling& lab) {
    std::vector<double> cut;
    for (const auto& e : g.edges)
        if (lab.assignment[static_cast<std::size_t>(e.u)] != lab.assignment[static_cast<std::size_t>(e.v)])
            cut.push_back(e.w);
    return sorted_sum(std::move(cut));
}

}  // namespace

BruteForceResult brute_force_opt(const WeightedGraph& graph) {
    WeightedGraph g = graph;
    g.normalize();
    const int k = g.k();
    if (g.n - k > 14) fail("domain_error", "brute force requires n - k <= 14");
    std::vector<int> label(static_cast<std::size_t>(g.n), -1);
    for (int s = 0; s < k; ++s) label[static_cast<std::size_t>(g.terminals[static_cast<std::size_t>(s)])] = s;
    std::vector<int> free;
    for (int v = 0; v < g.n; ++v)
        if (label[static_cast<std::size_t>(v)] < 0) free.push_back(v);
    std::vector<int> rank(static_cast<std::size_t>(g.n), -1);  // position in free, -1 for terminals
    for (std::size_t i = 0; i < free.size(); ++i) rank[static_cast<std::size_t>(free[i])] = static_cast<int>(i);
    // back[i]: edges from free[i] to terminals or earlier free vertices
    std::vector<std::vector<std::pair<int, double>>> back(free.size());
    double base = 0.0;
    for (const auto& e : g.edges) {
        const int ru = rank[static_cast<std::size_t>(e.u)], rv = rank[static_cast<std::size_t>(e.v)];
        if (ru < 0 && rv < 0) {
            if (label[static_cast<std::size_t>(e.u)] != label[static_cast<std::size_t>(e.v)]) base += e.w;
        } else if (ru >= rv) {
            back[static_cast<std::size_t>(ru)].push_back({e.v, e.w});
        } else {
            back[static_cast<std::size_t>(rv)].push_back({e.u, e.w});
        }
    }
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> best_label;
    std::vector<double> partial(free.size() + 1, 0.0);
    partial[0] = base;
    std::vector<int> choice(free.size(), -1);
    std::size_t depth = 0;
    if (free.empty()) {
        best = base;
        best_label = label;
    }
    while (!free.empty()) {
        int& c = choice[depth];
        ++c;
        if (c >= k) {
            label[static_cast<std::size_t>(free[depth])] = -1;
            c = -1;
            if (depth == 0) break;
            --depth;
            continue;
        }
        const int v = free[depth];
        label[static_cast<std::size_t>(v)] = c;
        double cost = partial[depth];
        for (const auto& [u, w] : back[depth])
            if (label[static_cast<std::size_t>(u)] != c) cost += w;
        if (cost >= best) continue;
        if (depth + 1 == free.size()) {
            best = cost;
            best_label = label;
            continue;
        }
        partial[depth + 1] = cost;
        ++depth;
    }
    BruteForceResult r;
    r.labeling.assignment = best_label;
    r.weight = canonical_cut_weight(g, r.labeling);
    return r;
}

RoundingReport round_embedding(const WeightedGraph& graph, const RelaxationResult& rel, const SchemeMixture& mix,
                               std::size_t trials, std::uint64_t seed, int threads) {
    if (trials < 1) fail("domain_error", "trials must be at least 1");
    WeightedGraph g = graph;
    g.normalize();
    mix.validate();
    std::vector<double> cuts(trials);
    std::vector<Labeling> labels(trials);
    const RandomSource base(seed);
    parallel_for(trials, threads, [&](std::size_t t) {
        Labeling lab = run_mixture(mix, rel.embedding, base.split(t));
        if (!lab.complete() || !separates_terminals(lab, g.terminals))
            fail("internal_error", "rounding produced an infeasible labeling");
        cuts[t] = canonical_cut_weight(g, lab);
        labels[t] = std::move(lab);
    });
    RoundingReport r;
    r.trials = trials;
    r.lp_value = rel.lp_value;
    r.embedding_hash = rel.embedding_hash;
    std::size_t best = 0;
    double sum = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        sum += cuts[t];
        if (cuts[t] < cuts[best]) best = t;
    }
    r.best_cut = cuts[best];
    r.best_labeling = labels[best];
    r.mean_cut = sum / static_cast<double>(trials);
    double ss = 0.0;
    for (double c : cuts) ss += (c - r.mean_cut) * (c - r.mean_cut);
    r.stddev_cut = trials > 1 ? std::sqrt(ss / static_cast<double>(trials - 1)) : 0.0;
    if (r.lp_value > 0.0) {
        r.ratio_mean = r.mean_cut / r.lp_value;
        r.ratio_best = r.best_cut / r.lp_value;
    } else {
        r.ratio_mean = r.ratio_best = r.mean_cut > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
    }
    return r;
}

RoundingReport round_and_report(const WeightedGraph& g, const SchemeMixture& mix, std::size_t trials,
                                std::uint64_t seed, int threads) {
    return round_embedding(g, solve_ckr(g), mix, trials, seed, threads);
}

WeightedGraph random_graph(int n, int k, double edge_prob, std::uint64_t seed) {
    if (k < 2 || k > n) fail("domain_error", "need 2 <= k <= n");
    if (!(edge_prob >= 0.0 && edge_prob <= 1.0)) fail("domain_error", "edge probability must lie in [0, 1]");
    WeightedGraph g;
    g.n = n;
    for (int t = 0; t < k; ++t) g.terminals.push_back(t);
    const RandomSource rng(seed);
    std::uint64_t idx = 0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            const double coin = rng.uniform(Stream::Aux, idx++);
            const double w = 1.0 - rng.uniform(Stream::Aux, idx++);
            if (u < k && v < k) continue;
            if (coin < edge_prob) g.edges.push_back({u, v, w});
        }
    return g;
}

WeightedGraph read_graph(std::istream& in) {
    WeightedGraph g;
    bool header = false;
    long long m = 0, k = 0;
    std::vector<int> terms;
    std::string line;
    std::size_t lineno = 0;
    auto err = [&](const std::string& msg) { fail("parse_error", "line " + std::to_string(lineno) + ": " + msg); };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ss(line);
        std::vector<std::string> tok;
        for (std::string t; ss >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        try {
            if (tok[0] == "p") {
                if (header) err("duplicate header");
                if (tok.size() != 5 || tok[1] != "mwc") err("expected 'p mwc <n> <m> <k>'");
                const long long n = parse_int(tok[2]);
                m = parse_int(tok[3]);
                k = parse_int(tok[4]);
                if (n < 1 || n > 10'000'000 || m < 0 || k < 2 || k > n) err("header counts out of range");
                g.n = static_cast<int>(n);
                terms.assign(static_cast<std::size_t>(k), -1);
                header = true;
            } else if (!header) {
                err("expected header before records");
            } else if (tok[0] == "t") {
                if (tok.size() != 3) err("expected 't <vertex> <terminal-index>'");
                const long long v = parse_int(tok[1]), s = parse_int(tok[2]);
                if (v < 1 || v > g.n) err("terminal vertex out of range");
                if (s < 1 || s > k) err("terminal index out of range");
                if (terms[static_cast<std::size_t>(s - 1)] >= 0) err("terminal index repeated");
                terms[static_cast<std::size_t>(s - 1)] = static_cast<int>(v - 1);
            } else if (tok[0] == "e") {
                if (tok.size() != 4) err("expected 'e <u> <v> <w>'");
                const long long u = parse_int(tok[1]), v = parse_int(tok[2]);
                const double w = parse_double(tok[3]);
                if (u < 1 || u > g.n || v < 1 || v > g.n) err("edge endpoint out of range");
                if (u == v) err("self-loop");
                if (!(w > 0.0) || !std::isfinite(w)) err("edge weight must be positive and finite");
                g.edges.push_back({static_cast<int>(u - 1), static_cast<int>(v - 1), w});
            } else {
                err("unknown record '" + tok[0] + "'");
            }
        } catch (const Error& e) {
            if (std::string(e.what()).rfind("line ", 0) == 0) throw;
            err(e.what());
        }
    }
    if (!header) fail("parse_error", "missing 'p mwc' header");
    if (static_cast<long long>(g.edges.size()) != m)
        fail("parse_error", "header declares " + std::to_string(m) + " edges, found " + std::to_string(g.edges.size()));
    for (std::size_t s = 0; s < terms.size(); ++s)
        if (terms[s] < 0) fail("parse_error", "terminal " + std::to_string(s + 1) + " missing");
    g.terminals = terms;
    WeightedGraph check = g;
    check.normalize();
    return g;
}

void write_graph(std::ostream& out, const WeightedGraph& g) {
    out << "p mwc " << g.n << ' ' << g.edges.size() << ' ' << g.k() << '\n';
    for (std::size_t s = 0; s < g.terminals.size(); ++s) out << "t " << g.terminals[s] + 1 << ' ' << s + 1 << '\n';
    for (const auto& e : g.edges) out << "e " << e.u + 1 << ' ' << e.v + 1 << ' ' << format_double(e.w) << '\n';
}

}  // namespace mwc
