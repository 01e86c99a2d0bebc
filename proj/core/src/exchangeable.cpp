#include "mwc/exchangeable.hpp"

#include "mwc/error.hpp"
#include "mwc/format.hpp"
#include "mwc/lp.hpp"
#include "mwc/parallel.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace mwc {

bool PairDistribution::symmetric(double tol) const {
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            if (std::abs((*this)(a, b) - (*this)(b, a)) > tol) return false;
    return true;
}

void PairDistribution::validate() const {
    if (m < 2) fail("domain_error", "pair distribution needs a domain of size >= 2");
    if (p.size() != static_cast<std::size_t>(m) * static_cast<std::size_t>(m))
        fail("domain_error", "pair distribution matrix has the wrong size");
    double s = 0.0;
    for (double x : p) {
        if (!(x >= 0.0) || !std::isfinite(x)) fail("domain_error", "pair distribution entries must be nonnegative");
        s += x;
    }
    if (std::abs(s - 1.0) > 1e-12) fail("domain_error", "pair distribution must sum to 1, got " + format_double(s));
}

void ProductMixture::validate() const {
    if (components.empty()) fail("domain_error", "product mixture has no components");
    const std::size_t m = components.front().p.size();
    if (m < 1) fail("domain_error", "component distribution is empty");
    double w = 0.0;
    for (const auto& c : components) {
        if (c.p.size() != m) fail("domain_error", "components have different domain sizes");
        if (!(c.weight >= 0.0)) fail("domain_error", "component weights must be nonnegative");
        w += c.weight;
        double s = 0.0;
        for (double x : c.p) {
            if (!(x >= 0.0)) fail("domain_error", "component probabilities must be nonnegative");
            s += x;
        }
        if (std::abs(s - 1.0) > 1e-12) fail("domain_error", "component distribution must sum to 1");
    }
    if (std::abs(w - 1.0) > 1e-12) fail("domain_error", "component weights must sum to 1");
}

PairDistribution ProductMixture::pair_matrix() const {
    validate();
    PairDistribution r;
    r.m = domain_size();
    r.p.assign(static_cast<std::size_t>(r.m * r.m), 0.0);
    for (const auto& c : components)
        for (int a = 0; a < r.m; ++a)
            for (int b = 0; b < r.m; ++b)
                r.p[static_cast<std::size_t>(a * r.m + b)] += c.weight * c.p[static_cast<std::size_t>(a)] * c.p[static_cast<std::size_t>(b)];
    return r;
}

namespace {

int draw_index(const std::vector<double>& probs, double u) {
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        if (u < acc) return static_cast<int>(i);
    }
    // rounding: last entry with positive mass
    for (std::size_t i = probs.size(); i-- > 0;)
        if (probs[i] > 0.0) return static_cast<int>(i);
    return 0;
}

}  // namespace

std::vector<int> realize(const ProductMixture& mix, int k, std::size_t n_samples, std::uint64_t seed, int threads) {
    mix.validate();
    if (k < 2) fail("domain_error", "realize needs k >= 2");
    std::vector<double> weights;
    for (const auto& c : mix.components) weights.push_back(c.weight);
    std::vector<int> out(n_samples * static_cast<std::size_t>(k));
    const RandomSource base(seed);
    constexpr std::size_t chunk = 4096;
    const std::size_t chunks = (n_samples + chunk - 1) / chunk;
    parallel_for(chunks, threads, [&](std::size_t c) {
        const std::size_t end = std::min(n_samples, (c + 1) * chunk);
        for (std::size_t s = c * chunk; s < end; ++s) {
            const RandomSource rng = base.split(s);
            const auto& comp = mix.components[static_cast<std::size_t>(draw_index(weights, rng.uniform(Stream::Select, 0)))];
            for (int t = 0; t < k; ++t)
                out[s * static_cast<std::size_t>(k) + static_cast<std::size_t>(t)] =
                    draw_index(comp.p, rng.uniform(Stream::Aux, static_cast<std::uint64_t>(t)));
        }
    });
    return out;
}

PairDistribution empirical_pair(const std::vector<int>& samples, int k, int i, int j, int m) {
    if (k < 2 || i < 0 || j < 0 || i >= k || j >= k || i == j) fail("domain_error", "invalid coordinate pair");
    if (samples.size() % static_cast<std::size_t>(k) != 0 || samples.empty()) fail("domain_error", "sample matrix has the wrong shape");
    const std::size_t n = samples.size() / static_cast<std::size_t>(k);
    std::vector<std::size_t> counts(static_cast<std::size_t>(m * m), 0);
    for (std::size_t s = 0; s < n; ++s) {
        const int a = samples[s * static_cast<std::size_t>(k) + static_cast<std::size_t>(i)];
        const int b = samples[s * static_cast<std::size_t>(k) + static_cast<std::size_t>(j)];
        if (a < 0 || b < 0 || a >= m || b >= m) fail("domain_error", "sample value outside the domain");
        ++counts[static_cast<std::size_t>(a * m + b)];
    }
    PairDistribution r;
    r.m = m;
    for (std::size_t c : counts) r.p.push_back(static_cast<double>(c) / static_cast<double>(n));
    return r;
}

PsdResult psd_check(const PairDistribution& rho) {
    rho.validate();
    if (!rho.symmetric()) fail("domain_error", "psd_check needs a symmetric matrix");
    Eigen::MatrixXd a(rho.m, rho.m);
    for (int i = 0; i < rho.m; ++i)
        for (int j = 0; j < rho.m; ++j) a(i, j) = 0.5 * (rho(i, j) + rho(j, i));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) fail("internal_error", "eigenvalue computation did not converge");
    PsdResult r;
    r.min_eigenvalue = es.eigenvalues().minCoeff();
    r.is_psd = r.min_eigenvalue >= -1e-10;
    return r;
}

namespace {

void compositions(int m, int r, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == m - 1) {
        int used = 0;
        for (int c : cur) used += c;
        cur.push_back(r - used);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    int used = 0;
    for (int c : cur) used += c;
    for (int c = 0; c <= r - used; ++c) {
        cur.push_back(c);
        compositions(m, r, cur, out);
        cur.pop_back();
    }
}

}  // namespace

DecomposeResult try_decompose(const PairDistribution& rho, int grid_resolution) {
    rho.validate();
    if (rho.m > 4) fail("domain_error", "try_decompose supports domains of size <= 4");
    if (grid_resolution < 1 || grid_resolution > 64) fail("domain_error", "grid resolution must lie in [1, 64]");
    DecomposeResult res;
    if (!rho.symmetric() || !psd_check(rho).is_psd) {
        res.status = DecomposeStatus::NotPsd;
        return res;
    }
    const int m = rho.m;
    std::vector<std::vector<int>> grid;
    std::vector<int> cur;
    compositions(m, grid_resolution, cur, grid);
    const std::size_t cols = grid.size();
    res.columns = cols;
    std::vector<std::pair<int, int>> entries;
    for (int a = 0; a < m; ++a)
        for (int b = a; b < m; ++b) entries.push_back({a, b});
    // variables: alpha per column, then (s+, s-) per entry
    const std::size_t nv = cols + 2 * entries.size();
    LinearProgram lp(nv);
    for (std::size_t e = 0; e < entries.size(); ++e) {
        lp.objective[cols + 2 * e] = lp.objective[cols + 2 * e + 1] = 1.0;
        std::vector<double> row(nv, 0.0);
        const auto [a, b] = entries[e];
        for (std::size_t c = 0; c < cols; ++c)
            row[c] = static_cast<double>(grid[c][static_cast<std::size_t>(a)] * grid[c][static_cast<std::size_t>(b)]) /
                     (static_cast<double>(grid_resolution) * grid_resolution);
        row[cols + 2 * e] = 1.0;
        row[cols + 2 * e + 1] = -1.0;
        lp.add_row(std::move(row), Relation::Equal, rho(a, b));
    }
    std::vector<double> norm(nv, 0.0);
    for (std::size_t c = 0; c < cols; ++c) norm[c] = 1.0;
    lp.add_row(std::move(norm), Relation::Equal, 1.0);
    LpSolution s = solve_lp(lp);
    if (s.status != LpStatus::Optimal) return res;
    ProductMixture mix;
    double wsum = 0.0;
    for (std::size_t c = 0; c < cols; ++c) {
        if (s.x[c] <= 1e-12) continue;
        ProductComponent comp;
        comp.weight = s.x[c];
        for (int v : grid[c]) comp.p.push_back(static_cast<double>(v) / grid_resolution);
        wsum += comp.weight;
        mix.components.push_back(std::move(comp));
    }
    if (mix.components.empty()) return res;
    for (auto& c : mix.components) c.weight /= wsum;
    PairDistribution back = mix.pair_matrix();
    double err = 0.0;
    for (std::size_t i = 0; i < back.p.size(); ++i) err = std::max(err, std::abs(back.p[i] - rho.p[i]));
    res.residual = err;
    if (err <= 1e-6) {
        res.status = DecomposeStatus::Found;
        res.mixture = std::move(mix);
    }
    return res;
}

PairDistribution threshold_pair_distribution(const Scheme& scheme, int bins) {
    if (bins < 2) fail("domain_error", "need at least 2 bins");
    if (scheme.kind == SchemeKind::ExponentialClocks) fail("domain_error", "exponential clocks draw no thresholds");
    const PiecewiseDensity& d = scheme.density;
    const double total = d.total();
    std::vector<double> q(static_cast<std::size_t>(bins));
    for (int i = 0; i < bins; ++i)
        q[static_cast<std::size_t>(i)] = d.integrate(static_cast<double>(i) / bins, static_cast<double>(i + 1) / bins) / total;
    double s = 0.0;
    for (double x : q) s += x;
    for (double& x : q) x /= s;
    PairDistribution r;
    r.m = bins;
    r.p.assign(static_cast<std::size_t>(bins * bins), 0.0);
    for (int a = 0; a < bins; ++a)
        for (int b = 0; b < bins; ++b) {
            const double v = scheme.kind == SchemeKind::SingleThreshold ? (a == b ? q[static_cast<std::size_t>(a)] : 0.0)
                                                                        : q[static_cast<std::size_t>(a)] * q[static_cast<std::size_t>(b)];
            r.p[static_cast<std::size_t>(a * bins + b)] = v;
        }
    return r;
}

namespace {

struct Token {
    std::string text;
    int line = 0;
};

std::vector<Token> numeric_tokens(std::istream& in) {
    std::vector<Token> tok;
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ss(line);
        for (std::string t; ss >> t;) tok.push_back({t, no});
    }
    return tok;
}

double number_at(const Token& t) {
    try {
        return parse_double(t.text);
    } catch (const Error& e) {
        fail("parse_error", "line " + std::to_string(t.line) + ": " + e.what());
    }
}

long long integer_at(const Token& t) {
    try {
        return parse_int(t.text);
    } catch (const Error& e) {
        fail("parse_error", "line " + std::to_string(t.line) + ": " + e.what());
    }
}

int last_line(const std::vector<Token>& tok) { return tok.empty() ? 0 : tok.back().line; }

}  // namespace

PairDistribution read_pair_distribution(std::istream& in) {
    auto tok = numeric_tokens(in);
    if (tok.empty()) fail("parse_error", "line 1: empty matrix file");
    const long long m = integer_at(tok[0]);
    if (m < 2 || m > 4096) fail("parse_error", "line " + std::to_string(tok[0].line) + ": matrix size out of range");
    if (tok.size() != static_cast<std::size_t>(1 + m * m))
        fail("parse_error", "line " + std::to_string(last_line(tok)) + ": expected " + std::to_string(m * m) +
                                " entries, found " + std::to_string(tok.size() - 1));
    PairDistribution r;
    r.m = static_cast<int>(m);
    for (std::size_t i = 1; i < tok.size(); ++i) r.p.push_back(number_at(tok[i]));
    r.validate();
    return r;
}

void write_pair_distribution(std::ostream& out, const PairDistribution& rho) {
    out << rho.m << '\n';
    for (int a = 0; a < rho.m; ++a) {
        for (int b = 0; b < rho.m; ++b) out << (b ? " " : "") << format_double(rho(a, b));
        out << '\n';
    }
}

ProductMixture read_product_mixture(std::istream& in) {
    auto tok = numeric_tokens(in);
    if (tok.size() < 2) fail("parse_error", "line 1: expected 'r m' header");
    const long long r = integer_at(tok[0]), m = integer_at(tok[1]);
    if (r < 1 || m < 1 || r > 100000 || m > 4096)
        fail("parse_error", "line " + std::to_string(tok[0].line) + ": mixture header out of range");
    if (tok.size() != static_cast<std::size_t>(2 + r * (m + 1)))
        fail("parse_error", "line " + std::to_string(last_line(tok)) + ": mixture body has the wrong number of entries");
    ProductMixture mix;
    std::size_t at = 2;
    for (long long s = 0; s < r; ++s) {
        ProductComponent c;
        c.weight = number_at(tok[at++]);
        for (long long a = 0; a < m; ++a) c.p.push_back(number_at(tok[at++]));
        mix.components.push_back(std::move(c));
    }
    mix.validate();
    return mix;
}

void write_product_mixture(std::ostream& out, const ProductMixture& mix) {
    out << mix.components.size() << ' ' << mix.domain_size() << '\n';
    for (const auto& c : mix.components) {
        out << format_double(c.weight);
        for (double x : c.p) out << ' ' << format_double(x);
        out << '\n';
    }
}

}  // namespace mwc
