#include "mwc/optimize.hpp"

#include "mwc/constants.hpp"
#include "mwc/error.hpp"
#include "mwc/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mwc {

void ParamSearchConfig::validate() const {
    if (!(b > 0.0 && b <= 1.0)) fail("domain_error", "b must lie in (0, 1]");
    if (phi_bins < 8) fail("domain_error", "phi_bins must be at least 8");
    if (!(grid_spacing > 0.0 && grid_spacing <= 1.0 / 32.0 + 1e-15))
        fail("domain_error", "constraint grid spacing must be at most 1/32");
    const double steps = 1.0 / grid_spacing;
    if (std::abs(steps - std::round(steps)) > 1e-9)
        fail("domain_error", "constraint grid spacing must divide 1");
    if (include_cases.empty()) fail("domain_error", "no cases selected");
}

namespace {

std::vector<double> merged_axis(int steps, double extra) {
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(steps) + 2);
    for (int j = 0; j <= steps; ++j) v.push_back(static_cast<double>(j) / steps);
    v.push_back(extra);
    std::sort(v.begin(), v.end());
    std::vector<double> out;
    for (double x : v)
        if (out.empty() || x - out.back() > 1e-12) out.push_back(x);
    return out;
}

// Bin j covers (edges[j], edges[j+1]]; -1 for u = 0.
int bin_of(const std::vector<double>& edges, double u) {
    if (u <= 0.0) return -1;
    auto it = std::lower_bound(edges.begin(), edges.end(), u);
    int j = static_cast<int>(it - edges.begin()) - 1;
    return std::clamp(j, 0, static_cast<int>(edges.size()) - 2);
}

bool selected(const ParamSearchConfig& cfg, Case1296 c) {
    return std::find(cfg.include_cases.begin(), cfg.include_cases.end(), c) != cfg.include_cases.end();
}

}  // namespace

ParamLp build_param_lp_1296(const ParamSearchConfig& cfg) {
    cfg.validate();
    ParamLp out;
    out.bin_edges = merged_axis(cfg.phi_bins, cfg.b);
    out.axis = merged_axis(static_cast<int>(std::lround(1.0 / cfg.grid_spacing)), cfg.b);
    const std::size_t nb = out.bin_edges.size() - 1;
    const std::size_t nv = kVarBins + nb;
    LinearProgram lp(nv);
    lp.objective[kVarZ] = 1.0;
    if (!cfg.use_descending) lp.upper[kVarP3] = 0.0;
    if (!cfg.use_independent) lp.upper[kVarP4] = 0.0;
    for (double u1 : out.axis) {
        for (double u2 : out.axis) {
            if (u2 < u1 || u1 + u2 > 1.0 + 1e-12) continue;
            const double v2 = std::min(u2, 1.0 - u1);
            ++out.num_points;
            for (Case1296 c : {Case1296::I, Case1296::II, Case1296::III, Case1296::IV, Case1296::V}) {
                if (!selected(cfg, c) || !case_applicable_1296(u1, v2, cfg.b, c)) continue;
                const CaseTerms1296 t = case_terms_1296(u1, v2, cfg.b, c);
                std::vector<double> row(nv, 0.0);
                row[kVarZ] = -1.0;
                row[kVarP1] = t.p1;
                row[kVarP3] = cfg.use_descending ? t.p3 : 0.0;
                row[kVarP4] = cfg.use_independent ? t.p4 : 0.0;
                if (int j = bin_of(out.bin_edges, u1); j >= 0) row[kVarBins + j] += t.phi_u1;
                if (int j = bin_of(out.bin_edges, v2); j >= 0) row[kVarBins + j] += t.phi_u2;
                lp.add_row(std::move(row), Relation::LessEq, 0.0);
            }
        }
    }
    std::vector<double> norm(nv, 0.0);
    norm[kVarP1] = norm[kVarP3] = norm[kVarP4] = 1.0;
    for (std::size_t j = 0; j < nb; ++j) norm[kVarBins + j] = out.bin_edges[j + 1] - out.bin_edges[j];
    lp.add_row(std::move(norm), Relation::Equal, 1.0);
    out.lp = std::move(lp);
    return out;
}

ParamSearchResult solve_param_lp_1296(const ParamSearchConfig& cfg) {
    ParamLp plp = build_param_lp_1296(cfg);
    LpSolution s = solve_lp(plp.lp);
    if (s.status != LpStatus::Optimal)
        fail("internal_error", "parameter LP ended with status " + to_string(s.status));
    ParamSearchResult r;
    r.b = cfg.b;
    r.z_star = s.x[kVarZ];
    r.p1 = s.x[kVarP1];
    r.p3 = s.x[kVarP3];
    r.p4 = s.x[kVarP4];
    r.lp_iterations = s.iterations;
    std::vector<Piece> pieces;
    double p2 = 0.0;
    for (std::size_t j = 0; j + 1 < plp.bin_edges.size(); ++j) {
        Piece p;
        p.lo = plp.bin_edges[j];
        p.hi = plp.bin_edges[j + 1];
        p.c = {std::max(0.0, s.x[kVarBins + j]), 0.0, 0.0, 0.0};
        p2 += p.c[0] * (p.hi - p.lo);
        pieces.push_back(p);
    }
    r.p2 = p2;
    r.phi_tilde = PiecewiseDensity(std::move(pieces), p2, 1e-9);
    return r;
}

std::vector<ParamSearchResult> scan_param_1296(const ParamSearchConfig& cfg, const std::vector<double>& bs,
                                               int threads) {
    std::vector<ParamSearchResult> out(bs.size());
    parallel_for(bs.size(), threads, [&](std::size_t i) {
        ParamSearchConfig c = cfg;
        c.b = bs[i];
        out[i] = solve_param_lp_1296(c);
    });
    return out;
}

std::vector<double> published_param_vector(const ParamLp& plp, double z) {
    namespace c = consts::a1296;
    const PiecewiseDensity phi = phi_tilde_1296();
    std::vector<double> x(plp.lp.num_vars(), 0.0);
    x[kVarZ] = z;
    x[kVarP1] = c::p1;
    x[kVarP3] = c::p3;
    x[kVarP4] = c::p4;
    for (std::size_t j = 0; j + 1 < plp.bin_edges.size(); ++j) {
        const double lo = plp.bin_edges[j], hi = plp.bin_edges[j + 1];
        x[kVarBins + j] = phi.integrate(lo, hi) / (hi - lo);
    }
    return x;
}

namespace {

double activity(const LpRow& row, const std::vector<double>& x) {
    double s = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) s += row.coeffs[j] * x[j];
    return s;
}

}  // namespace

double max_row_violation(const ParamLp& plp, const std::vector<double>& x) {
    if (x.size() != plp.lp.num_vars()) fail("domain_error", "parameter vector has the wrong width");
    double worst = -kInf;
    for (const LpRow& row : plp.lp.rows)
        if (row.rel == Relation::LessEq) worst = std::max(worst, activity(row, x) - row.rhs);
    return worst;
}

double normalization_residual(const ParamLp& plp, const std::vector<double>& x) {
    if (x.size() != plp.lp.num_vars()) fail("domain_error", "parameter vector has the wrong width");
    double worst = 0.0;
    for (const LpRow& row : plp.lp.rows)
        if (row.rel == Relation::Equal) worst = std::max(worst, std::abs(activity(row, x) - row.rhs));
    return worst;
}

double param_leakage(const ParamSearchResult& r, const ParamSearchConfig& cfg, int refine) {
    if (refine < 1) fail("domain_error", "refine factor must be positive");
    Mixture1296 m{r.p1, r.p3, r.p4, r.b, r.phi_tilde};
    const int steps = static_cast<int>(std::lround(refine / cfg.grid_spacing));
    double best = -kInf;
    for (int i = 0; 2 * i <= steps; ++i) {
        const double u1 = static_cast<double>(i) / steps;
        for (int j = i; i + j <= steps; ++j) {
            const double u2 = static_cast<double>(j) / steps;
            for (Case1296 c : cfg.include_cases)
                if (case_applicable_1296(u1, u2, r.b, c)) best = std::max(best, density_mixture_1296(u1, u2, c, m));
        }
    }
    return best;
}

namespace {

struct Pt {
    double x, y;
};

// Clip a convex polygon to u1 + u2 <= 1.
std::vector<Pt> clip_simplex(const std::vector<Pt>& poly) {
    std::vector<Pt> out;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Pt& p = poly[i];
        const Pt& q = poly[(i + 1) % n];
        const double fp = p.x + p.y - 1.0, fq = q.x + q.y - 1.0;
        if (fp <= 0) out.push_back(p);
        if ((fp < 0 && fq > 0) || (fp > 0 && fq < 0)) {
            const double t = fp / (fp - fq);
            out.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
        }
    }
    return out;
}

}  // namespace

LinearProgram build_param_lp_1302(double b, int extra_grid) {
    if (!(b > 0.0 && b < 1.0)) fail("domain_error", "b must lie in (0, 1)");
    if (extra_grid < 0) fail("domain_error", "extra grid must be nonnegative");
    // variables: z, p1, p3, a~, c~, d~
    LinearProgram lp(6);
    lp.objective[0] = 1.0;
    const std::vector<Pt> regions[3] = {
        {{0, 0}, {b, b}, {0, b}},
        {{0, b}, {b, b}, {b, 1}, {0, 1}},
        {{b, b}, {1, 1}, {b, 1}},
    };
    auto add = [&](double u1, double u2, int c) {
        if (u1 > u2) std::swap(u1, u2);
        u1 = std::max(0.0, u1);
        u2 = std::min(u2, 1.0 - u1);
        if (!case_applicable_1302(u1, u2, b, c)) return;
        const CaseTerms1302 t = case_terms_1302(u1, u2, b, c);
        lp.add_row({-1.0, t.p1, t.p3, t.a_t, t.c_t, t.d_t}, Relation::LessEq, 0.0);
    };
    for (int c = 1; c <= 3; ++c) {
        for (const Pt& p : clip_simplex(regions[c - 1])) add(p.x, p.y, c);
        if (extra_grid > 0) {
            for (int i = 0; i <= extra_grid; ++i)
                for (int j = i; i + j <= extra_grid; ++j) {
                    const double u1 = static_cast<double>(i) / extra_grid, u2 = static_cast<double>(j) / extra_grid;
                    if (case_applicable_1302(u1, u2, b, c)) add(u1, u2, c);
                }
        }
    }
    lp.add_row({0.0, 1.0, 1.0, 0.5 * b * b, 0.5 * (1.0 - b * b), 1.0 - b}, Relation::Equal, 1.0);
    return lp;
}

Param1302Result solve_param_lp_1302(double b, int extra_grid) {
    LinearProgram lp = build_param_lp_1302(b, extra_grid);
    LpSolution s = solve_lp(lp);
    if (s.status != LpStatus::Optimal)
        fail("internal_error", "parameter LP ended with status " + to_string(s.status));
    Param1302Result r;
    r.b = b;
    r.z_star = s.x[0];
    r.p1 = s.x[1];
    r.p3 = s.x[2];
    r.a_t = s.x[3];
    r.c_t = s.x[4];
    r.d_t = s.x[5];
    r.p2 = 0.5 * b * b * r.a_t + 0.5 * (1.0 - b * b) * r.c_t + (1.0 - b) * r.d_t;
    r.lp_iterations = s.iterations;
    return r;
}

std::vector<Param1302Result> scan_param_1302(const std::vector<double>& bs, int threads) {
    std::vector<Param1302Result> out(bs.size());
    parallel_for(bs.size(), threads, [&](std::size_t i) { out[i] = solve_param_lp_1302(bs[i]); });
    return out;
}

namespace {

double a_of_b(double b) { return 4.0 / (1.0 + 2.0 * b - b * b); }
double bound_of_b(double b) {
    const double a = a_of_b(b);
    return (2.0 + b) * a / (2.0 + a);
}
// Sign of d/db bound_of_b.
double slope_sign(double b) { return (3.0 + 2.0 * b - b * b) - (2.0 + b) * (2.0 - 2.0 * b); }

}  // namespace

ClosedForm1309 minimize_1309_closed_form() {
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = 0.0, hi = 1.0;
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = bound_of_b(x1), f2 = bound_of_b(x2);
    while (hi - lo > 1e-6) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = bound_of_b(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = bound_of_b(x2);
        }
    }
    lo = std::max(0.0, lo - 1e-6);
    hi = std::min(1.0, hi + 1e-6);
    for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        (slope_sign(mid) < 0 ? lo : hi) = mid;
    }
    ClosedForm1309 r;
    r.b = 0.5 * (lo + hi);
    r.a = a_of_b(r.b);
    r.p = r.a / (2.0 + r.a);
    r.factor = bound_of_b(r.b);
    r.constraint_residual = 0.25 * r.a * (-r.b * r.b + 2.0 * r.b + 1.0) - 1.0;
    return r;
}

}  // namespace mwc
