#include "mwc/lp.hpp"

#include "mwc/error.hpp"
#include "mwc/format.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace mwc {

std::string to_string(LpStatus s) {
    switch (s) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
        case LpStatus::IterationLimit: return "iteration_limit";
    }
    return "unknown";
}

void LinearProgram::validate() const {
    const std::size_t n = objective.size();
    if (lower.size() != n || upper.size() != n)
        fail("domain_error", "bound vectors do not match the objective width");
    for (std::size_t j = 0; j < n; ++j) {
        if (!std::isfinite(objective[j])) fail("domain_error", "non-finite objective coefficient");
        if (std::isnan(lower[j]) || std::isnan(upper[j]) || lower[j] > upper[j] ||
            lower[j] == kInf || upper[j] == -kInf)
            fail("domain_error", "invalid bounds for variable " + std::to_string(j + 1));
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].coeffs.size() != n)
            fail("domain_error", "row " + std::to_string(i + 1) + " has width " +
                                     std::to_string(rows[i].coeffs.size()) + ", expected " +
                                     std::to_string(n));
        if (!std::isfinite(rows[i].rhs))
            fail("domain_error", "row " + std::to_string(i + 1) + " has a non-finite rhs");
        for (double a : rows[i].coeffs)
            if (!std::isfinite(a))
                fail("domain_error", "row " + std::to_string(i + 1) + " has a non-finite coefficient");
    }
}

namespace {

// Condensed tableau: basic[i] = sum_j T(i,j) * nonbasic[j]. Logical variable n+i equals row i.
class Simplex {
public:
    Simplex(std::size_t n, std::size_t m, std::vector<double> a, std::vector<double> lo,
            std::vector<double> hi, std::vector<double> cost, const LpOptions& opt)
        : n_(n), m_(m), a_(std::move(a)), lo_(std::move(lo)), hi_(std::move(hi)),
          cost_(std::move(cost)), opt_(opt) {
        t_ = a_;
        head_.resize(m_);
        nonb_.resize(n_);
        val_.assign(n_ + m_, 0.0);
        for (std::size_t i = 0; i < m_; ++i) head_[i] = static_cast<int>(n_ + i);
        for (std::size_t j = 0; j < n_; ++j) {
            nonb_[j] = static_cast<int>(j);
            if (std::isfinite(lo_[j])) val_[j] = lo_[j];
            else if (std::isfinite(hi_[j])) val_[j] = hi_[j];
        }
        max_iter_ = opt_.max_iterations ? opt_.max_iterations : 100 * (m_ + n_) + 10000;
        bland_after_ = 5 * (m_ + n_);
    }

    LpStatus run() {
        std::size_t since_refactor = 0;
        std::vector<char> rejected(n_, 0);
        std::vector<double> cb(m_), d(n_);
        while (true) {
            if (since_refactor >= opt_.refactor_every) {
                refactor();
                since_refactor = 0;
            }
            compute_basics();
            bool phase1 = false;
            for (std::size_t i = 0; i < m_; ++i) {
                int v = head_[i];
                double x = val_[v];
                if (x < lo_[v] - opt_.feas_tol) { cb[i] = -1.0; phase1 = true; }
                else if (x > hi_[v] + opt_.feas_tol) { cb[i] = 1.0; phase1 = true; }
                else cb[i] = 0.0;
            }
            if (!phase1)
                for (std::size_t i = 0; i < m_; ++i) cb[i] = cost_[head_[i]];
            for (std::size_t j = 0; j < n_; ++j) d[j] = phase1 ? 0.0 : cost_[nonb_[j]];
            for (std::size_t i = 0; i < m_; ++i) {
                if (cb[i] == 0.0) continue;
                const double* row = &t_[i * n_];
                for (std::size_t j = 0; j < n_; ++j) d[j] += cb[i] * row[j];
            }
            const bool bland = iterations_ >= bland_after_;
            int q = -1, dir = 0;
            double best = 0.0;
            for (std::size_t j = 0; j < n_; ++j) {
                if (rejected[j]) continue;
                int v = nonb_[j];
                bool can_inc = val_[v] < hi_[v];
                bool can_dec = val_[v] > lo_[v];
                int dj = 0;
                if (d[j] < -opt_.opt_tol && can_inc) dj = 1;
                else if (d[j] > opt_.opt_tol && can_dec) dj = -1;
                if (!dj) continue;
                if (bland) {
                    if (q < 0 || v < nonb_[q]) { q = static_cast<int>(j); dir = dj; }
                } else if (std::abs(d[j]) > best) {
                    best = std::abs(d[j]);
                    q = static_cast<int>(j);
                    dir = dj;
                }
            }
            if (q < 0) {
                if (since_refactor > 0) {
                    refactor();
                    since_refactor = 0;
                    std::fill(rejected.begin(), rejected.end(), 0);
                    continue;
                }
                return phase1 ? LpStatus::Infeasible : LpStatus::Optimal;
            }
            if (iterations_ >= max_iter_) return LpStatus::IterationLimit;

            int r = -1;
            double step = 0.0;
            int vq = nonb_[q];
            double own = (dir > 0) ? hi_[vq] - val_[vq] : val_[vq] - lo_[vq];
            ratio_test(static_cast<std::size_t>(q), dir, bland, r, step);
            if (r < 0 && !std::isfinite(own)) {
                if (phase1) {
                    rejected[q] = 1;
                    continue;
                }
                if (since_refactor > 0) {
                    refactor();
                    since_refactor = 0;
                    continue;
                }
                return LpStatus::Unbounded;
            }
            ++iterations_;
            std::fill(rejected.begin(), rejected.end(), 0);
            if (r < 0 || own <= step) {
                val_[vq] = (dir > 0) ? hi_[vq] : lo_[vq];
                continue;
            }
            int leaving = head_[r];
            double target = leaving_bound(static_cast<std::size_t>(r), dir * t_[r * n_ + q]);
            pivot(static_cast<std::size_t>(r), static_cast<std::size_t>(q));
            val_[leaving] = target;
            ++since_refactor;
        }
    }

    std::size_t iterations() const { return iterations_; }
    const std::vector<double>& values() const { return val_; }

    // Reduced costs of the nonbasic logicals give d(objective)/d(row activity).
    std::vector<double> row_duals() const {
        std::vector<double> y(m_, 0.0);
        for (std::size_t j = 0; j < n_; ++j) {
            int v = nonb_[j];
            if (v < static_cast<int>(n_)) continue;
            double dj = cost_[v];
            for (std::size_t i = 0; i < m_; ++i) dj += cost_[head_[i]] * t_[i * n_ + j];
            y[v - n_] = dj;
        }
        return y;
    }

private:
    void compute_basics() {
        for (std::size_t i = 0; i < m_; ++i) {
            const double* row = &t_[i * n_];
            double s = 0.0;
            for (std::size_t j = 0; j < n_; ++j) s += row[j] * val_[nonb_[j]];
            val_[head_[i]] = s;
        }
    }

    // Limit on step t >= 0 for basic row i moving at rate delta per unit t; slack widens bounds.
    double limit(std::size_t i, double delta, double slack) const {
        int v = head_[i];
        double x = val_[v];
        double lo = lo_[v] - slack, hi = hi_[v] + slack;
        if (x < lo_[v] - opt_.feas_tol) {
            if (delta > 0) return std::max(0.0, (lo_[v] + slack - x) / delta);
            return kInf;
        }
        if (x > hi_[v] + opt_.feas_tol) {
            if (delta < 0) return std::max(0.0, (hi_[v] - slack - x) / delta);
            return kInf;
        }
        if (delta > 0) return std::isfinite(hi) ? std::max(0.0, (hi - x) / delta) : kInf;
        return std::isfinite(lo) ? std::max(0.0, (lo - x) / delta) : kInf;
    }

    double leaving_bound(std::size_t i, double delta) const {
        int v = head_[i];
        double x = val_[v];
        if (x < lo_[v] - opt_.feas_tol) return lo_[v];
        if (x > hi_[v] + opt_.feas_tol) return hi_[v];
        return delta > 0 ? hi_[v] : lo_[v];
    }

    void ratio_test(std::size_t q, int dir, bool bland, int& r, double& step) const {
        r = -1;
        step = kInf;
        if (bland) {
            for (std::size_t i = 0; i < m_; ++i) {
                double tq = t_[i * n_ + q];
                if (std::abs(tq) <= opt_.pivot_tol) continue;
                double t = limit(i, dir * tq, 0.0);
                if (!std::isfinite(t)) continue;
                if (t < step - 1e-12 || (t <= step + 1e-12 && r >= 0 && head_[i] < head_[r])) {
                    if (t < step) step = t;
                    r = static_cast<int>(i);
                }
            }
            return;
        }
        double bound = kInf;
        for (std::size_t i = 0; i < m_; ++i) {
            double tq = t_[i * n_ + q];
            if (std::abs(tq) <= opt_.pivot_tol) continue;
            bound = std::min(bound, limit(i, dir * tq, opt_.feas_tol));
        }
        if (!std::isfinite(bound)) return;
        double best = 0.0;
        for (std::size_t i = 0; i < m_; ++i) {
            double tq = t_[i * n_ + q];
            if (std::abs(tq) <= opt_.pivot_tol) continue;
            double t = limit(i, dir * tq, 0.0);
            if (t <= bound && std::abs(tq) > best) {
                best = std::abs(tq);
                r = static_cast<int>(i);
                step = t;
            }
        }
    }

    void pivot(std::size_t r, std::size_t q) {
        double* prow = &t_[r * n_];
        const double p = prow[q];
        for (std::size_t j = 0; j < n_; ++j) prow[j] = -prow[j] / p;
        prow[q] = 1.0 / p;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r) continue;
            double* row = &t_[i * n_];
            const double f = row[q];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < n_; ++j) row[j] += f * prow[j];
            row[q] = f * prow[q];
        }
        std::swap(head_[r], nonb_[q]);
    }

    // Rebuilds T from the original rows via the basic-structural block.
    void refactor() {
        std::vector<std::size_t> s_rows, s_vars;  // basic structural: row index in tableau, var
        std::vector<std::size_t> r_rows, r_cols;  // nonbasic logical: original row, tableau column
        std::vector<std::size_t> x_cols;          // nonbasic structural tableau columns
        for (std::size_t i = 0; i < m_; ++i)
            if (head_[i] < static_cast<int>(n_)) { s_rows.push_back(i); s_vars.push_back(head_[i]); }
        for (std::size_t j = 0; j < n_; ++j) {
            if (nonb_[j] >= static_cast<int>(n_)) {
                r_rows.push_back(nonb_[j] - n_);
                r_cols.push_back(j);
            } else {
                x_cols.push_back(j);
            }
        }
        const std::size_t k = s_vars.size();
        if (k != r_rows.size()) fail("internal_error", "simplex basis bookkeeping is inconsistent");
        auto A = [&](std::size_t row, std::size_t var) { return a_[row * n_ + var]; };
        Eigen::MatrixXd w;  // M^{-1} [I | A_{R,Nx}]
        if (k > 0) {
            Eigen::MatrixXd mk(k, k), rhs(k, k + x_cols.size());
            for (std::size_t a = 0; a < k; ++a)
                for (std::size_t b = 0; b < k; ++b) mk(a, b) = A(r_rows[a], s_vars[b]);
            rhs.setZero();
            for (std::size_t a = 0; a < k; ++a) {
                rhs(a, a) = 1.0;
                for (std::size_t c = 0; c < x_cols.size(); ++c)
                    rhs(a, k + c) = A(r_rows[a], nonb_[x_cols[c]]);
            }
            Eigen::FullPivLU<Eigen::MatrixXd> lu(mk);
            if (!lu.isInvertible()) return;
            w = lu.solve(rhs);
        }
        std::vector<double> t(m_ * n_, 0.0);
        for (std::size_t a = 0; a < k; ++a) {
            double* row = &t[s_rows[a] * n_];
            for (std::size_t b = 0; b < k; ++b) row[r_cols[b]] = w(a, b);
            for (std::size_t c = 0; c < x_cols.size(); ++c) row[x_cols[c]] = -w(a, k + c);
        }
        for (std::size_t i = 0; i < m_; ++i) {
            if (head_[i] < static_cast<int>(n_)) continue;
            std::size_t orow = head_[i] - n_;
            double* row = &t[i * n_];
            for (std::size_t c = 0; c < x_cols.size(); ++c) row[x_cols[c]] = A(orow, nonb_[x_cols[c]]);
            for (std::size_t a = 0; a < k; ++a) {
                double g = A(orow, s_vars[a]);
                if (g == 0.0) continue;
                for (std::size_t b = 0; b < k; ++b) row[r_cols[b]] += g * w(a, b);
                for (std::size_t c = 0; c < x_cols.size(); ++c) row[x_cols[c]] -= g * w(a, k + c);
            }
        }
        t_.swap(t);
    }

    std::size_t n_, m_;
    std::vector<double> a_, lo_, hi_, cost_;
    const LpOptions& opt_;
    std::vector<double> t_;
    std::vector<int> head_, nonb_;
    std::vector<double> val_;
    std::size_t iterations_ = 0, max_iter_ = 0, bland_after_ = 0;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const LpOptions& options) {
    lp.validate();
    const std::size_t n = lp.num_vars();
    LpSolution sol;
    sol.duals.assign(lp.num_rows(), 0.0);
    std::vector<std::size_t> kept;
    std::vector<double> scale;
    for (std::size_t i = 0; i < lp.num_rows(); ++i) {
        const LpRow& row = lp.rows[i];
        double mx = 0.0;
        for (double a : row.coeffs) mx = std::max(mx, std::abs(a));
        if (mx == 0.0) {
            bool ok = (row.rel == Relation::LessEq && row.rhs >= -options.feas_tol) ||
                      (row.rel == Relation::GreaterEq && row.rhs <= options.feas_tol) ||
                      (row.rel == Relation::Equal && std::abs(row.rhs) <= options.feas_tol);
            if (!ok) {
                sol.warnings.push_back("row " + std::to_string(i + 1) + " is empty and unsatisfiable");
                sol.status = LpStatus::Infeasible;
                sol.x.assign(n, 0.0);
                return sol;
            }
            sol.warnings.push_back("dropped empty row " + std::to_string(i + 1));
            continue;
        }
        kept.push_back(i);
        scale.push_back(mx);
    }
    const std::size_t m = kept.size();
    std::vector<double> a(m * n), lo(n + m), hi(n + m), cost(n + m, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        lo[j] = lp.lower[j];
        hi[j] = lp.upper[j];
        cost[j] = lp.objective[j];
    }
    for (std::size_t r = 0; r < m; ++r) {
        const LpRow& row = lp.rows[kept[r]];
        for (std::size_t j = 0; j < n; ++j) a[r * n + j] = row.coeffs[j] / scale[r];
        double b = row.rhs / scale[r];
        lo[n + r] = row.rel == Relation::LessEq ? -kInf : b;
        hi[n + r] = row.rel == Relation::GreaterEq ? kInf : b;
    }
    Simplex sx(n, m, std::move(a), std::move(lo), std::move(hi), std::move(cost), options);
    sol.status = sx.run();
    sol.iterations = sx.iterations();
    const auto& v = sx.values();
    sol.x.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n));
    sol.objective_value = 0.0;
    for (std::size_t j = 0; j < n; ++j) sol.objective_value += lp.objective[j] * sol.x[j];
    if (sol.status == LpStatus::Optimal) {
        std::vector<double> y = sx.row_duals();
        for (std::size_t r = 0; r < m; ++r) sol.duals[kept[r]] = y[r] / scale[r];
    }
    sol.reduced_costs = lp.objective;
    for (std::size_t i = 0; i < lp.num_rows(); ++i) {
        if (sol.duals[i] == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) sol.reduced_costs[j] -= sol.duals[i] * lp.rows[i].coeffs[j];
    }
    return sol;
}

LpCheck check_solution(const LinearProgram& lp, const LpSolution& sol) {
    LpCheck c;
    const std::size_t n = lp.num_vars();
    std::vector<double> r = lp.objective;
    double dual = 0.0;
    for (std::size_t i = 0; i < lp.num_rows(); ++i) {
        const LpRow& row = lp.rows[i];
        double act = 0.0;
        for (std::size_t j = 0; j < n; ++j) act += row.coeffs[j] * sol.x[j];
        double viol = 0.0;
        if (row.rel != Relation::GreaterEq) viol = std::max(viol, act - row.rhs);
        if (row.rel != Relation::LessEq) viol = std::max(viol, row.rhs - act);
        c.primal_residual = std::max(c.primal_residual, viol);
        double y = i < sol.duals.size() ? sol.duals[i] : 0.0;
        if ((y > 0 && row.rel == Relation::LessEq) || (y < 0 && row.rel == Relation::GreaterEq))
            c.dual_infeasibility = std::max(c.dual_infeasibility, std::abs(y));
        dual += y * row.rhs;
        for (std::size_t j = 0; j < n; ++j) r[j] -= y * row.coeffs[j];
    }
    for (std::size_t j = 0; j < n; ++j) {
        c.primal_residual = std::max({c.primal_residual, lp.lower[j] - sol.x[j], sol.x[j] - lp.upper[j]});
        double bnd = r[j] >= 0 ? lp.lower[j] : lp.upper[j];
        if (r[j] == 0.0) continue;
        if (!std::isfinite(bnd)) {
            c.dual_infeasibility = std::max(c.dual_infeasibility, std::abs(r[j]));
            dual += r[j] * sol.x[j];
        } else {
            dual += r[j] * bnd;
        }
    }
    c.dual_objective = dual;
    c.duality_gap = sol.objective_value - dual;
    return c;
}

namespace {

std::string relation_token(Relation r) {
    switch (r) {
        case Relation::LessEq: return "<=";
        case Relation::Equal: return "=";
        case Relation::GreaterEq: return ">=";
    }
    return "?";
}

std::string bound_token(double x) {
    if (x == kInf) return "inf";
    if (x == -kInf) return "-inf";
    return format_double(x);
}

double parse_bound(const std::string& tok) {
    if (tok == "inf" || tok == "+inf") return kInf;
    if (tok == "-inf") return -kInf;
    return parse_double(tok);
}

}  // namespace

void write_lp(std::ostream& out, const LinearProgram& lp) {
    lp.validate();
    out << "minimize";
    for (double c : lp.objective) out << ' ' << format_double(c);
    out << '\n';
    for (std::size_t j = 0; j < lp.num_vars(); ++j) {
        if (lp.lower[j] == 0.0 && lp.upper[j] == kInf) continue;
        out << "bound " << j + 1 << ' ' << bound_token(lp.lower[j]) << ' ' << bound_token(lp.upper[j]) << '\n';
    }
    for (const LpRow& row : lp.rows) {
        out << relation_token(row.rel) << ' ' << format_double(row.rhs);
        for (double a : row.coeffs) out << ' ' << format_double(a);
        out << '\n';
    }
}

LinearProgram read_lp(std::istream& in) {
    LinearProgram lp;
    bool have_obj = false;
    std::string line;
    std::size_t lineno = 0;
    auto err = [&](const std::string& msg) { fail("parse_error", "line " + std::to_string(lineno) + ": " + msg); };
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::vector<std::string> tok;
        for (std::string t; ss >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        try {
            if (tok[0] == "minimize") {
                if (have_obj) err("duplicate objective");
                std::size_t n = tok.size() - 1;
                lp = LinearProgram(n);
                for (std::size_t j = 0; j < n; ++j) lp.objective[j] = parse_double(tok[j + 1]);
                have_obj = true;
            } else if (!have_obj) {
                err("expected 'minimize' first");
            } else if (tok[0] == "bound") {
                if (tok.size() != 4) err("bound needs 3 fields");
                long long j = parse_int(tok[1]);
                if (j < 1 || static_cast<std::size_t>(j) > lp.num_vars()) err("variable index out of range");
                lp.lower[j - 1] = parse_bound(tok[2]);
                lp.upper[j - 1] = parse_bound(tok[3]);
            } else if (tok[0] == "<=" || tok[0] == "=" || tok[0] == ">=") {
                if (tok.size() != lp.num_vars() + 2) err("row width mismatch");
                Relation rel = tok[0] == "<=" ? Relation::LessEq
                             : tok[0] == "=" ? Relation::Equal : Relation::GreaterEq;
                std::vector<double> coeffs(lp.num_vars());
                for (std::size_t j = 0; j < coeffs.size(); ++j) coeffs[j] = parse_double(tok[j + 2]);
                lp.add_row(std::move(coeffs), rel, parse_double(tok[1]));
            } else {
                err("unknown record '" + tok[0] + "'");
            }
        } catch (const Error& e) {
            if (e.code() == "parse_error" && std::string(e.what()).rfind("line ", 0) == 0) throw;
            err(e.what());
        }
    }
    if (!have_obj) fail("parse_error", "missing objective line");
    lp.validate();
    return lp;
}

}  // namespace mwc
