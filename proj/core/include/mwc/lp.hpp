#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace mwc {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Relation { LessEq, Equal, GreaterEq };

struct LpRow {
    std::vector<double> coeffs;
    Relation rel = Relation::LessEq;
    double rhs = 0.0;
};

// minimize c^T x  s.t.  rows,  lower <= x <= upper.
struct LinearProgram {
    std::vector<double> objective;
    std::vector<LpRow> rows;
    std::vector<double> lower;  // default 0
    std::vector<double> upper;  // default +inf

    explicit LinearProgram(std::size_t num_vars = 0)
        : objective(num_vars, 0.0), lower(num_vars, 0.0), upper(num_vars, kInf) {}

    std::size_t num_vars() const noexcept { return objective.size(); }
    std::size_t num_rows() const noexcept { return rows.size(); }
    void add_row(std::vector<double> coeffs, Relation rel, double rhs) {
        rows.push_back({std::move(coeffs), rel, rhs});
    }
    void validate() const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

std::string to_string(LpStatus s);

struct LpSolution {
    LpStatus status = LpStatus::IterationLimit;
    std::vector<double> x;
    double objective_value = 0.0;
    std::size_t iterations = 0;
    std::vector<double> duals;          // one per row; d(objective)/d(rhs)
    std::vector<double> reduced_costs;  // c - A^T y
    std::vector<std::string> warnings;
};

struct LpOptions {
    double pivot_tol = 1e-10;
    double feas_tol = 1e-9;
    double opt_tol = 1e-9;
    std::size_t max_iterations = 0;  // 0: automatic
    std::size_t refactor_every = 100;
};

LpSolution solve_lp(const LinearProgram& lp, const LpOptions& options = {});

struct LpCheck {
    double primal_residual = 0.0;  // worst row/bound violation
    double dual_infeasibility = 0.0;
    double dual_objective = 0.0;
    double duality_gap = 0.0;      // primal - dual
};

// Recomputes residuals and the dual bound from the original data.
LpCheck check_solution(const LinearProgram& lp, const LpSolution& sol);

// Text format:
//   minimize c1 ... cn
//   bound <j> <lo> <hi>        (1-based j, optional; inf / -inf allowed)
//   <= | = | >=  rhs a1 ... an
void write_lp(std::ostream& out, const LinearProgram& lp);
LinearProgram read_lp(std::istream& in);

}  // namespace mwc
