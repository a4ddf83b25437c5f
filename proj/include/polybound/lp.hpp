#pragma once

#include <vector>

#include "polybound/rational.hpp"

namespace polybound {

enum class RowSense { LessEq, Equal, GreaterEq };
enum class VarBound { NonNegative, Free };
enum class LPStatus { Optimal, Infeasible, Unbounded };

/// Minimization problem: min c.x subject to rows (A_i . x sense_i rhs_i)
/// and per-variable bounds (x_j >= 0 or free).
struct LPProblem {
    std::vector<Rational> objective;
    std::vector<VarBound> var_bounds;
    std::vector<std::vector<Rational>> rows;
    std::vector<RowSense> senses;
    std::vector<Rational> rhs;

    explicit LPProblem(size_t num_vars = 0)
        : objective(num_vars, Rational(0)), var_bounds(num_vars, VarBound::NonNegative) {}

    size_t num_vars() const { return objective.size(); }
    void add_row(std::vector<Rational> coeffs, RowSense sense, Rational b);
};

struct LPSolution {
    LPStatus status = LPStatus::Infeasible;
    std::vector<Rational> values;  // primal values, empty unless optimal
    Rational objective;
    /// One multiplier per input row (zero for redundant rows); satisfies
    /// duals . rhs == objective exactly at an optimum.
    std::vector<Rational> duals;
};

/// Primal simplex over exact rationals. Two-phase start, Bland's pivoting
/// rule throughout, so the solve terminates on degenerate instances and the
/// result is deterministic for a fixed row and column ordering.
LPSolution lp_solve(const LPProblem& problem);

} // namespace polybound
