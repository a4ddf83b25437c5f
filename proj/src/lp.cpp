#include "polybound/lp.hpp"

#include <algorithm>

#include "polybound/errors.hpp"

namespace polybound {

void LPProblem::add_row(std::vector<Rational> coeffs, RowSense sense, Rational b) {
    if (coeffs.size() != num_vars()) throw MathError("LP row has wrong length");
    rows.push_back(std::move(coeffs));
    senses.push_back(sense);
    rhs.push_back(std::move(b));
}

namespace {

// Dense simplex tableau T = B^-1 [A | b] with explicit basis bookkeeping.
struct Tableau {
    size_t m = 0;                  // rows
    size_t n = 0;                  // columns excluding rhs
    std::vector<std::vector<Rational>> t;  // m x (n+1), rhs last
    std::vector<size_t> basis;             // basic column per row
    size_t first_artificial = 0;           // columns >= this never enter

    Rational& rhs_of(size_t r) { return t[r][n]; }

    void pivot(size_t row, size_t col) {
        Rational inv = Rational(1) / t[row][col];
        for (size_t j = 0; j <= n; ++j) t[row][j] *= inv;
        for (size_t r = 0; r < m; ++r) {
            if (r == row || t[r][col] == 0) continue;
            Rational factor = t[r][col];
            for (size_t j = 0; j <= n; ++j) t[r][j] -= factor * t[row][j];
        }
        basis[row] = col;
    }
};

// Runs primal simplex with Bland's rule to optimality for cost vector c.
// Returns false if unbounded.
bool run_simplex(Tableau& tab, const std::vector<Rational>& cost) {
    for (;;) {
        // reduced costs z_j = c_j - c_B . T[:,j], entering = lowest j with z_j < 0
        std::vector<Rational> cb(tab.m);
        for (size_t r = 0; r < tab.m; ++r) cb[r] = cost[tab.basis[r]];
        size_t entering = tab.n;
        for (size_t j = 0; j < tab.first_artificial && entering == tab.n; ++j) {
            Rational z = cost[j];
            for (size_t r = 0; r < tab.m; ++r)
                if (cb[r] != 0 && tab.t[r][j] != 0) z -= cb[r] * tab.t[r][j];
            if (sign(z) < 0) entering = j;
        }
        if (entering == tab.n) return true;  // optimal

        // Bland's leaving rule: min ratio, ties by smallest basic column index
        size_t leave = tab.m;
        Rational best_ratio;
        for (size_t r = 0; r < tab.m; ++r) {
            if (sign(tab.t[r][entering]) <= 0) continue;
            Rational ratio = tab.rhs_of(r) / tab.t[r][entering];
            if (leave == tab.m || ratio < best_ratio ||
                (ratio == best_ratio && tab.basis[r] < tab.basis[leave])) {
                leave = r;
                best_ratio = ratio;
            }
        }
        if (leave == tab.m) return false;  // unbounded in this direction
        tab.pivot(leave, entering);
    }
}

} // namespace

LPSolution lp_solve(const LPProblem& problem) {
    const size_t n_orig = problem.num_vars();
    const size_t m = problem.rows.size();
    for (const auto& row : problem.rows)
        if (row.size() != n_orig) throw MathError("LP row has wrong length");

    // Column layout: structural columns (free variables split into x+ - x-),
    // then slack columns, then one artificial per row.
    std::vector<size_t> plus_col(n_orig), minus_col(n_orig, SIZE_MAX);
    size_t n_struct = 0;
    for (size_t j = 0; j < n_orig; ++j) {
        plus_col[j] = n_struct++;
        if (problem.var_bounds[j] == VarBound::Free) minus_col[j] = n_struct++;
    }

    // Normalize rhs >= 0 by negating rows; remember the flip for the duals.
    std::vector<int> row_sign(m, 1);
    std::vector<RowSense> senses = problem.senses;
    size_t n_slack = 0;
    std::vector<size_t> slack_col(m, SIZE_MAX);
    for (size_t i = 0; i < m; ++i) {
        if (sign(problem.rhs[i]) < 0) {
            row_sign[i] = -1;
            if (senses[i] == RowSense::LessEq) senses[i] = RowSense::GreaterEq;
            else if (senses[i] == RowSense::GreaterEq) senses[i] = RowSense::LessEq;
        }
        if (senses[i] != RowSense::Equal) slack_col[i] = n_slack++;
    }

    Tableau tab;
    tab.m = m;
    tab.first_artificial = n_struct + n_slack;
    tab.n = tab.first_artificial + m;
    tab.t.assign(m, std::vector<Rational>(tab.n + 1, Rational(0)));
    tab.basis.resize(m);
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < n_orig; ++j) {
            Rational a = problem.rows[i][j];
            if (row_sign[i] < 0) a = -a;
            if (a == 0) continue;
            tab.t[i][plus_col[j]] = a;
            if (minus_col[j] != SIZE_MAX) tab.t[i][minus_col[j]] = -a;
        }
        if (slack_col[i] != SIZE_MAX)
            tab.t[i][n_struct + slack_col[i]] =
                (senses[i] == RowSense::LessEq) ? Rational(1) : Rational(-1);
        tab.t[i][tab.first_artificial + i] = 1;
        tab.basis[i] = tab.first_artificial + i;
        tab.rhs_of(i) = row_sign[i] < 0 ? Rational(-problem.rhs[i]) : problem.rhs[i];
    }

    LPSolution out;

    // Phase 1: minimize the sum of artificials.
    std::vector<Rational> phase1_cost(tab.n, Rational(0));
    for (size_t i = 0; i < m; ++i) phase1_cost[tab.first_artificial + i] = 1;
    if (!run_simplex(tab, phase1_cost))  // objective >= 0, cannot be unbounded
        throw MathError("lp: phase 1 reported unbounded");
    Rational infeas(0);
    for (size_t r = 0; r < tab.m; ++r)
        if (tab.basis[r] >= tab.first_artificial) infeas += tab.rhs_of(r);
    if (infeas != 0) {
        out.status = LPStatus::Infeasible;
        return out;
    }

    // Drive remaining artificials out of the basis; an all-zero row is a
    // redundant constraint and is dropped.
    std::vector<size_t> kept_row_of;  // original row index per tableau row
    for (size_t i = 0; i < m; ++i) kept_row_of.push_back(i);
    for (size_t r = 0; r < tab.m;) {
        if (tab.basis[r] < tab.first_artificial) {
            ++r;
            continue;
        }
        size_t col = tab.n;
        for (size_t j = 0; j < tab.first_artificial && col == tab.n; ++j)
            if (tab.t[r][j] != 0) col = j;
        if (col != tab.n) {
            tab.pivot(r, col);  // degenerate pivot, rhs stays 0
            ++r;
        } else {
            tab.t.erase(tab.t.begin() + static_cast<long>(r));
            tab.basis.erase(tab.basis.begin() + static_cast<long>(r));
            kept_row_of.erase(kept_row_of.begin() + static_cast<long>(r));
            --tab.m;
        }
    }

    // Phase 2 with the real costs; artificial columns are kept (they read off
    // B^-1 for the duals) but never re-enter.
    std::vector<Rational> cost(tab.n, Rational(0));
    for (size_t j = 0; j < n_orig; ++j) {
        cost[plus_col[j]] = problem.objective[j];
        if (minus_col[j] != SIZE_MAX) cost[minus_col[j]] = -problem.objective[j];
    }
    if (!run_simplex(tab, cost)) {
        out.status = LPStatus::Unbounded;
        return out;
    }

    out.status = LPStatus::Optimal;
    std::vector<Rational> col_value(tab.n, Rational(0));
    for (size_t r = 0; r < tab.m; ++r) col_value[tab.basis[r]] = tab.rhs_of(r);
    out.values.resize(n_orig);
    out.objective = 0;
    for (size_t j = 0; j < n_orig; ++j) {
        out.values[j] = col_value[plus_col[j]];
        if (minus_col[j] != SIZE_MAX) out.values[j] -= col_value[minus_col[j]];
        out.objective += problem.objective[j] * out.values[j];
    }

    // Dual of kept row i: y_i = c_B . (B^-1 e_i), sign-adjusted for negation.
    out.duals.assign(m, Rational(0));
    for (size_t idx = 0; idx < kept_row_of.size(); ++idx) {
        Rational y(0);
        for (size_t r = 0; r < tab.m; ++r) {
            const Rational& c = cost[tab.basis[r]];
            if (c != 0) y += c * tab.t[r][tab.first_artificial + kept_row_of[idx]];
        }
        if (row_sign[kept_row_of[idx]] < 0) y = -y;
        out.duals[kept_row_of[idx]] = y;
    }
    return out;
}

} // namespace polybound
