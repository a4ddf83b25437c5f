#include <algorithm>

#include "doctest.h"
#include "oracles.hpp"
#include "polybound/lp.hpp"

using namespace polybound;

namespace {

LPProblem triangle_lp() {
    // x >= 1, y >= 1, x + y <= 3 with free variables
    LPProblem lp(2);
    lp.var_bounds = {VarBound::Free, VarBound::Free};
    lp.add_row({Rational(-1), Rational(0)}, RowSense::LessEq, Rational(-1));
    lp.add_row({Rational(0), Rational(-1)}, RowSense::LessEq, Rational(-1));
    lp.add_row({Rational(1), Rational(1)}, RowSense::LessEq, Rational(3));
    return lp;
}

} // namespace

TEST_CASE("single bound") {
    LPProblem lp(1);
    lp.var_bounds = {VarBound::Free};
    lp.objective = {Rational(1)};
    lp.add_row({Rational(1)}, RowSense::GreaterEq, Rational(3));
    LPSolution sol = lp_solve(lp);
    REQUIRE(sol.status == LPStatus::Optimal);
    CHECK(sol.objective == 3);
    CHECK(sol.values[0] == 3);
}

TEST_CASE("triangle maximum via vertex scan oracle") {
    LPProblem lp = triangle_lp();
    lp.objective = {Rational(-1), Rational(0)};  // max x as min -x
    LPSolution sol = lp_solve(lp);
    REQUIRE(sol.status == LPStatus::Optimal);
    CHECK(sol.objective == -2);
    CHECK(sol.values == std::vector<Rational>{Rational(2), Rational(1)});
}

TEST_CASE("infeasible bounds") {
    LPProblem lp(1);
    lp.add_row({Rational(1)}, RowSense::LessEq, Rational(-1));  // x <= -1, x >= 0
    LPSolution sol = lp_solve(lp);
    CHECK(sol.status == LPStatus::Infeasible);
}

TEST_CASE("unbounded detection") {
    LPProblem lp(1);
    lp.var_bounds = {VarBound::Free};
    lp.objective = {Rational(1)};
    lp.add_row({Rational(1)}, RowSense::LessEq, Rational(5));
    LPSolution sol = lp_solve(lp);
    CHECK(sol.status == LPStatus::Unbounded);
}

TEST_CASE("equality rows and redundant constraints") {
    LPProblem lp(2);
    lp.objective = {Rational(1), Rational(2)};
    lp.add_row({Rational(1), Rational(1)}, RowSense::Equal, Rational(4));
    lp.add_row({Rational(2), Rational(2)}, RowSense::Equal, Rational(8));  // redundant
    LPSolution sol = lp_solve(lp);
    REQUIRE(sol.status == LPStatus::Optimal);
    CHECK(sol.objective == 4);
    CHECK(sol.values == std::vector<Rational>{Rational(4), Rational(0)});
}

TEST_CASE("weak duality against rejection sampling") {
    oracles::Rng rng(97);
    int solved = 0;
    while (solved < 12) {
        size_t nvars = static_cast<size_t>(rng.uniform(1, 3));
        LPProblem lp(nvars);
        for (size_t j = 0; j < nvars; ++j) lp.objective[j] = rng.rational(5, 3);
        size_t nrows = static_cast<size_t>(rng.uniform(1, 4));
        for (size_t i = 0; i < nrows; ++i) {
            std::vector<Rational> row(nvars);
            for (auto& c : row) c = rng.rational(4, 2);
            lp.add_row(std::move(row), RowSense::LessEq, Rational(rng.uniform(0, 8)));
        }
        // keep the region bounded
        for (size_t j = 0; j < nvars; ++j) {
            std::vector<Rational> row(nvars, Rational(0));
            row[j] = 1;
            lp.add_row(std::move(row), RowSense::LessEq, Rational(10));
        }
        LPSolution sol = lp_solve(lp);
        if (sol.status != LPStatus::Optimal) continue;
        ++solved;
        for (int samples = 0; samples < 40; ++samples) {
            std::vector<Rational> x(nvars);
            for (auto& v : x) {
                v = Rational(rng.uniform(0, 10), rng.uniform(1, 3));
                v.canonicalize();
            }
            bool feasible = true;
            Rational val(0);
            for (size_t i = 0; i < lp.rows.size() && feasible; ++i) {
                Rational lhs(0);
                for (size_t j = 0; j < nvars; ++j) lhs += lp.rows[i][j] * x[j];
                feasible = lhs <= lp.rhs[i];
            }
            if (!feasible) continue;
            for (size_t j = 0; j < nvars; ++j) val += lp.objective[j] * x[j];
            CHECK(sol.objective <= val);
        }
    }
}

TEST_CASE("strong duality and complementary slackness") {
    LPProblem lp = triangle_lp();
    lp.objective = {Rational(1), Rational(3)};  // min x + 3y -> (1,1), value 4
    LPSolution sol = lp_solve(lp);
    REQUIRE(sol.status == LPStatus::Optimal);
    CHECK(sol.objective == 4);

    Rational dual_value(0);
    for (size_t i = 0; i < lp.rows.size(); ++i) {
        dual_value += sol.duals[i] * lp.rhs[i];
        Rational activity(0);
        for (size_t j = 0; j < lp.num_vars(); ++j) activity += lp.rows[i][j] * sol.values[j];
        // y_i nonzero only on tight rows
        if (sol.duals[i] != 0) CHECK(activity == lp.rhs[i]);
        // minimization with <= rows: multipliers are nonpositive
        CHECK(sol.duals[i] <= 0);
    }
    CHECK(dual_value == sol.objective);
}

TEST_CASE("row permutation keeps the optimal value") {
    LPProblem lp = triangle_lp();
    lp.objective = {Rational(-2), Rational(-5)};
    LPSolution base = lp_solve(lp);
    REQUIRE(base.status == LPStatus::Optimal);

    std::vector<size_t> perm{2, 0, 1};
    LPProblem shuffled(2);
    shuffled.var_bounds = lp.var_bounds;
    shuffled.objective = lp.objective;
    for (size_t i : perm) shuffled.add_row(lp.rows[i], lp.senses[i], lp.rhs[i]);
    LPSolution other = lp_solve(shuffled);
    REQUIRE(other.status == LPStatus::Optimal);
    CHECK(other.objective == base.objective);
}
