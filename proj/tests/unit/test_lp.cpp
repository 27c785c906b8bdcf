#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "ewfs/lp.hpp"

namespace ewfs {
namespace {

using Q = Rational;

LinearProgram<Q> two_var_program() {
  // max x + y  s.t.  x + 2y <= 4,  3x + y <= 6
  LinearProgram<Q> lp(2);
  lp.objective = {Q(1), Q(1)};
  lp.add_inequality(std::vector<Q>{Q(1), Q(2)}, Q(4));
  lp.add_inequality(std::vector<Q>{Q(3), Q(1)}, Q(6));
  return lp;
}

TEST(Simplex, SmallProgramExactOptimum) {
  const auto sol = solve(two_var_program());
  ASSERT_TRUE(sol.optimal());
  EXPECT_EQ(*sol.objective_value, Q(14, 5));
  EXPECT_EQ(sol.primal[0], Q(8, 5));
  EXPECT_EQ(sol.primal[1], Q(6, 5));
}

TEST(Simplex, DualCertificateClosesTheGap) {
  const auto lp = two_var_program();
  const auto sol = solve(lp);
  ASSERT_TRUE(sol.optimal());
  ASSERT_EQ(sol.ineq_duals.size(), 2u);
  Q dual_value(0);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_GE(sol.ineq_duals[i], 0);
    dual_value += sol.ineq_duals[i] * lp.ineq_rhs[i];
  }
  EXPECT_EQ(dual_value, *sol.objective_value);
  // G^T z >= c column by column.
  for (std::size_t j = 0; j < 2; ++j) {
    Q col(0);
    for (std::size_t i = 0; i < 2; ++i) {
      for (const auto& e : lp.ineq_rows[i]) {
        if (e.col == j) col += e.value * sol.ineq_duals[i];
      }
    }
    EXPECT_GE(col, lp.objective[j]);
  }
}

TEST(Simplex, MinimizationAndEqualities) {
  // min 2x + 3y + z  s.t.  x + y + z = 10,  x - y = 2,  z >= 1 (as -z <= -1)
  LinearProgram<Q> lp(3);
  lp.sense = Sense::minimize;
  lp.objective = {Q(2), Q(3), Q(1)};
  lp.add_equality(std::vector<Q>{Q(1), Q(1), Q(1)}, Q(10));
  lp.add_equality(std::vector<Q>{Q(1), Q(-1), Q(0)}, Q(2));
  lp.add_inequality(std::vector<Q>{Q(0), Q(0), Q(-1)}, Q(-1));
  const auto sol = solve(lp);
  ASSERT_TRUE(sol.optimal());
  // z carries everything it can: x = 2, y = 0, z = 8.
  EXPECT_EQ(*sol.objective_value, Q(12));
  EXPECT_EQ(max_violation(lp, sol.primal), Q(0));
}

TEST(Simplex, RedundantEqualitiesAreTolerated) {
  LinearProgram<Q> lp(2);
  lp.objective = {Q(1), Q(0)};
  lp.add_equality(std::vector<Q>{Q(1), Q(1)}, Q(1));
  lp.add_equality(std::vector<Q>{Q(2), Q(2)}, Q(2));
  lp.add_equality(std::vector<Q>{Q(3), Q(3)}, Q(3));
  const auto sol = solve(lp);
  ASSERT_TRUE(sol.optimal());
  EXPECT_EQ(*sol.objective_value, Q(1));
}

TEST(Simplex, DetectsInfeasibility) {
  LinearProgram<Q> lp(1);
  lp.objective = {Q(1)};
  lp.add_inequality(std::vector<Q>{Q(1)}, Q(1));
  lp.add_equality(std::vector<Q>{Q(1)}, Q(2));
  EXPECT_EQ(solve(lp).status, LpStatus::infeasible);
  EXPECT_EQ(check_feasible(lp), Feasibility::infeasible);
}

TEST(Simplex, DetectsUnboundedness) {
  LinearProgram<Q> lp(2);
  lp.objective = {Q(1), Q(1)};
  lp.add_inequality(std::vector<Q>{Q(1), Q(-1)}, Q(1));
  EXPECT_EQ(solve(lp).status, LpStatus::unbounded);
}

// Beale's program cycles under the textbook Dantzig rule without safeguards.
LinearProgram<Q> beale() {
  LinearProgram<Q> lp(4);
  lp.sense = Sense::minimize;
  lp.objective = {Q(-3, 4), Q(20), Q(-1, 2), Q(6)};
  lp.add_inequality(std::vector<Q>{Q(1, 4), Q(-8), Q(-1), Q(9)}, Q(0));
  lp.add_inequality(std::vector<Q>{Q(1, 2), Q(-12), Q(-1, 2), Q(3)}, Q(0));
  lp.add_inequality(std::vector<Q>{Q(0), Q(0), Q(1), Q(0)}, Q(1));
  return lp;
}

TEST(Simplex, BealeTerminatesUnderEveryRule) {
  for (const auto pricing : {Pricing::steepest_edge, Pricing::dantzig}) {
    for (const std::size_t streak : {std::size_t{1}, std::size_t{1000}}) {
      SolveOptions o;
      o.pricing = pricing;
      o.degenerate_streak_limit = streak;
      const auto sol = solve(beale(), o);
      ASSERT_TRUE(sol.optimal());
      EXPECT_EQ(*sol.objective_value, Q(-5, 4));
    }
  }
}

TEST(Simplex, LowerBoundsShiftTheFeasibleSet) {
  LinearProgram<Q> lp(2);
  lp.sense = Sense::minimize;
  lp.objective = {Q(1), Q(1)};
  lp.add_inequality(std::vector<Q>{Q(1), Q(1)}, Q(10));
  lp.lower_bounds = {Q(2), Q(-3)};
  const auto sol = solve(lp);
  ASSERT_TRUE(sol.optimal());
  EXPECT_EQ(*sol.objective_value, Q(-1));
  EXPECT_EQ(sol.primal[1], Q(-3));
}

LinearProgram<Q> random_program(std::mt19937_64& rng, std::size_t n, std::size_t m) {
  std::uniform_int_distribution<int> coeff(-5, 9);
  std::uniform_int_distribution<int> rhs(1, 20);
  LinearProgram<Q> lp(n);
  lp.objective.resize(n);
  for (auto& c : lp.objective) c = Q(coeff(rng));
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Q> row(n);
    for (auto& v : row) v = Q(coeff(rng));
    lp.add_inequality(row, Q(rhs(rng)));
  }
  // A box keeps every instance bounded.
  std::vector<Q> box(n, Q(1));
  lp.add_inequality(box, Q(50));
  return lp;
}

TEST(Simplex, StrongDualityOnRandomPrograms) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const auto lp = random_program(rng, 6, 5);
    const auto sol = solve(lp);
    ASSERT_TRUE(sol.optimal());
    Q dual(0);
    for (std::size_t i = 0; i < lp.ineq_rows.size(); ++i) {
      EXPECT_GE(sol.ineq_duals[i], 0);
      dual += sol.ineq_duals[i] * lp.ineq_rhs[i];
    }
    EXPECT_EQ(dual, *sol.objective_value) << "trial " << trial;
    EXPECT_EQ(max_violation(lp, sol.primal), Q(0));
  }
}

TEST(Simplex, FloatAgreesWithRational) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const auto lp = random_program(rng, 7, 6);
    LinearProgram<double> f(lp.variable_count);
    for (const auto& c : lp.objective) f.objective.push_back(c.get_d());
    for (std::size_t i = 0; i < lp.ineq_rows.size(); ++i) {
      SparseRow<double> row;
      for (const auto& e : lp.ineq_rows[i]) row.push_back({e.col, e.value.get_d()});
      f.add_inequality(std::move(row), lp.ineq_rhs[i].get_d());
    }
    const auto exact = solve(lp);
    const auto approx = solve(f);
    ASSERT_TRUE(exact.optimal());
    ASSERT_TRUE(approx.optimal());
    EXPECT_NEAR(*approx.objective_value, exact.objective_value->get_d(), 1e-9);
  }
}

TEST(Simplex, ObjectiveScalingScalesTheValue) {
  std::mt19937_64 rng(3);
  const auto lp = random_program(rng, 5, 4);
  auto scaled = lp;
  for (auto& c : scaled.objective) c *= Q(7, 3);
  // Row scaling leaves the feasible set alone.
  for (auto& row : scaled.ineq_rows) {
    for (auto& e : row) e.value *= 4;
  }
  for (auto& h : scaled.ineq_rhs) h *= 4;
  EXPECT_EQ(*solve(scaled).objective_value, *solve(lp).objective_value * Q(7, 3));
}

TEST(Simplex, PivotCapRaisesSolverError) {
  SolveOptions o;
  o.max_pivots = 1;
  std::mt19937_64 rng(9);
  EXPECT_THROW(solve(random_program(rng, 8, 8), o), SolverError);
}

TEST(Simplex, MalformedProgramsAreRejected) {
  LinearProgram<Q> lp(2);
  EXPECT_THROW(lp.add_equality(std::vector<Q>{Q(1)}, Q(1)), MalformedProgram);
  EXPECT_THROW(solve(lp), MalformedProgram);  // no constraints
  lp.add_equality(SparseRow<Q>{{5, Q(1)}}, Q(1));
  EXPECT_THROW(solve(lp), MalformedProgram);
  LinearProgram<Q> bad_objective(2);
  bad_objective.objective = {Q(1)};
  bad_objective.add_inequality(std::vector<Q>{Q(1), Q(1)}, Q(1));
  EXPECT_THROW(solve(bad_objective), MalformedProgram);
}

TEST(Simplex, NormalizeMergesDuplicateColumns) {
  const auto row = LinearProgram<Q>::normalize({{3, Q(1)}, {1, Q(2)}, {3, Q(-1)}, {1, Q(1)}});
  ASSERT_EQ(row.size(), 1u);
  EXPECT_EQ(row[0].col, 1u);
  EXPECT_EQ(row[0].value, Q(3));
}

TEST(Simplex, WriteLpListsEveryRow) {
  std::ostringstream out;
  write_lp(out, two_var_program());
  const std::string text = out.str();
  EXPECT_NE(text.find("maximize x0:1 x1:1"), std::string::npos);
  EXPECT_NE(text.find("le x0:1 x1:2 <= 4"), std::string::npos);
  EXPECT_NE(text.find("mode rational"), std::string::npos);
}

TEST(Simplex, DeterministicForIdenticalInput) {
  std::mt19937_64 rng(21);
  const auto lp = random_program(rng, 9, 7);
  const auto a = solve(lp);
  const auto b = solve(lp);
  EXPECT_EQ(a.primal, b.primal);
  EXPECT_EQ(a.pivots, b.pivots);
}

}  // namespace
}  // namespace ewfs
