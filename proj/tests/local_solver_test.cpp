#include <gtest/gtest.h>

#include <random>

#include "dqmax/error.hpp"
#include "dqmax/local_solver.hpp"
#include "dqmax/maxcount_oracle.hpp"
#include "dqmax/projected_counter.hpp"
#include "support.hpp"

using namespace dqmax;
using dqmax::testing::vars;

namespace {

// Brute-force search for two models agreeing on ys and differing on u.
bool naive_dependent(const CnfFormula& f, Var u, const std::vector<Var>& ys) {
  const auto vs = dqmax::testing::all_vars(std::max(f.num_vars(), u.id));
  std::vector<Assignment> models;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << vs.size()); ++code) {
    const Assignment a = dqmax::testing::from_bits(vs, code);
    if (dqmax::testing::eval_clauses(f, a)) models.push_back(a);
  }
  for (const auto& a : models)
    for (const auto& b : models) {
      if (a.value(u) == b.value(u)) continue;
      bool agree = true;
      for (Var y : ys) agree &= a.value(y) == b.value(y);
      if (agree) return false;
    }
  return true;
}

}  // namespace

TEST(FunctionalDependency, Examples) {
  const Problem p1 = dqmax::testing::load("ex1.dqm");
  EXPECT_TRUE(functionally_dependent(p1.cnf, Var(4), p1.count_vars));
  EXPECT_TRUE(functionally_dependent(p1.cnf, Var(5), p1.count_vars));
  CnfFormula free_z(2);
  free_z.add({1});
  EXPECT_FALSE(functionally_dependent(free_z, Var(2), vars({1})));
  const Problem p2 = dqmax::testing::load("ex2.dqm");
  EXPECT_FALSE(functionally_dependent(p2.cnf, Var(5), p2.count_vars));
  EXPECT_FALSE(naive_dependent(p2.cnf, Var(5), p2.count_vars));
}

TEST(FunctionalDependency, ConservativeOnRandomFormulas) {
  std::mt19937_64 rng(51);
  dqmax::testing::RandomShape shape;
  shape.vars = 8;
  int positives = 0;
  for (int round = 0; round < 200; ++round) {
    const Problem p = dqmax::testing::random_problem(rng, shape);
    for (Var z : p.exist_vars) {
      if (functionally_dependent(p.cnf, z, p.count_vars)) {
        ++positives;
        EXPECT_TRUE(naive_dependent(p.cnf, z, p.count_vars));
      }
    }
  }
  EXPECT_GT(positives, 0);
}

TEST(PlanSplit, RunningExample) {
  const Problem p = dqmax::testing::load("ex1.dqm");
  const auto plan = plan_split(p);
  EXPECT_EQ(plan.split_vars, vars({4, 5}));
  ASSERT_EQ(plan.leaves.size(), 4u);
  // Leaf 0 fixes z1 = z2 = true: y1 & y2 remain, x1 <=> y1.
  EXPECT_TRUE(plan.leaf_assignment(0).value(Var(4)));
  EXPECT_TRUE(plan.leaf_assignment(0).value(Var(5)));
  EXPECT_FALSE(plan.leaf_assignment(3).value(Var(4)));
  for (const auto& leaf : plan.leaves) {
    EXPECT_TRUE(leaf.exist_vars.empty());
    EXPECT_TRUE(leaf.deps[0].empty());
  }
}

TEST(PlanSplit, NoEligibleVariable) {
  for (const char* name : {"ex2.dqm"}) {
    try {
      plan_split(dqmax::testing::load(name));
      FAIL() << name;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::NoEligibleVariable);
    }
  }
  Problem none;
  none.cnf = CnfFormula(1);
  none.count_vars = vars({1});
  EXPECT_THROW(plan_split(none), Error);
}

TEST(PlanSplit, LeafBudgetTakesPrefix) {
  const auto plan = plan_split(dqmax::testing::load("ex1.dqm"), 2);
  EXPECT_EQ(plan.eligible, vars({4, 5}));
  EXPECT_EQ(plan.split_vars, vars({4}));
  EXPECT_EQ(plan.leaves.size(), 2u);
}

TEST(SolveLocal, RunningExample) {
  const Problem p = dqmax::testing::load("ex1.dqm");
  const auto res = solve_local(p);
  ASSERT_EQ(res.leaf_solutions.size(), 4u);
  const auto value = [&](std::size_t leaf) {
    return res.leaf_solutions[leaf].functions[0].fn.evaluate(Assignment());
  };
  EXPECT_TRUE(value(0));
  EXPECT_FALSE(value(3));
  std::vector<Count> counts;
  for (const auto& s : res.leaf_solutions) counts.push_back(*s.achieved_count);
  EXPECT_EQ(counts, (std::vector<Count>{1, 1, 0, 1}));
  EXPECT_EQ(*res.solution.achieved_count, 3);
  EXPECT_EQ(res.solution.total, 4);
  EXPECT_EQ(check_solution(p, res.solution), 3);
}

TEST(SolveLocal, IncrementalLeavesAgree) {
  const Problem p = dqmax::testing::load("ex1.dqm");
  LocalOptions o;
  o.leaf = LeafMethod::Incremental;
  EXPECT_EQ(*solve_local(p, o).solution.achieved_count, 3);
}

TEST(SolveLocal, SplitOnCountingVariable) {
  // max^{y1} x. R y1 y2. (x <=> y1) & (y2 | x): optimum 4.
  Problem p;
  p.cnf = CnfFormula(3);
  p.cnf.add({-1, 2});
  p.cnf.add({1, -2});
  p.cnf.add({1, 3});
  p.max_vars = vars({1});
  p.count_vars = vars({2, 3});
  p.deps = {vars({2})};
  const auto plan = plan_split(p);
  Count spaces = 0;
  for (const auto& leaf : plan.leaves) spaces += pow2(leaf.count_vars.size());
  EXPECT_EQ(spaces, pow2(p.count_vars.size()));
  const auto res = solve_local(p);
  EXPECT_EQ(*res.solution.achieved_count, *brute_force_dqmaxsat(p).achieved_count);
}

TEST(SolveLocal, AgreesWithOtherMethodsOnRandomInstances) {
  std::mt19937_64 rng(52);
  dqmax::testing::RandomShape shape;
  shape.vars = 9;
  shape.max_deps = 3;
  int applicable = 0;
  for (int round = 0; round < 150 && applicable < 40; ++round) {
    const Problem p = dqmax::testing::random_problem(rng, shape);
    LocalResult res;
    try {
      res = solve_local(p);
    } catch (const Error& e) {
      ASSERT_EQ(e.kind(), ErrorKind::NoEligibleVariable);
      continue;
    }
    ++applicable;
    const Count global = *solve_global(p).achieved_count;
    EXPECT_EQ(*res.solution.achieved_count, global) << round;
    EXPECT_EQ(*solve_incremental(p).solution.achieved_count, global) << round;
    LocalOptions parallel;
    parallel.workers = 3;
    EXPECT_EQ(*solve_local(p, parallel).solution.achieved_count, global);
  }
  EXPECT_GT(applicable, 10);
}
