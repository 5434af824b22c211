#include <gtest/gtest.h>

#include <random>

#include "dqmax/error.hpp"
#include "dqmax/incremental_solver.hpp"
#include "dqmax/maxcount_oracle.hpp"
#include "dqmax/projected_counter.hpp"
#include "support.hpp"

using namespace dqmax;
using dqmax::testing::vars;

TEST(IncrementalInit, OneSelectorPerVariable) {
  const Problem p = dqmax::testing::load("ex1.dqm");
  const auto st = incremental::init(p);
  ASSERT_EQ(st.selectors.groups.size(), 1u);
  const Var s = st.selectors.groups[0].selectors[0];
  EXPECT_EQ(s, Var(6));
  EXPECT_EQ(st.objective.size(), p.cnf.size() + 2);
  const auto canon = st.objective.canonical_clauses();
  EXPECT_TRUE(std::binary_search(canon.begin(), canon.end(), Clause{-1, 6}));
  EXPECT_TRUE(std::binary_search(canon.begin(), canon.end(), Clause{1, -6}));
  EXPECT_FALSE(st.incumbent.value(s));
  EXPECT_TRUE(st.filter.clauses().empty());

  const auto st2 = incremental::init(dqmax::testing::load("ex2.dqm"));
  EXPECT_EQ(st2.selectors.all().size(), 2u);

  Problem empty;
  empty.cnf = CnfFormula(1);
  empty.count_vars = vars({1});
  EXPECT_TRUE(incremental::init(empty).complete());
}

TEST(IncrementalExpand, RewritesDefinitionAndDuplicatesIncumbent) {
  const Problem p = dqmax::testing::load("ex1.dqm");
  auto st = incremental::init(p);
  const Count before = check_solution(p, decode(st.selectors, st.incumbent));
  st = incremental::expand(std::move(st), 0, Var(4));
  const auto& g = st.selectors.groups[0];
  ASSERT_EQ(g.support, vars({4}));
  ASSERT_EQ(g.selectors.size(), 2u);
  for (Var s : g.selectors) EXPECT_FALSE(st.incumbent.value(s));
  EXPECT_EQ(check_solution(p, decode(st.selectors, st.incumbent)), before);
  EXPECT_EQ(before, 2);

  // The objective is Phi & (x1 <=> a & z1 | b & !z1) for every value of a, b.
  for (std::uint64_t code = 0; code < 4; ++code) {
    const Assignment sel = dqmax::testing::from_bits(g.selectors, code);
    for (std::uint64_t pt = 0; pt < 32; ++pt) {
      Assignment a = dqmax::testing::from_bits(dqmax::testing::all_vars(5), pt);
      for (Lit l : sel.lits()) a.set(l);
      const bool def = a.value(Var(1)) ==
                       (a.value(Var(4)) ? sel.value(g.selectors[0]) : sel.value(g.selectors[1]));
      EXPECT_EQ(dqmax::testing::eval_clauses(st.objective, a),
                def && dqmax::testing::eval_clauses(p.cnf, a));
    }
  }
}

TEST(IncrementalExpand, RejectsInvalidVariable) {
  const Problem p = dqmax::testing::load("ex1.dqm");
  auto st = incremental::init(p);
  EXPECT_THROW(incremental::expand(st, 0, Var(2)), Error);
  st = incremental::expand(std::move(st), 0, Var(4));
  EXPECT_THROW(incremental::expand(st, 0, Var(4)), Error);
}

// Rewritten objectives stay equivalent to the semantic definition on
// random instances, whatever the expansion order.
TEST(IncrementalExpand, RewriteMatchesSemanticDefinition) {
  std::mt19937_64 rng(41);
  dqmax::testing::RandomShape shape;
  shape.vars = 6;
  shape.max_deps = 3;
  for (int round = 0; round < 25; ++round) {
    const Problem p = dqmax::testing::random_problem(rng, shape);
    auto st = incremental::init(p);
    while (auto next = st.choose({ExpansionStrategy::LargestRemaining})) {
      st = incremental::expand(std::move(st), next->first, next->second);
      const auto sel = st.selectors.all();
      if (sel.size() > 6) break;
      for (std::uint64_t code = 0; code < (std::uint64_t{1} << sel.size()); ++code) {
        const Assignment alpha = dqmax::testing::from_bits(sel, code);
        const auto sol = decode(st.selectors, alpha);
        EXPECT_EQ(dqmax::testing::naive_count_under(st.objective, p.count_vars, alpha),
                  dqmax::testing::naive_score(p, sol));
      }
    }
  }
}

TEST(SolveIncremental, RunningExampleTrace) {
  const Problem p = dqmax::testing::load("ex1.dqm");
  IncrementalOptions o;
  o.policy.strategy = ExpansionStrategy::FixedOrder;
  std::vector<std::size_t> seen;
  o.on_iteration = [&](const IterationRecord& r) { seen.push_back(r.iteration); };
  const auto res = solve_incremental(p, o);
  ASSERT_EQ(res.trace.size(), 3u);
  EXPECT_EQ(res.trace[0].count, 2);
  EXPECT_EQ(res.trace[1].count, 3);
  EXPECT_EQ(res.trace[2].count, 3);
  EXPECT_EQ(seen, (std::vector<std::size_t>{1, 2, 3}));
  EXPECT_FALSE(res.trace[0].expanded_var);
  EXPECT_EQ(*res.trace[1].expanded_on, Var(4));
  EXPECT_EQ(*res.trace[2].expanded_on, Var(5));
  // second call: x1 = z1 over support {z1}
  EXPECT_EQ(res.trace[1].solution.functions[0].fn.truth_table(),
            (std::vector<bool>{true, false}));
  EXPECT_TRUE(res.complete);
  EXPECT_EQ(*res.solution.achieved_count, 3);
  EXPECT_EQ(check_solution(p, res.solution), 3);
}

TEST(SolveIncremental, AnytimeAfterOneCall) {
  const Problem p = dqmax::testing::load("ex1.dqm");
  IncrementalOptions o;
  o.budget = 1;
  const auto res = solve_incremental(p, o);
  EXPECT_FALSE(res.complete);
  ASSERT_EQ(res.trace.size(), 1u);
  EXPECT_TRUE(res.solution.functions[0].fn.support.empty());
  EXPECT_TRUE(res.solution.functions[0].fn.minterms.empty());  // constant false
  EXPECT_EQ(check_solution(p, res.solution), 2);
}

TEST(SolveIncremental, SecondExampleCallCount) {
  const Problem p = dqmax::testing::load("ex2.dqm");
  const auto res = solve_incremental(p);
  EXPECT_EQ(res.trace.size(), 3u);
  EXPECT_EQ(*res.solution.achieved_count, *brute_force_dqmaxsat(p).achieved_count);
  EXPECT_EQ(check_solution(p, res.solution), 3);
}

TEST(SolveIncremental, InvariantsOnRandomInstances) {
  std::mt19937_64 rng(42);
  dqmax::testing::RandomShape shape;
  shape.vars = 9;
  for (int round = 0; round < 60; ++round) {
    const Problem p = dqmax::testing::random_problem(rng, shape);
    for (auto strategy : {ExpansionStrategy::RoundRobin, ExpansionStrategy::FixedOrder,
                          ExpansionStrategy::LargestRemaining}) {
      IncrementalOptions o;
      o.policy.strategy = strategy;
      const auto res = solve_incremental(p, o);
      std::size_t expected_calls = 1;
      for (const auto& h : p.deps) expected_calls += h.size();
      EXPECT_EQ(res.trace.size(), expected_calls);
      for (std::size_t k = 1; k < res.trace.size(); ++k)
        EXPECT_LE(res.trace[k - 1].count, res.trace[k].count);
      for (const auto& rec : res.trace)
        EXPECT_EQ(check_solution(p, rec.solution), rec.count);
      EXPECT_EQ(*res.solution.achieved_count, *brute_force_dqmaxsat(p).achieved_count)
          << "round " << round << " " << to_string(strategy);
    }
  }
}

// Each call's optimum equals the global optimum of the sub-problem with
// dependency sets H'_i.
TEST(SolveIncremental, IterationsMatchPartialGlobal) {
  for (const char* name : {"ex1.dqm", "ex2.dqm"}) {
    const Problem p = dqmax::testing::load(name);
    auto st = incremental::init(p);
    for (;;) {
      const auto res = max_count(st.request());
      Problem partial = p;
      partial.deps = st.partial_deps;
      EXPECT_EQ(res.best_count, *solve_global(partial).achieved_count) << name;
      st.incumbent = res.best;
      const auto next = st.choose({});
      if (!next) break;
      st = incremental::expand(std::move(st), next->first, next->second);
    }
  }
}

TEST(SolveIncremental, FilterFallbackStillOptimal) {
  const Problem p = dqmax::testing::load("ex1.dqm");
  IncrementalOptions o;
  o.filter_cap = 1;
  const auto res = solve_incremental(p, o);
  EXPECT_TRUE(res.filter_dropped);
  EXPECT_EQ(*res.solution.achieved_count, 3);
}
