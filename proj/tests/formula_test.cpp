#include <gtest/gtest.h>

#include <random>

#include "dqmax/error.hpp"
#include "dqmax/formula.hpp"
#include "support.hpp"

using namespace dqmax;
using dqmax::testing::from_bits;
using dqmax::testing::vars;

TEST(Clause, SortsAndDeduplicates) {
  Clause c{3, -1, 3, 2};
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c.lits()[0].to_dimacs(), -1);
  EXPECT_EQ(c.lits()[1].to_dimacs(), 2);
  EXPECT_EQ(c.lits()[2].to_dimacs(), 3);
  EXPECT_FALSE(c.is_tautology());
}

TEST(Clause, FlagsTautology) {
  EXPECT_TRUE((Clause{1, -2, 2}).is_tautology());
  CnfFormula f;
  EXPECT_FALSE(f.add({1, -1}));
  EXPECT_EQ(f.size(), 0u);
}

TEST(Lit, NegationIsInvolution) {
  for (int v : {1, -1, 7, -42}) {
    const Lit l = Lit::from_dimacs(v);
    EXPECT_EQ(~~l, l);
    EXPECT_NE(~l, l);
    EXPECT_EQ((~l).to_dimacs(), -v);
  }
}

TEST(Cofactor, FalsifiedUnitGivesEmptyClause) {
  CnfFormula f;
  f.add({1});
  EXPECT_TRUE(cofactor(f, Var(1), false).has_empty_clause());
}

TEST(Cofactor, UnitPropagationIdentity) {
  CnfFormula f;  // (u | a) & (!u | b), u = 1, a = 2, b = 3
  f.add({1, 2});
  f.add({-1, 3});
  const auto g = cofactor(f, Var(1), true);
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g.clauses()[0], (Clause{3}));
}

TEST(Cofactor, FirstSplitOfRunningExample) {
  const Problem p = dqmax::testing::load("ex1.dqm");
  const auto g = cofactor(cofactor(p.cnf, Var(4), true), Var(5), true);
  for (const auto& c : g.clauses())
    for (Lit l : c.lits()) {
      EXPECT_NE(l.var(), Var(4));
      EXPECT_NE(l.var(), Var(5));
    }
  // Remaining constraint: y1 & y2 and x1 <=> y1.
  EXPECT_EQ(dqmax::testing::naive_count(g, vars({2, 3})), 1u);
}

TEST(Cofactor, CommutesOnRandomFormulas) {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 100; ++round) {
    CnfFormula f(6);
    for (int c = 0; c < 10; ++c) {
      std::vector<Lit> lits;
      for (int k = 0; k < 3; ++k)
        lits.emplace_back(Var(1 + rng() % 6), rng() % 2 == 0);
      f.add(Clause(std::move(lits)));
    }
    const Var u(1 + rng() % 6);
    Var v(1 + rng() % 6);
    if (v == u) v = Var(u.id % 6 + 1);
    const bool b = rng() % 2;
    EXPECT_EQ(cofactor(cofactor(f, u, true), v, b).canonical_clauses(),
              cofactor(cofactor(f, v, b), u, true).canonical_clauses());
  }
}

TEST(Minterms, CanonicalOrder) {
  const auto ms = minterms_of(vars({4, 5}));
  ASSERT_EQ(ms.size(), 4u);
  EXPECT_EQ(ms[0].to_string(), "4&5");
  EXPECT_EQ(ms[1].to_string(), "4&!5");
  EXPECT_EQ(ms[2].to_string(), "!4&5");
  EXPECT_EQ(ms[3].to_string(), "!4&!5");
  for (std::uint64_t k = 0; k < 4; ++k) EXPECT_EQ(minterm_index(ms[k]), k);
}

TEST(Minterms, EmptyAndSingleton) {
  const auto e = minterms_of({});
  ASSERT_EQ(e.size(), 1u);
  EXPECT_EQ(e[0].size(), 0u);
  const auto s = minterms_of(vars({9}));
  ASSERT_EQ(s.size(), 2u);
  EXPECT_TRUE(s[0].lits()[0].positive());
  EXPECT_FALSE(s[1].lits()[0].positive());
}

TEST(Minterms, RejectDuplicates) {
  EXPECT_THROW(minterms_of(vars({1, 1})), Error);
}

TEST(Minterms, PartitionTheSpace) {
  for (std::uint32_t h = 0; h <= 4; ++h) {
    std::vector<Var> support;
    for (std::uint32_t j = 1; j <= h; ++j) support.emplace_back(j);
    const auto ms = minterms_of(support);
    EXPECT_EQ(ms.size(), std::size_t{1} << h);
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << h); ++code) {
      const Assignment a = from_bits(support, code);
      int hits = 0;
      for (const auto& m : ms) hits += m.satisfied_by(a);
      EXPECT_EQ(hits, 1);
      EXPECT_TRUE(ms[minterm_index(support, a)].satisfied_by(a));
    }
  }
}

TEST(BooleanFunction, TruthTableRoundTrip) {
  const auto support = vars({2, 5, 7});
  for (std::uint64_t bits = 0; bits < 256; bits += 37) {
    std::vector<bool> table(8);
    for (int k = 0; k < 8; ++k) table[k] = (bits >> k) & 1u;
    const auto f = BooleanFunction::from_truth_table(support, table);
    EXPECT_EQ(f.truth_table(), table);
  }
}

TEST(Substitution, ConstantTrueMatchesUnitClause) {
  Problem p = dqmax::testing::load("ex1.dqm");
  SynthesizedSolution s;
  s.functions.push_back({Var(1), BooleanFunction::constant(true)});
  CnfFormula with_unit = p.cnf;
  with_unit.add({1});
  EXPECT_EQ(dqmax::testing::naive_count(apply_substitution(p, s), p.count_vars),
            dqmax::testing::naive_count(with_unit, p.count_vars));
}

TEST(Substitution, RejectsSupportOutsideDependencies) {
  Problem p = dqmax::testing::load("ex1.dqm");
  SynthesizedSolution s;
  s.functions.push_back({Var(1), BooleanFunction::from_indices(vars({2}), {0})});
  try {
    apply_substitution(p, s);
    FAIL() << "expected a dependency violation";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DependencyViolation);
  }
}

// For every total assignment over Y u Z: it satisfies the substituted CNF
// (with x_i fixed by its definition) iff the original CNF holds with x_i set
// to its function's value.
TEST(Substitution, AgreesWithPointwiseEvaluation) {
  std::mt19937_64 rng(11);
  dqmax::testing::RandomShape shape;
  shape.vars = 7;
  for (int round = 0; round < 60; ++round) {
    const Problem p = dqmax::testing::random_problem(rng, shape);
    SynthesizedSolution s;
    for (std::size_t i = 0; i < p.max_vars.size(); ++i) {
      std::vector<bool> table(std::size_t{1} << p.deps[i].size());
      for (auto&& bit : table) bit = rng() % 2;
      s.functions.push_back({p.max_vars[i], BooleanFunction::from_truth_table(p.deps[i], table)});
    }
    const CnfFormula sub = apply_substitution(p, s);
    std::vector<Var> free_vars = p.count_vars;
    free_vars.insert(free_vars.end(), p.exist_vars.begin(), p.exist_vars.end());
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << free_vars.size()); ++code) {
      Assignment a = from_bits(free_vars, code);
      for (const auto& f : s.functions) a.set(f.var, f.fn.evaluate(a));
      EXPECT_EQ(dqmax::testing::eval_clauses(sub, a), dqmax::testing::eval_clauses(p.cnf, a));
    }
  }
}

TEST(Problem, ValidateRejectsOverlappingRoles) {
  Problem p = dqmax::testing::load("ex1.dqm");
  p.count_vars.push_back(Var(4));
  p.normalize();
  EXPECT_THROW(p.validate(), Error);
}

TEST(Problem, SelectorCount) {
  EXPECT_EQ(dqmax::testing::load("ex1.dqm").selector_count(), 4u);
  EXPECT_EQ(dqmax::testing::load("ex2.dqm").selector_count(), 4u);
}
