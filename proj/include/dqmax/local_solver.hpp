#pragma once

// Local method: split on variables common to every dependency set, solve
// each cofactor sub-problem on its own and glue the leaf functions back
// together by Shannon expansion. Leaf counts add up.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dqmax/formula.hpp"
#include "dqmax/global_solver.hpp"
#include "dqmax/incremental_solver.hpp"

namespace dqmax {

// True iff no two models of f agree on count_vars and differ on u. Every
// variable outside count_vars (maximizing ones included) is renamed in the
// second copy, so the answer holds for every substitution of X.
bool functionally_dependent(const CnfFormula& f, Var u, std::span<const Var> count_vars);

struct SplitPlan {
  std::vector<Var> eligible;    // every eligible common variable, by id
  std::vector<Var> split_vars;  // prefix of `eligible` within the leaf budget
  // Leaf l fixes split_vars[j] to true iff bit (k-1-j) of l is clear.
  std::vector<Problem> leaves;

  Assignment leaf_assignment(std::size_t leaf) const;
};

// Throws NoEligibleVariable when there are no maximizing variables or no
// common dependency passes the side condition.
SplitPlan plan_split(const Problem& p, std::size_t leaf_budget = 64);

enum class LeafMethod { Global, Incremental };

struct LocalOptions {
  LeafMethod leaf = LeafMethod::Global;
  std::size_t leaf_budget = 64;
  unsigned workers = 0;  // leaves in flight; see resolve_workers
  GlobalOptions global;
  IncrementalOptions incremental;
};

struct LocalResult {
  SynthesizedSolution solution;
  SplitPlan plan;
  std::vector<SynthesizedSolution> leaf_solutions;  // by leaf index
};

// Throws VerificationMismatch if the recombined function's recount differs
// from the sum of the leaf counts.
LocalResult solve_local(const Problem& p, const LocalOptions& options = {});

}  // namespace dqmax
