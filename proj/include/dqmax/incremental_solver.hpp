#pragma once

// Incremental method: start with constant functions and grow one
// dependency set by one variable per step, splitting each selector of the
// chosen function in two. Each step re-solves a Max#SAT instance seeded with
// the previous optimum and a filter excluding assignments that cannot beat
// it.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dqmax/formula.hpp"
#include "dqmax/global_solver.hpp"
#include "dqmax/maxcount_oracle.hpp"

namespace dqmax {

enum class ExpansionStrategy {
  RoundRobin,        // cycle over the unfinished functions
  FixedOrder,        // finish x_1 first, then x_2, ...
  LargestRemaining,  // function with most missing dependencies
};

std::optional<ExpansionStrategy> parse_strategy(const std::string& tag);
std::string to_string(ExpansionStrategy s);

struct ExpansionPolicy {
  ExpansionStrategy strategy = ExpansionStrategy::RoundRobin;
};

struct IterationRecord {
  std::size_t iteration = 0;          // 1-based oracle call number
  std::optional<Var> expanded_var;    // x_i expanded before this call
  std::optional<Var> expanded_on;     // u added to H'_i
  Count count = 0;
  double elapsed_ms = 0;              // since the start of the run
  SynthesizedSolution solution;       // anytime solution over H'_i
  OracleStats stats;
};

namespace incremental {

struct State {
  Problem problem;
  std::vector<std::vector<Var>> partial_deps;  // H'_i, sorted
  SelectorMap selectors;                       // over H'_i
  CnfFormula objective;
  Assignment incumbent;
  CnfFormula filter;
  std::size_t iteration = 0;
  std::size_t last_expanded = SIZE_MAX;  // for round-robin
  bool filter_dropped = false;           // distribution exceeded the cap

  bool complete() const;
  // (i0, u) per the policy; nullopt once every H'_i = H_i.
  std::optional<std::pair<std::size_t, Var>> choose(const ExpansionPolicy& policy) const;
  OracleRequest request() const;
};

State init(const Problem& p);

// Splits every selector of x_{i0} on u, rewriting the clauses that mention
// it, duplicating the incumbent onto both halves and rebuilding the filter.
// A filter whose CNF would exceed filter_cap clauses is replaced by true.
// Throws PreconditionViolation unless u is in H_{i0} but not yet in H'_{i0}.
State expand(State st, std::size_t i0, Var u, std::size_t filter_cap = std::size_t{1} << 16);

}  // namespace incremental

struct IncrementalOptions {
  ExpansionPolicy policy;
  std::optional<std::size_t> budget;  // max oracle calls
  OracleOptions oracle;
  std::size_t filter_cap = std::size_t{1} << 16;
  std::function<void(const IterationRecord&)> on_iteration;
};

struct IncrementalResult {
  SynthesizedSolution solution;
  std::vector<IterationRecord> trace;
  bool complete = false;  // false when stopped by the budget
  bool filter_dropped = false;
};

IncrementalResult solve_incremental(const Problem& p, const IncrementalOptions& options = {});

}  // namespace dqmax
