#pragma once

// Exact Max#SAT oracle: pick values for the maximizing variables so that
// the Y-projected count of the objective is largest, searching inside the
// filter and always comparing against the incumbent.

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "dqmax/formula.hpp"

namespace dqmax {

struct OracleRequest {
  std::vector<Var> max_vars;
  std::vector<Var> count_vars;
  std::vector<Var> exist_vars;
  CnfFormula objective;
  Assignment incumbent;  // total over max_vars
  CnfFormula filter;     // over max_vars only; no clauses means true
};

struct OracleStats {
  std::uint64_t nodes = 0;
  std::uint64_t sat_calls = 0;
};

struct OracleResult {
  Assignment best;
  Count best_count = 0;
  Count bound = 0;  // count with the maximizing variables left free
  OracleStats stats;
};

struct OracleOptions {
  unsigned workers = 0;  // see resolve_workers
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

// The search space is the models of the filter plus the incumbent. Ties
// go to the incumbent, then to the lexicographically smallest assignment
// (variables by id, false before true). A filter holding the empty clause
// leaves only the incumbent. Throws MalformedRequest when the filter
// mentions other variables or the incumbent is partial or violates a
// satisfiable-looking filter; Timeout when the deadline passes.
OracleResult max_count(const OracleRequest& req, const OracleOptions& options = {});

// Reference optimum by enumerating every tuple of minterm sets. Selector
// vectors are visited in lexicographic order (first maximizing variable,
// first canonical minterm most significant) and only strict improvements
// are kept. Throws InstanceTooLarge when sum_i 2^|H_i| > 20.
SynthesizedSolution brute_force_dqmaxsat(const Problem& p);

}  // namespace dqmax
