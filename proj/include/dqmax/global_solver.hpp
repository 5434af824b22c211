#pragma once

// Reduction of DQMax#SAT to a single Max#SAT instance: one selector
// variable per (maximizing variable, complete monomial over its dependency
// set), tied to the original variable by definition clauses.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dqmax/formula.hpp"
#include "dqmax/maxcount_oracle.hpp"

namespace dqmax {

struct SelectorGroup {
  Var max_var;
  std::vector<Var> support;
  std::vector<Var> selectors;  // indexed by canonical minterm index
};

struct SelectorMap {
  std::vector<SelectorGroup> groups;  // one per maximizing variable, in order
  std::map<std::uint32_t, std::pair<std::size_t, std::uint64_t>> reverse;

  std::vector<Var> all() const;
  // (group index, minterm index) of a selector.
  std::optional<std::pair<std::size_t, std::uint64_t>> lookup(Var selector) const;
  void add_group(SelectorGroup group);
};

// For every minterm m of `support` with selector s:
// (!m | !x | s) and (!m | x | !s).
void add_definition_clauses(CnfFormula& f, Var x, std::span<const Var> support,
                            std::span<const Var> selectors);

struct Reduction {
  OracleRequest request;
  SelectorMap selectors;
};

struct GlobalOptions {
  std::size_t selector_budget = std::size_t{1} << 20;
  OracleOptions oracle;
};

// Throws BudgetExceeded when sum_i 2^|H_i| exceeds the budget.
Reduction build_reduction(const Problem& p, const GlobalOptions& options = {});

// Function of x_i = the minterms whose selector is true; support H_i.
SynthesizedSolution decode(const SelectorMap& sel, const Assignment& alpha);

SynthesizedSolution solve_global(const Problem& p, const GlobalOptions& options = {});

struct DqbfResult {
  bool satisfiable = false;
  SynthesizedSolution witness;
};

// Requires p.exist_vars to be empty (PreconditionViolation otherwise).
// Satisfiable iff the optimum reaches 2^|Y|.
DqbfResult solve_dqbf(const Problem& p, const GlobalOptions& options = {});

}  // namespace dqmax
