#include "dqmax/global_solver.hpp"

#include <algorithm>

#include "dqmax/error.hpp"

namespace dqmax {

std::vector<Var> SelectorMap::all() const {
  std::vector<Var> out;
  for (const auto& g : groups) out.insert(out.end(), g.selectors.begin(), g.selectors.end());
  return out;
}

std::optional<std::pair<std::size_t, std::uint64_t>> SelectorMap::lookup(
    Var selector) const {
  auto it = reverse.find(selector.id);
  if (it == reverse.end()) return std::nullopt;
  return it->second;
}

void SelectorMap::add_group(SelectorGroup group) {
  const std::size_t index = groups.size();
  for (std::uint64_t k = 0; k < group.selectors.size(); ++k)
    reverse[group.selectors[k].id] = {index, k};
  groups.push_back(std::move(group));
}

void add_definition_clauses(CnfFormula& f, Var x, std::span<const Var> support,
                            std::span<const Var> selectors) {
  for (std::uint64_t k = 0; k < selectors.size(); ++k) {
    auto negated = minterm_at(support, k).negation();
    auto with_neg = negated;
    with_neg.push_back(neg(x));
    with_neg.push_back(pos(selectors[k]));
    f.add(Clause(std::move(with_neg)));
    negated.push_back(pos(x));
    negated.push_back(neg(selectors[k]));
    f.add(Clause(std::move(negated)));
  }
}

Reduction build_reduction(const Problem& p, const GlobalOptions& options) {
  p.validate();
  const std::size_t needed = p.selector_count();
  if (needed > options.selector_budget)
    throw Error(ErrorKind::BudgetExceeded,
                "reduction needs " + (needed == SIZE_MAX ? std::string("too many")
                                                         : std::to_string(needed)) +
                    " selectors, budget is " + std::to_string(options.selector_budget));

  Reduction r;
  CnfFormula& phi = r.request.objective;
  phi = p.cnf;
  for (std::size_t i = 0; i < p.max_vars.size(); ++i) {
    SelectorGroup g{p.max_vars[i], p.deps[i], {}};
    const std::size_t width = std::size_t{1} << g.support.size();
    for (std::size_t k = 0; k < width; ++k) g.selectors.push_back(phi.fresh_var());
    r.selectors.add_group(std::move(g));
  }
  for (const auto& g : r.selectors.groups)
    add_definition_clauses(phi, g.max_var, g.support, g.selectors);

  r.request.max_vars = r.selectors.all();
  r.request.count_vars = p.count_vars;
  r.request.exist_vars = p.exist_vars;
  r.request.exist_vars.insert(r.request.exist_vars.end(), p.max_vars.begin(),
                              p.max_vars.end());
  std::sort(r.request.exist_vars.begin(), r.request.exist_vars.end());
  for (Var s : r.request.max_vars) r.request.incumbent.set(s, false);
  return r;
}

SynthesizedSolution decode(const SelectorMap& sel, const Assignment& alpha) {
  SynthesizedSolution s;
  for (const auto& g : sel.groups) {
    std::vector<std::uint64_t> chosen;
    for (std::uint64_t k = 0; k < g.selectors.size(); ++k)
      if (alpha.value(g.selectors[k])) chosen.push_back(k);
    s.functions.push_back({g.max_var, BooleanFunction::from_indices(g.support, chosen)});
  }
  return s;
}

SynthesizedSolution solve_global(const Problem& p, const GlobalOptions& options) {
  const Reduction r = build_reduction(p, options);
  const OracleResult best = max_count(r.request, options.oracle);
  SynthesizedSolution s = decode(r.selectors, best.best);
  s.achieved_count = best.best_count;
  s.total = pow2(p.count_vars.size());
  return s;
}

DqbfResult solve_dqbf(const Problem& p, const GlobalOptions& options) {
  if (!p.exist_vars.empty())
    throw Error(ErrorKind::PreconditionViolation,
                "DQBF embedding requires an empty existential set");
  DqbfResult r;
  r.witness = solve_global(p, options);
  r.satisfiable = *r.witness.achieved_count == r.witness.total;
  return r;
}

}  // namespace dqmax
