#include "dqmax/local_solver.hpp"

#include <algorithm>

#include "dqmax/error.hpp"
#include "dqmax/projected_counter.hpp"
#include "dqmax/sat_engine.hpp"
#include "dqmax/workers.hpp"

namespace dqmax {

bool functionally_dependent(const CnfFormula& f, Var u, std::span<const Var> count_vars) {
  const std::uint32_t n = std::max(f.num_vars(), u.id);
  std::vector<bool> shared(n + 1, false);
  for (Var y : count_vars)
    if (y.id <= n) shared[y.id] = true;
  auto copy = [&](Lit l) {
    const auto id = l.var().id;
    return shared[id] ? l : Lit(Var(id + n), l.positive());
  };
  CnfFormula twin(2 * n);
  for (const auto& c : f.clauses()) {
    twin.add(c);
    std::vector<Lit> lits;
    for (Lit l : c.lits()) lits.push_back(copy(l));
    twin.add(Clause(std::move(lits)));
  }
  const Lit u2 = copy(pos(u));
  twin.add(Clause(std::vector<Lit>{pos(u), u2}));
  twin.add(Clause(std::vector<Lit>{neg(u), ~u2}));
  return !solve(twin).sat();
}

Assignment SplitPlan::leaf_assignment(std::size_t leaf) const {
  Assignment a;
  const std::size_t k = split_vars.size();
  for (std::size_t j = 0; j < k; ++j) a.set(split_vars[j], !((leaf >> (k - 1 - j)) & 1u));
  return a;
}

SplitPlan plan_split(const Problem& p, std::size_t leaf_budget) {
  p.validate();
  if (p.max_vars.empty())
    throw Error(ErrorKind::NoEligibleVariable, "no maximizing variables to split for");
  std::vector<Var> common = p.deps[0];
  for (std::size_t i = 1; i < p.deps.size(); ++i) {
    std::vector<Var> next;
    std::set_intersection(common.begin(), common.end(), p.deps[i].begin(), p.deps[i].end(),
                          std::back_inserter(next));
    common = std::move(next);
  }
  SplitPlan plan;
  for (Var u : common)
    if (p.is_count_var(u) || functionally_dependent(p.cnf, u, p.count_vars))
      plan.eligible.push_back(u);
  if (plan.eligible.empty())
    throw Error(ErrorKind::NoEligibleVariable,
                "no common dependency is a counting or functionally dependent variable");

  std::size_t k = 0;
  while (k < plan.eligible.size() && (std::size_t{1} << (k + 1)) <= leaf_budget) ++k;
  if (k == 0) k = 1;
  plan.split_vars.assign(plan.eligible.begin(), plan.eligible.begin() + static_cast<std::ptrdiff_t>(k));

  auto without = [&](const std::vector<Var>& vars) {
    std::vector<Var> out;
    for (Var v : vars)
      if (!std::binary_search(plan.split_vars.begin(), plan.split_vars.end(), v))
        out.push_back(v);
    return out;
  };
  for (std::size_t leaf = 0; leaf < (std::size_t{1} << k); ++leaf) {
    const Assignment fixed = plan.leaf_assignment(leaf);
    Problem sub;
    sub.cnf = p.cnf;
    for (Var u : plan.split_vars) sub.cnf = cofactor(sub.cnf, u, fixed.value(u));
    sub.max_vars = p.max_vars;
    sub.count_vars = without(p.count_vars);
    sub.exist_vars = without(p.exist_vars);
    for (const auto& h : p.deps) sub.deps.push_back(without(h));
    plan.leaves.push_back(std::move(sub));
  }
  return plan;
}

LocalResult solve_local(const Problem& p, const LocalOptions& options) {
  LocalResult result;
  result.plan = plan_split(p, options.leaf_budget);
  const auto& plan = result.plan;
  const std::size_t leaves = plan.leaves.size();
  result.leaf_solutions.resize(leaves);

  const unsigned workers = resolve_workers(options.workers);
  GlobalOptions global = options.global;
  IncrementalOptions incremental = options.incremental;
  if (workers > 1) {
    global.oracle.workers = 1;
    incremental.oracle.workers = 1;
  }
  parallel_for(leaves, workers, [&](std::size_t leaf) {
    const Problem& sub = plan.leaves[leaf];
    result.leaf_solutions[leaf] = options.leaf == LeafMethod::Global
                                      ? solve_global(sub, global)
                                      : solve_incremental(sub, incremental).solution;
  });

  Count sum = 0;
  for (const auto& s : result.leaf_solutions) sum += *s.achieved_count;

  SynthesizedSolution& out = result.solution;
  const std::size_t k = plan.split_vars.size();
  for (std::size_t i = 0; i < p.max_vars.size(); ++i) {
    const auto& support = p.deps[i];
    std::vector<std::uint64_t> chosen;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << support.size()); ++m) {
      const Monomial minterm = minterm_at(support, m);
      Assignment point;
      for (Lit l : minterm.lits()) point.set(l);
      std::size_t leaf = 0;
      for (std::size_t j = 0; j < k; ++j)
        leaf = (leaf << 1) | (point.value(plan.split_vars[j]) ? 0u : 1u);
      if (result.leaf_solutions[leaf].functions[i].fn.evaluate(point)) chosen.push_back(m);
    }
    out.functions.push_back({p.max_vars[i], BooleanFunction::from_indices(support, chosen)});
  }
  out.total = pow2(p.count_vars.size());
  const Count recount = check_solution(p, out);
  if (recount != sum)
    throw Error(ErrorKind::VerificationMismatch,
                "leaf counts sum to " + sum.str() + " but the recombined solution scores " +
                    recount.str());
  out.achieved_count = sum;
  return result;
}

}  // namespace dqmax
