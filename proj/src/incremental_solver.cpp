#include "dqmax/incremental_solver.hpp"

#include <algorithm>
#include <chrono>
#include <unordered_map>

#include "dqmax/error.hpp"

namespace dqmax {

std::optional<ExpansionStrategy> parse_strategy(const std::string& tag) {
  if (tag == "round-robin") return ExpansionStrategy::RoundRobin;
  if (tag == "fixed-order") return ExpansionStrategy::FixedOrder;
  if (tag == "largest-remaining") return ExpansionStrategy::LargestRemaining;
  return std::nullopt;
}

std::string to_string(ExpansionStrategy s) {
  switch (s) {
    case ExpansionStrategy::RoundRobin: return "round-robin";
    case ExpansionStrategy::FixedOrder: return "fixed-order";
    case ExpansionStrategy::LargestRemaining: return "largest-remaining";
  }
  return "round-robin";
}

namespace incremental {

bool State::complete() const {
  for (std::size_t i = 0; i < partial_deps.size(); ++i)
    if (partial_deps[i].size() != problem.deps[i].size()) return false;
  return true;
}

std::optional<std::pair<std::size_t, Var>> State::choose(
    const ExpansionPolicy& policy) const {
  const std::size_t n = partial_deps.size();
  auto remaining = [&](std::size_t i) {
    return problem.deps[i].size() - partial_deps[i].size();
  };
  std::optional<std::size_t> pick;
  switch (policy.strategy) {
    case ExpansionStrategy::RoundRobin: {
      const std::size_t start = last_expanded == SIZE_MAX ? 0 : (last_expanded + 1) % n;
      for (std::size_t step = 0; step < n && !pick; ++step) {
        const std::size_t i = (start + step) % n;
        if (remaining(i) > 0) pick = i;
      }
      break;
    }
    case ExpansionStrategy::FixedOrder:
      for (std::size_t i = 0; i < n && !pick; ++i)
        if (remaining(i) > 0) pick = i;
      break;
    case ExpansionStrategy::LargestRemaining:
      for (std::size_t i = 0; i < n; ++i)
        if (remaining(i) > 0 && (!pick || remaining(i) > remaining(*pick))) pick = i;
      break;
  }
  if (!pick) return std::nullopt;
  for (Var u : problem.deps[*pick])
    if (!std::binary_search(partial_deps[*pick].begin(), partial_deps[*pick].end(), u))
      return std::make_pair(*pick, u);
  return std::nullopt;
}

OracleRequest State::request() const {
  OracleRequest req;
  req.max_vars = selectors.all();
  req.count_vars = problem.count_vars;
  req.exist_vars = problem.exist_vars;
  req.exist_vars.insert(req.exist_vars.end(), problem.max_vars.begin(),
                        problem.max_vars.end());
  std::sort(req.exist_vars.begin(), req.exist_vars.end());
  req.objective = objective;
  req.incumbent = incumbent;
  req.filter = filter;
  return req;
}

State init(const Problem& p) {
  p.validate();
  State st;
  st.problem = p;
  st.partial_deps.assign(p.max_vars.size(), {});
  st.objective = p.cnf;
  for (Var x : p.max_vars) {
    const Var s = st.objective.fresh_var();
    st.selectors.add_group({x, {}, {s}});
    add_definition_clauses(st.objective, x, {}, std::vector<Var>{s});
    st.incumbent.set(s, false);
  }
  return st;
}

State expand(State st, std::size_t i0, Var u, std::size_t filter_cap) {
  if (i0 >= st.partial_deps.size())
    throw Error(ErrorKind::PreconditionViolation, "no such maximizing variable");
  const auto& full = st.problem.deps[i0];
  auto& partial = st.partial_deps[i0];
  if (!std::binary_search(full.begin(), full.end(), u) ||
      std::binary_search(partial.begin(), partial.end(), u))
    throw Error(ErrorKind::PreconditionViolation,
                "variable " + std::to_string(u.id) + " cannot extend the dependency set");

  const SelectorGroup old = st.selectors.groups[i0];
  const std::size_t h = old.support.size();
  const auto position = static_cast<std::size_t>(
      std::lower_bound(old.support.begin(), old.support.end(), u) - old.support.begin());
  const std::size_t low_bits = h - position;

  SelectorGroup grown{old.max_var, old.support, {}};
  grown.support.insert(grown.support.begin() + static_cast<std::ptrdiff_t>(position), u);
  grown.selectors.resize(2 * old.selectors.size());
  std::unordered_map<std::uint32_t, std::pair<Var, Var>> split;  // old -> (m.u, m.!u)
  std::vector<std::pair<Var, Var>> pairs;
  for (std::uint64_t k = 0; k < old.selectors.size(); ++k) {
    const Var with_u = st.objective.fresh_var();
    const Var with_not_u = st.objective.fresh_var();
    const std::uint64_t high = k >> low_bits;
    const std::uint64_t low = k & ((std::uint64_t{1} << low_bits) - 1);
    const std::uint64_t base = (high << (low_bits + 1)) | low;
    grown.selectors[base] = with_u;
    grown.selectors[base | (std::uint64_t{1} << low_bits)] = with_not_u;
    split[old.selectors[k].id] = {with_u, with_not_u};
    pairs.emplace_back(with_u, with_not_u);
  }

  // Clause rewrites: x_m replaced by (x_mu & u) | (x_m!u & !u).
  CnfFormula rewritten(st.objective.num_vars());
  std::vector<Clause> work(st.objective.clauses().rbegin(), st.objective.clauses().rend());
  while (!work.empty()) {
    Clause c = std::move(work.back());
    work.pop_back();
    std::optional<Lit> hit;
    for (Lit l : c.lits())
      if (split.count(l.var().id)) {
        hit = l;
        break;
      }
    if (!hit) {
      rewritten.add(std::move(c));
      continue;
    }
    std::vector<Lit> psi;
    for (Lit l : c.lits())
      if (l != *hit) psi.push_back(l);
    const auto [a, b] = split.at(hit->var().id);
    auto with = [&](std::initializer_list<Lit> extra) {
      std::vector<Lit> lits = psi;
      lits.insert(lits.end(), extra);
      return Clause(std::move(lits));
    };
    std::vector<Clause> produced;
    if (hit->positive()) {
      produced = {with({pos(a), pos(b)}), with({pos(a), neg(u)}), with({pos(b), pos(u)})};
    } else {
      produced = {with({neg(a), neg(u)}), with({neg(b), pos(u)})};
    }
    for (auto it = produced.rbegin(); it != produced.rend(); ++it) work.push_back(*it);
  }
  st.objective = std::move(rewritten);

  for (std::uint64_t k = 0; k < old.selectors.size(); ++k) {
    const bool value = st.incumbent.value(old.selectors[k]);
    st.incumbent.erase(old.selectors[k]);
    const auto [a, b] = split.at(old.selectors[k].id);
    st.incumbent.set(a, value);
    st.incumbent.set(b, value);
  }

  SelectorMap rebuilt;
  for (std::size_t i = 0; i < st.selectors.groups.size(); ++i)
    rebuilt.add_group(i == i0 ? grown : st.selectors.groups[i]);
  st.selectors = std::move(rebuilt);
  partial.insert(partial.begin() + static_cast<std::ptrdiff_t>(
                                       std::lower_bound(partial.begin(), partial.end(), u) -
                                       partial.begin()),
                 u);
  st.last_expanded = i0;

  // Filter: some split pair disagrees, or the assignment is the incumbent.
  st.filter = CnfFormula(st.objective.num_vars());
  st.filter_dropped = false;
  const std::vector<Var> all = st.selectors.all();
  const std::size_t k = pairs.size();
  const bool fits = k < 40 && (std::size_t{1} << k) <= filter_cap / std::max<std::size_t>(1, all.size());
  if (!fits) {
    st.filter_dropped = true;
    return st;
  }
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    std::vector<Lit> base;
    for (std::size_t j = 0; j < k; ++j) {
      const bool either = (mask >> j) & 1u;
      base.push_back(Lit(pairs[j].first, either));
      base.push_back(Lit(pairs[j].second, either));
    }
    for (Var x : all) {
      std::vector<Lit> lits = base;
      lits.push_back(Lit(x, st.incumbent.value(x)));
      st.filter.add(Clause(std::move(lits)));
    }
  }
  return st;
}

}  // namespace incremental

IncrementalResult solve_incremental(const Problem& p, const IncrementalOptions& options) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  IncrementalResult result;
  auto st = incremental::init(p);
  std::optional<std::pair<std::size_t, Var>> last;
  for (;;) {
    const OracleResult best = max_count(st.request(), options.oracle);
    st.incumbent = best.best;
    ++st.iteration;

    IterationRecord rec;
    rec.iteration = st.iteration;
    if (last) {
      rec.expanded_var = p.max_vars[last->first];
      rec.expanded_on = last->second;
    }
    rec.count = best.best_count;
    rec.elapsed_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    rec.solution = decode(st.selectors, best.best);
    rec.solution.achieved_count = best.best_count;
    rec.solution.total = pow2(p.count_vars.size());
    rec.stats = best.stats;
    if (options.on_iteration) options.on_iteration(rec);
    result.trace.push_back(rec);

    if (st.complete()) {
      result.complete = true;
      break;
    }
    if (options.budget && st.iteration >= *options.budget) break;
    last = st.choose(options.policy);
    st = incremental::expand(std::move(st), last->first, last->second, options.filter_cap);
    result.filter_dropped = result.filter_dropped || st.filter_dropped;
  }
  result.solution = result.trace.back().solution;
  return result;
}

}  // namespace dqmax
