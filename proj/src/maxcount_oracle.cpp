#include "dqmax/maxcount_oracle.hpp"

#include <algorithm>
#include <atomic>
#include <memory>
#include <mutex>

#include "dqmax/error.hpp"
#include "dqmax/sat_engine.hpp"
#include "dqmax/workers.hpp"

namespace dqmax {
namespace {

using Clock = std::chrono::steady_clock;

// A counting-variable assignment known to extend the current partial
// assignment of X, with one witness model's values for X.
struct Candidate {
  std::uint32_t y = 0;
  std::vector<std::uint8_t> witness;
};

struct Context {
  std::vector<Var> xs;                      // sorted by id
  std::vector<std::vector<Lit>> ys;         // candidate Y assignments
  std::vector<std::vector<std::vector<Lit>>> filter_at;  // clauses by deepest x
  const CnfFormula* objective = nullptr;
  std::uint32_t num_vars = 0;
  std::optional<Clock::time_point> deadline;
};

std::vector<std::uint8_t> witness_of(const SatSolver& s, const Context& ctx) {
  std::vector<std::uint8_t> w(ctx.xs.size());
  for (std::size_t k = 0; k < ctx.xs.size(); ++k) w[k] = s.model_value(ctx.xs[k]);
  return w;
}

class Search {
 public:
  Search(const Context& ctx, std::atomic<std::uint64_t>& global_best)
      : ctx_(ctx), global_best_(global_best), solver_(*ctx.objective) {
    solver_.reserve_vars(ctx.num_vars);
  }

  SatSolver& solver() { return solver_; }
  OracleStats& stats() { return stats_; }

  // Candidates surviving x[d] := value, or nullopt when the child cannot
  // reach `need` projected models or falsifies the filter.
  std::optional<std::vector<Candidate>> descend(std::vector<Lit>& alpha,
                                                const std::vector<Candidate>& cands,
                                                std::size_t d, bool value,
                                                std::uint64_t need) {
    const Lit l(ctx_.xs[d], value);
    alpha.push_back(l);
    std::optional<std::vector<Candidate>> out;
    if (!filter_ok(alpha, d)) {
      alpha.pop_back();
      return out;
    }
    std::vector<Candidate> kept;
    std::vector<Lit> assumptions;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      if (kept.size() + (cands.size() - i) < need) {
        alpha.pop_back();
        return out;
      }
      const Candidate& c = cands[i];
      if (c.witness[d] == static_cast<std::uint8_t>(value)) {
        kept.push_back(c);
        continue;
      }
      assumptions = alpha;
      const auto& y = ctx_.ys[c.y];
      assumptions.insert(assumptions.end(), y.begin(), y.end());
      ++stats_.sat_calls;
      if (solver_.solve(assumptions)) kept.push_back({c.y, witness_of(solver_, ctx_)});
    }
    alpha.pop_back();
    if (kept.size() >= need) out = std::move(kept);
    return out;
  }

  // Depth-first search below a node at depth d. Updates best_ only on
  // strict improvement over best_count_.
  void dfs(std::vector<Lit>& alpha, const std::vector<Candidate>& cands,
           std::size_t d) {
    ++stats_.nodes;
    if (ctx_.deadline && (stats_.nodes & 63) == 0 && Clock::now() > *ctx_.deadline)
      throw Error(ErrorKind::Timeout, "oracle deadline exceeded");
    if (d == ctx_.xs.size()) {
      const std::uint64_t count = cands.size();
      if (count > best_count_) {
        best_count_ = count;
        best_ = alpha;
        std::uint64_t seen = global_best_.load();
        while (count > seen && !global_best_.compare_exchange_weak(seen, count)) {
        }
      }
      return;
    }
    for (bool value : {false, true}) {
      const std::uint64_t need = std::max(best_count_ + 1, global_best_.load());
      if (auto child = descend(alpha, cands, d, value, need)) {
        alpha.push_back(Lit(ctx_.xs[d], value));
        dfs(alpha, *child, d + 1);
        alpha.pop_back();
      }
    }
  }

  void reset(std::uint64_t floor) {
    best_count_ = floor;
    best_.reset();
  }
  std::uint64_t best_count() const { return best_count_; }
  const std::optional<std::vector<Lit>>& best() const { return best_; }

 private:
  bool filter_ok(const std::vector<Lit>& alpha, std::size_t d) const {
    for (const auto& clause : ctx_.filter_at[d]) {
      bool satisfied = false;
      for (Lit l : clause) {
        // alpha[k] assigns xs[k]; locate by position.
        const auto it = std::lower_bound(ctx_.xs.begin(), ctx_.xs.end(), l.var());
        const auto k = static_cast<std::size_t>(it - ctx_.xs.begin());
        if (alpha[k] == l) {
          satisfied = true;
          break;
        }
      }
      if (!satisfied) return false;
    }
    return true;
  }

  const Context& ctx_;
  std::atomic<std::uint64_t>& global_best_;
  SatSolver solver_;
  OracleStats stats_;
  std::uint64_t best_count_ = 0;
  std::optional<std::vector<Lit>> best_;
};

void validate(const OracleRequest& req, const std::vector<Var>& xs) {
  for (Var v : xs)
    if (!req.incumbent.contains(v))
      throw Error(ErrorKind::MalformedRequest,
                  "incumbent does not bind maximizing variable " + std::to_string(v.id));
  if (req.incumbent.size() != xs.size())
    throw Error(ErrorKind::MalformedRequest,
                "incumbent binds variables outside the maximizing set");
  for (const auto& c : req.filter.clauses())
    for (Lit l : c.lits())
      if (!std::binary_search(xs.begin(), xs.end(), l.var()))
        throw Error(ErrorKind::MalformedRequest,
                    "filter mentions non-maximizing variable " +
                        std::to_string(l.var().id));
  if (!req.filter.has_empty_clause() && !req.filter.satisfied_by(req.incumbent))
    throw Error(ErrorKind::MalformedRequest, "incumbent violates the filter");
}

Assignment to_assignment(const std::vector<Lit>& lits) {
  Assignment a;
  for (Lit l : lits) a.set(l);
  return a;
}

}  // namespace

OracleResult max_count(const OracleRequest& req, const OracleOptions& options) {
  std::vector<Var> xs = req.max_vars;
  std::sort(xs.begin(), xs.end());
  validate(req, xs);

  Context ctx;
  ctx.xs = xs;
  ctx.objective = &req.objective;
  ctx.deadline = options.deadline;
  ctx.num_vars = req.objective.num_vars();
  for (Var v : req.count_vars) ctx.num_vars = std::max(ctx.num_vars, v.id);
  for (Var v : xs) ctx.num_vars = std::max(ctx.num_vars, v.id);
  ctx.filter_at.resize(xs.size());
  for (const auto& c : req.filter.clauses()) {
    if (c.empty()) continue;
    const auto deepest = std::lower_bound(xs.begin(), xs.end(), c.lits().back().var());
    ctx.filter_at[static_cast<std::size_t>(deepest - xs.begin())].emplace_back(
        c.lits().begin(), c.lits().end());
  }

  std::atomic<std::uint64_t> global_best{0};
  Search root(ctx, global_best);
  OracleResult result;

  // Root: projected models with X free give the candidate set and bound.
  std::vector<Candidate> cands;
  {
    SatSolver& s = root.solver();
    for (Var v : req.count_vars) s.reserve_vars(v.id);
    SatSolver enumerator(req.objective);
    enumerator.reserve_vars(ctx.num_vars);
    std::vector<Lit> block;
    while (enumerator.solve()) {
      ++root.stats().sat_calls;
      if (options.deadline && Clock::now() > *options.deadline)
        throw Error(ErrorKind::Timeout, "oracle deadline exceeded");
      std::vector<Lit> y;
      for (Var v : req.count_vars) y.push_back(Lit(v, enumerator.model_value(v)));
      cands.push_back({static_cast<std::uint32_t>(ctx.ys.size()), witness_of(enumerator, ctx)});
      ctx.ys.push_back(y);
      if (y.empty()) break;
      block.clear();
      for (Lit l : y) block.push_back(~l);
      if (!enumerator.add_clause(block)) break;
    }
  }
  result.bound = cands.size();

  // Incumbent count.
  std::vector<Lit> incumbent_lits;
  for (Var v : xs) incumbent_lits.push_back(Lit(v, req.incumbent.value(v)));
  std::uint64_t incumbent_count = 0;
  for (const auto& c : cands) {
    bool matches = true;
    for (std::size_t k = 0; k < xs.size(); ++k)
      if (c.witness[k] != static_cast<std::uint8_t>(incumbent_lits[k].positive())) {
        matches = false;
        break;
      }
    if (!matches) {
      std::vector<Lit> assumptions = incumbent_lits;
      const auto& y = ctx.ys[c.y];
      assumptions.insert(assumptions.end(), y.begin(), y.end());
      ++root.stats().sat_calls;
      matches = root.solver().solve(assumptions);
    }
    if (matches) ++incumbent_count;
  }

  result.best = to_assignment(incumbent_lits);
  result.best_count = incumbent_count;
  if (incumbent_count == cands.size() || req.filter.has_empty_clause() || xs.empty()) {
    result.stats = root.stats();
    return result;
  }

  global_best.store(incumbent_count);
  const unsigned workers = resolve_workers(options.workers);
  std::optional<std::vector<Lit>> best;
  std::uint64_t best_count = incumbent_count;

  if (workers <= 1 || xs.size() < 4) {
    root.reset(incumbent_count);
    std::vector<Lit> alpha;
    root.dfs(alpha, cands, 0);
    best = root.best();
    best_count = root.best_count();
    result.stats = root.stats();
  } else {
    std::size_t k = 0;
    while ((std::size_t{1} << k) < 4 * static_cast<std::size_t>(workers) &&
           k + 2 < xs.size())
      ++k;
    const std::size_t subtrees = std::size_t{1} << k;
    std::vector<std::optional<std::vector<Lit>>> sub_best(subtrees);
    std::vector<std::uint64_t> sub_count(subtrees, incumbent_count);
    std::mutex stats_mutex;
    OracleStats total = root.stats();
    const std::size_t pool = std::min<std::size_t>(workers, subtrees);
    std::vector<std::unique_ptr<Search>> searches(pool);
    std::atomic<std::size_t> next{0};
    parallel_for(pool, workers, [&](std::size_t w) {
      searches[w] = std::make_unique<Search>(ctx, global_best);
      Search& search = *searches[w];
      for (;;) {
        const std::size_t index = next.fetch_add(1);
        if (index >= subtrees) break;
        search.reset(incumbent_count);
        std::vector<Lit> alpha;
        std::vector<Candidate> current = cands;
        bool alive = true;
        for (std::size_t d = 0; d < k && alive; ++d) {
          const bool value = (index >> (k - 1 - d)) & 1u;
          const std::uint64_t need = std::max(incumbent_count + 1, global_best.load());
          auto child = search.descend(alpha, current, d, value, need);
          if (!child) {
            alive = false;
            break;
          }
          alpha.push_back(Lit(xs[d], value));
          current = std::move(*child);
        }
        if (alive) search.dfs(alpha, current, k);
        sub_best[index] = search.best();
        sub_count[index] = search.best_count();
      }
      std::lock_guard lock(stats_mutex);
      total.nodes += search.stats().nodes;
      total.sat_calls += search.stats().sat_calls;
    });
    for (std::size_t i = 0; i < subtrees; ++i) {
      if (sub_best[i] && sub_count[i] > best_count) {
        best_count = sub_count[i];
        best = sub_best[i];
      }
    }
    result.stats = total;
  }

  if (best) {
    result.best = to_assignment(*best);
    result.best_count = best_count;
  }
  return result;
}

}  // namespace dqmax
