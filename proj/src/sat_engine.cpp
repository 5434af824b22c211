#include "dqmax/sat_engine.hpp"

#include <algorithm>

#include "dqmax/error.hpp"

namespace dqmax {

SatSolver::SatSolver(const CnfFormula& f) {
  reserve_vars(f.num_vars());
  add_formula(f);
}

void SatSolver::reserve_vars(std::uint32_t n) {
  if (n <= num_vars_) return;
  num_vars_ = n;
  assigns_.resize(n + 1, kUndef);
  levels_.resize(n + 1, 0);
  reasons_.resize(n + 1, kNoReason);
  seen_.resize(n + 1, 0);
  model_.resize(n + 1, 0);
  watches_.resize(2 * static_cast<std::size_t>(n) + 2);
}

bool SatSolver::add_formula(const CnfFormula& f) {
  reserve_vars(f.num_vars());
  for (const auto& c : f.clauses())
    if (!add_clause(c)) return false;
  return ok_;
}

bool SatSolver::add_clause(std::span<const Lit> input) {
  if (!ok_) return false;
  std::vector<Lit> lits(input.begin(), input.end());
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  std::uint32_t max_id = 0;
  for (std::size_t i = 0; i < lits.size(); ++i) {
    if (i > 0 && lits[i].var() == lits[i - 1].var()) return true;
    max_id = std::max(max_id, lits[i].var().id);
  }
  reserve_vars(max_id);

  // Clauses are only added at the root, so the current assignment is final.
  std::vector<Lit> kept;
  for (Lit l : lits) {
    const auto v = value(l);
    if (v == kTrue) return true;
    if (v == kUndef) kept.push_back(l);
  }
  if (kept.empty()) {
    ok_ = false;
    return false;
  }
  if (kept.size() == 1) {
    enqueue(kept[0], kNoReason);
    if (propagate() != kNoReason) ok_ = false;
    return ok_;
  }
  attach(std::move(kept));
  return true;
}

std::uint32_t SatSolver::attach(std::vector<Lit> lits) {
  const auto index = static_cast<std::uint32_t>(clauses_.size());
  watches_[lits[0].code()].push_back(index);
  watches_[lits[1].code()].push_back(index);
  clauses_.push_back(std::move(lits));
  return index;
}

void SatSolver::enqueue(Lit l, std::uint32_t reason) {
  const auto v = l.var().id;
  assigns_[v] = l.positive() ? kTrue : kFalse;
  levels_[v] = level();
  reasons_[v] = reason;
  trail_.push_back(l);
}

std::uint32_t SatSolver::propagate() {
  while (qhead_ < trail_.size()) {
    const Lit false_lit = ~trail_[qhead_++];
    auto& ws = watches_[false_lit.code()];
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < ws.size()) {
      const std::uint32_t ci = ws[i++];
      auto& c = clauses_[ci];
      if (c[0] == false_lit) std::swap(c[0], c[1]);
      if (value(c[0]) == kTrue) {
        ws[j++] = ci;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k) {
        if (value(c[k]) != kFalse) {
          std::swap(c[1], c[k]);
          watches_[c[1].code()].push_back(ci);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = ci;
      if (value(c[0]) == kFalse) {
        while (i < ws.size()) ws[j++] = ws[i++];
        ws.resize(j);
        qhead_ = trail_.size();
        return ci;
      }
      enqueue(c[0], ci);
    }
    ws.resize(j);
  }
  return kNoReason;
}

void SatSolver::analyze(std::uint32_t conflict, std::vector<Lit>& learnt,
                        std::uint32_t& backjump) {
  learnt.assign(1, Lit());
  int open = 0;
  bool first = true;
  Lit p;
  std::size_t index = trail_.size();
  std::uint32_t ci = conflict;
  do {
    const auto& c = clauses_[ci];
    for (std::size_t k = first ? 0 : 1; k < c.size(); ++k) {
      const Lit q = c[k];
      const auto v = q.var().id;
      if (seen_[v] || levels_[v] == 0) continue;
      seen_[v] = 1;
      if (levels_[v] >= level())
        ++open;
      else
        learnt.push_back(q);
    }
    first = false;
    while (!seen_[trail_[--index].var().id]) {
    }
    p = trail_[index];
    ci = reasons_[p.var().id];
    seen_[p.var().id] = 0;
    --open;
  } while (open > 0);
  learnt[0] = ~p;

  backjump = 0;
  if (learnt.size() > 1) {
    std::size_t best = 1;
    for (std::size_t k = 2; k < learnt.size(); ++k)
      if (levels_[learnt[k].var().id] > levels_[learnt[best].var().id]) best = k;
    std::swap(learnt[1], learnt[best]);
    backjump = levels_[learnt[1].var().id];
  }
  for (Lit l : learnt) seen_[l.var().id] = 0;
}

void SatSolver::backtrack(std::uint32_t to_level) {
  if (level() <= to_level) return;
  const std::size_t stop = trail_lim_[to_level];
  for (std::size_t k = trail_.size(); k > stop; --k) {
    const auto v = trail_[k - 1].var().id;
    assigns_[v] = kUndef;
    reasons_[v] = kNoReason;
    if (v < next_var_) next_var_ = v;
  }
  trail_.resize(stop);
  trail_lim_.resize(to_level);
  qhead_ = trail_.size();
}

Var SatSolver::pick_branch() {
  while (next_var_ <= num_vars_ && assigns_[next_var_] != kUndef) ++next_var_;
  return next_var_ <= num_vars_ ? Var(next_var_) : Var(0);
}

bool SatSolver::solve(std::span<const Lit> assumptions) {
  if (!ok_) return false;
  for (Lit a : assumptions) reserve_vars(a.var().id);

  std::vector<Lit> learnt;
  for (;;) {
    const std::uint32_t conflict = propagate();
    if (conflict != kNoReason) {
      ++conflicts_;
      if (level() == 0) {
        ok_ = false;
        return false;
      }
      std::uint32_t backjump = 0;
      analyze(conflict, learnt, backjump);
      backtrack(backjump);
      if (learnt.size() == 1) {
        enqueue(learnt[0], kNoReason);
      } else {
        const std::uint32_t ci = attach(learnt);
        enqueue(learnt[0], ci);
      }
      continue;
    }

    Lit next;
    bool have = false;
    while (level() < assumptions.size()) {
      const Lit a = assumptions[level()];
      const auto v = value(a);
      if (v == kTrue) {
        trail_lim_.push_back(static_cast<std::uint32_t>(trail_.size()));
      } else if (v == kFalse) {
        backtrack(0);
        return false;
      } else {
        next = a;
        have = true;
        break;
      }
    }
    if (!have) {
      const Var v = pick_branch();
      if (v.id == 0) {
        for (std::uint32_t k = 1; k <= num_vars_; ++k)
          model_[k] = assigns_[k] == kTrue ? 1 : 0;
        backtrack(0);
        return true;
      }
      ++decisions_;
      next = neg(v);
    }
    trail_lim_.push_back(static_cast<std::uint32_t>(trail_.size()));
    enqueue(next, kNoReason);
  }
}

Assignment SatSolver::model() const {
  Assignment a;
  for (std::uint32_t k = 1; k <= num_vars_; ++k) a.set(Var(k), model_[k] != 0);
  return a;
}

Assignment SatSolver::model(std::span<const Var> vars) const {
  Assignment a;
  for (Var v : vars) a.set(v, v.id <= num_vars_ && model_[v.id] != 0);
  return a;
}

SolveResult solve(const CnfFormula& f, const Assignment& assumptions) {
  SatSolver solver(f);
  const auto lits = assumptions.lits();
  SolveResult result;
  if (!solver.solve(lits)) return result;
  result.status = SatStatus::Sat;
  result.model = solver.model();
  if (!f.satisfied_by(result.model))
    throw Error(ErrorKind::Internal, "engine returned a non-model");
  for (Lit l : lits)
    if (!result.model.satisfies(l))
      throw Error(ErrorKind::Internal, "engine model violates an assumption");
  return result;
}

Count enumerate_projected(const CnfFormula& f, std::span<const Var> proj,
                          const std::function<void(const Assignment&)>& visit) {
  SatSolver solver(f);
  for (Var v : proj) solver.reserve_vars(v.id);
  Count visits = 0;
  std::vector<Lit> block;
  while (solver.solve()) {
    const Assignment a = solver.model(proj);
    ++visits;
    if (visit) visit(a);
    if (proj.empty()) break;
    block.clear();
    for (Var v : proj) block.push_back(Lit(v, !solver.model_value(v)));
    if (!solver.add_clause(block)) break;
  }
  return visits;
}

}  // namespace dqmax
