#pragma once

// Incremental CDCL engine (two watched literals, first-UIP learning,
// non-chronological backjumping, no restarts). Decisions pick the
// lowest-id unassigned variable and try false first, so runs are
// reproducible. Clauses may be added between solves; assumptions are
// per-call.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "dqmax/formula.hpp"

namespace dqmax {

enum class SatStatus { Sat, Unsat };

struct SolveResult {
  SatStatus status = SatStatus::Unsat;
  Assignment model;  // total over the formula's variables when Sat

  bool sat() const { return status == SatStatus::Sat; }
};

class SatSolver {
 public:
  SatSolver() = default;
  explicit SatSolver(const CnfFormula& f);

  void reserve_vars(std::uint32_t n);
  std::uint32_t num_vars() const { return num_vars_; }

  // Returns false once the clause set is unsatisfiable without assumptions.
  bool add_clause(std::span<const Lit> lits);
  bool add_clause(const Clause& c) { return add_clause(c.lits()); }
  bool add_formula(const CnfFormula& f);

  // Assumption literals must refer to variables within num_vars().
  bool solve(std::span<const Lit> assumptions = {});

  // Valid after a successful solve until the next mutation.
  bool model_value(Var v) const { return model_[v.id] != 0; }
  Assignment model() const;
  Assignment model(std::span<const Var> vars) const;

  bool okay() const { return ok_; }
  std::uint64_t conflicts() const { return conflicts_; }
  std::uint64_t decisions() const { return decisions_; }

 private:
  enum : std::int8_t { kFalse = -1, kUndef = 0, kTrue = 1 };
  static constexpr std::uint32_t kNoReason = UINT32_MAX;

  std::int8_t value(Lit l) const {
    const std::int8_t v = assigns_[l.var().id];
    return l.positive() ? v : static_cast<std::int8_t>(-v);
  }
  std::uint32_t level() const {
    return static_cast<std::uint32_t>(trail_lim_.size());
  }
  void enqueue(Lit l, std::uint32_t reason);
  std::uint32_t propagate();  // conflicting clause index or kNoReason
  void analyze(std::uint32_t conflict, std::vector<Lit>& learnt,
               std::uint32_t& backjump);
  void backtrack(std::uint32_t to_level);
  std::uint32_t attach(std::vector<Lit> lits);
  Var pick_branch();

  std::uint32_t num_vars_ = 0;
  bool ok_ = true;
  std::vector<std::vector<Lit>> clauses_;
  std::vector<std::vector<std::uint32_t>> watches_;  // by literal code
  std::vector<std::int8_t> assigns_;
  std::vector<std::uint32_t> levels_;
  std::vector<std::uint32_t> reasons_;
  std::vector<Lit> trail_;
  std::vector<std::uint32_t> trail_lim_;
  std::size_t qhead_ = 0;
  std::uint32_t next_var_ = 1;
  std::vector<std::uint8_t> seen_;
  std::vector<std::int8_t> model_;
  std::uint64_t conflicts_ = 0;
  std::uint64_t decisions_ = 0;
};

// One-shot solve. The returned model is re-checked clause by clause.
SolveResult solve(const CnfFormula& f, const Assignment& assumptions = {});

// Visits every assignment of `proj` that extends to a model of f, once
// each, by blocking-clause enumeration. Returns the number of visits.
Count enumerate_projected(const CnfFormula& f, std::span<const Var> proj,
                          const std::function<void(const Assignment&)>& visit = {});

}  // namespace dqmax
