#pragma once

// Core vocabulary: variables, literals, clauses, CNF formulas, assignments,
// complete monomials, Boolean functions given as minterm sets, and the
// DQMax#SAT problem/solution records.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace dqmax {

// Model counts. 2^|Y| overflows fixed widths quickly.
using Count = boost::multiprecision::cpp_int;

Count pow2(std::size_t exponent);

struct Var {
  std::uint32_t id = 0;

  constexpr Var() = default;
  constexpr explicit Var(std::uint32_t value) : id(value) {}
  auto operator<=>(const Var&) const = default;
};

class Lit {
 public:
  constexpr Lit() = default;
  constexpr Lit(Var v, bool positive)
      : code_(2 * v.id + (positive ? 0u : 1u)) {}

  static Lit from_dimacs(int value);
  static constexpr Lit from_code(std::uint32_t code) {
    Lit l;
    l.code_ = code;
    return l;
  }

  constexpr Var var() const { return Var(code_ >> 1); }
  constexpr bool positive() const { return (code_ & 1u) == 0; }
  constexpr std::uint32_t code() const { return code_; }
  int to_dimacs() const {
    return positive() ? static_cast<int>(var().id) : -static_cast<int>(var().id);
  }

  constexpr Lit operator~() const { return from_code(code_ ^ 1u); }
  auto operator<=>(const Lit&) const = default;

 private:
  std::uint32_t code_ = 0;
};

constexpr Lit pos(Var v) { return Lit(v, true); }
constexpr Lit neg(Var v) { return Lit(v, false); }

// Literals sorted by variable id (positive before negative on the same
// variable), duplicates removed. A clause holding both polarities of a
// variable is flagged as a tautology.
class Clause {
 public:
  Clause() = default;
  explicit Clause(std::vector<Lit> lits);
  Clause(std::initializer_list<int> dimacs);

  std::span<const Lit> lits() const { return lits_; }
  std::size_t size() const { return lits_.size(); }
  bool empty() const { return lits_.empty(); }
  bool is_tautology() const { return tautology_; }
  bool contains(Lit l) const;
  std::uint32_t max_var() const;

  auto operator<=>(const Clause& other) const { return lits_ <=> other.lits_; }
  bool operator==(const Clause& other) const { return lits_ == other.lits_; }

 private:
  std::vector<Lit> lits_;
  bool tautology_ = false;
};

class Assignment;

class CnfFormula {
 public:
  CnfFormula() = default;
  explicit CnfFormula(std::uint32_t num_vars) : num_vars_(num_vars) {}

  std::uint32_t num_vars() const { return num_vars_; }
  void ensure_vars(std::uint32_t n) {
    if (n > num_vars_) num_vars_ = n;
  }
  Var fresh_var() { return Var(++num_vars_); }

  const std::vector<Clause>& clauses() const { return clauses_; }
  std::size_t size() const { return clauses_.size(); }

  // Tautologies are dropped; returns whether the clause was kept. Grows
  // num_vars to cover the clause.
  bool add(Clause clause);
  bool add(std::vector<Lit> lits) { return add(Clause(std::move(lits))); }
  bool add(std::initializer_list<int> dimacs) { return add(Clause(dimacs)); }
  void append(const CnfFormula& other);

  bool has_empty_clause() const;
  // Unassigned variables make a clause count as not satisfied.
  bool satisfied_by(const Assignment& a) const;
  // Sorted, deduplicated copy of the clause list; used for structural
  // comparisons.
  std::vector<Clause> canonical_clauses() const;
  std::vector<Var> occurring_vars() const;

 private:
  std::uint32_t num_vars_ = 0;
  std::vector<Clause> clauses_;
};

// Partial mapping Var -> bool.
class Assignment {
 public:
  Assignment() = default;

  void set(Var v, bool value) { values_[v.id] = value; }
  void set(Lit l) { values_[l.var().id] = l.positive(); }
  void erase(Var v) { values_.erase(v.id); }
  std::optional<bool> get(Var v) const;
  bool value(Var v) const;  // throws when unassigned
  bool contains(Var v) const { return values_.count(v.id) != 0; }
  bool covers(std::span<const Var> vars) const;
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  // Literal view: one literal per bound variable, sorted by id.
  std::vector<Lit> lits() const;
  Assignment restricted_to(std::span<const Var> vars) const;
  bool satisfies(Lit l) const;

  const std::map<std::uint32_t, bool>& bindings() const { return values_; }
  bool operator==(const Assignment&) const = default;

 private:
  std::map<std::uint32_t, bool> values_;
};

// Complete monomial over an ordered support: one literal per support
// variable, kept in support order.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<Lit> lits);

  std::span<const Lit> lits() const { return lits_; }
  std::size_t size() const { return lits_.size(); }
  bool satisfied_by(const Assignment& a) const;
  // The clause of negated literals (falsified exactly where the monomial
  // holds).
  std::vector<Lit> negation() const;
  std::string to_string() const;

  auto operator<=>(const Monomial&) const = default;

 private:
  std::vector<Lit> lits_;
};

// All 2^|support| complete monomials in canonical order: index k makes
// support[j] positive iff bit (|support|-1-j) of k is clear, so k = 0 is the
// all-positive monomial. Empty support yields the single empty monomial.
std::vector<Monomial> minterms_of(std::span<const Var> support);
Monomial minterm_at(std::span<const Var> support, std::uint64_t index);
// Canonical index of the minterm of `support` satisfied by `a`.
std::uint64_t minterm_index(std::span<const Var> support, const Assignment& a);
std::uint64_t minterm_index(const Monomial& m);

// A Boolean function over `support`, given by its set of selected complete
// monomials. The empty set is constant false; the full set over an empty
// support ({epsilon}) is constant true.
struct BooleanFunction {
  std::vector<Var> support;
  std::vector<Monomial> minterms;  // sorted by canonical index

  static BooleanFunction constant(bool value);
  static BooleanFunction from_indices(std::vector<Var> support,
                                      const std::vector<std::uint64_t>& indices);
  static BooleanFunction from_truth_table(std::vector<Var> support,
                                          const std::vector<bool>& table);

  bool evaluate(const Assignment& a) const;
  bool contains(const Monomial& m) const;
  // Truth table indexed by canonical minterm index.
  std::vector<bool> truth_table() const;
  // Value at every assignment of `over` (a superset of the support),
  // indexed canonically over `over`.
  std::vector<bool> truth_table_over(std::span<const Var> over) const;
  bool operator==(const BooleanFunction&) const = default;
};

struct Problem {
  CnfFormula cnf;
  std::vector<Var> max_vars;          // x_1 .. x_n, quantifier order
  std::vector<Var> count_vars;        // Y, sorted
  std::vector<Var> exist_vars;        // Z, sorted
  std::vector<std::vector<Var>> deps; // H_i per max var, sorted

  // Throws PreconditionViolation when roles overlap, an occurring variable
  // has no role, or some H_i leaves Y u Z.
  void validate() const;
  void normalize();  // sorts role lists and dependency sets
  std::size_t selector_count() const;  // sum_i 2^|H_i|, saturating
  bool is_count_var(Var v) const;
  bool is_exist_var(Var v) const;
};

struct SynthesizedFunction {
  Var var;
  BooleanFunction fn;
};

struct SynthesizedSolution {
  std::vector<SynthesizedFunction> functions;  // one per max var, in order
  std::optional<Count> achieved_count;
  Count total = 1;

  const SynthesizedFunction* find(Var v) const;
};

// f with u fixed: satisfied clauses removed, falsified literal deleted. An
// empty clause in the result marks the cofactor unsatisfiable.
CnfFormula cofactor(const CnfFormula& f, Var u, bool value);

// CNF equivalent to Phi[sigma] in which each x_i stays as an auxiliary
// variable fixed by its definition: for every minterm m of the function's
// support, (!m | x_i) if m is selected and (!m | !x_i) otherwise.
CnfFormula apply_substitution(const Problem& p, const SynthesizedSolution& s);

// Throws DependencyViolation if s does not give exactly one function per max
// variable with support inside H_i and complete minterms.
void check_dependencies(const Problem& p, const SynthesizedSolution& s);

std::string to_string(const BooleanFunction& f);

}  // namespace dqmax
