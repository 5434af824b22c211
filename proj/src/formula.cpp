#include "dqmax/formula.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "dqmax/error.hpp"

namespace dqmax {

Count pow2(std::size_t exponent) {
  Count c = 1;
  c <<= exponent;
  return c;
}

Lit Lit::from_dimacs(int value) {
  if (value == 0) throw Error(ErrorKind::Internal, "literal 0 is not a variable");
  const auto id = static_cast<std::uint32_t>(value > 0 ? value : -value);
  return Lit(Var(id), value > 0);
}

// --- Clause ---

Clause::Clause(std::vector<Lit> lits) : lits_(std::move(lits)) {
  std::sort(lits_.begin(), lits_.end());
  lits_.erase(std::unique(lits_.begin(), lits_.end()), lits_.end());
  for (std::size_t i = 1; i < lits_.size(); ++i) {
    if (lits_[i].var() == lits_[i - 1].var()) {
      tautology_ = true;
      break;
    }
  }
}

Clause::Clause(std::initializer_list<int> dimacs) {
  std::vector<Lit> lits;
  lits.reserve(dimacs.size());
  for (int v : dimacs) lits.push_back(Lit::from_dimacs(v));
  *this = Clause(std::move(lits));
}

bool Clause::contains(Lit l) const {
  return std::binary_search(lits_.begin(), lits_.end(), l);
}

std::uint32_t Clause::max_var() const {
  return lits_.empty() ? 0 : lits_.back().var().id;
}

// --- CnfFormula ---

bool CnfFormula::add(Clause clause) {
  if (clause.is_tautology()) return false;
  ensure_vars(clause.max_var());
  clauses_.push_back(std::move(clause));
  return true;
}

void CnfFormula::append(const CnfFormula& other) {
  ensure_vars(other.num_vars());
  for (const auto& c : other.clauses()) clauses_.push_back(c);
}

bool CnfFormula::has_empty_clause() const {
  return std::any_of(clauses_.begin(), clauses_.end(),
                     [](const Clause& c) { return c.empty(); });
}

bool CnfFormula::satisfied_by(const Assignment& a) const {
  for (const auto& c : clauses_) {
    bool sat = false;
    for (Lit l : c.lits()) {
      if (a.satisfies(l)) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

std::vector<Clause> CnfFormula::canonical_clauses() const {
  std::vector<Clause> out = clauses_;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Var> CnfFormula::occurring_vars() const {
  std::vector<bool> seen(num_vars_ + 1, false);
  for (const auto& c : clauses_)
    for (Lit l : c.lits()) seen[l.var().id] = true;
  std::vector<Var> out;
  for (std::uint32_t v = 1; v <= num_vars_; ++v)
    if (seen[v]) out.emplace_back(v);
  return out;
}

// --- Assignment ---

std::optional<bool> Assignment::get(Var v) const {
  auto it = values_.find(v.id);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

bool Assignment::value(Var v) const {
  auto it = values_.find(v.id);
  if (it == values_.end())
    throw Error(ErrorKind::PreconditionViolation,
                "variable " + std::to_string(v.id) + " is unassigned");
  return it->second;
}

bool Assignment::covers(std::span<const Var> vars) const {
  return std::all_of(vars.begin(), vars.end(),
                     [&](Var v) { return contains(v); });
}

std::vector<Lit> Assignment::lits() const {
  std::vector<Lit> out;
  out.reserve(values_.size());
  for (const auto& [id, value] : values_) out.emplace_back(Var(id), value);
  return out;
}

Assignment Assignment::restricted_to(std::span<const Var> vars) const {
  Assignment out;
  for (Var v : vars)
    if (auto b = get(v)) out.set(v, *b);
  return out;
}

bool Assignment::satisfies(Lit l) const {
  auto b = get(l.var());
  return b && *b == l.positive();
}

// --- Monomial ---

Monomial::Monomial(std::vector<Lit> lits) : lits_(std::move(lits)) {}

bool Monomial::satisfied_by(const Assignment& a) const {
  return std::all_of(lits_.begin(), lits_.end(),
                     [&](Lit l) { return a.satisfies(l); });
}

std::vector<Lit> Monomial::negation() const {
  std::vector<Lit> out;
  out.reserve(lits_.size());
  for (Lit l : lits_) out.push_back(~l);
  return out;
}

std::string Monomial::to_string() const {
  if (lits_.empty()) return "T";
  std::string s;
  for (Lit l : lits_) {
    if (!s.empty()) s += '&';
    if (!l.positive()) s += '!';
    s += std::to_string(l.var().id);
  }
  return s;
}

Monomial minterm_at(std::span<const Var> support, std::uint64_t index) {
  const std::size_t h = support.size();
  std::vector<Lit> lits;
  lits.reserve(h);
  for (std::size_t j = 0; j < h; ++j) {
    const bool negative = (index >> (h - 1 - j)) & 1u;
    lits.emplace_back(support[j], !negative);
  }
  return Monomial(std::move(lits));
}

std::vector<Monomial> minterms_of(std::span<const Var> support) {
  std::set<Var> unique(support.begin(), support.end());
  if (unique.size() != support.size())
    throw Error(ErrorKind::PreconditionViolation,
                "support contains duplicate variables");
  if (support.size() >= 63)
    throw Error(ErrorKind::InstanceTooLarge, "support too large to expand");
  const std::uint64_t n = std::uint64_t{1} << support.size();
  std::vector<Monomial> out;
  out.reserve(n);
  for (std::uint64_t k = 0; k < n; ++k) out.push_back(minterm_at(support, k));
  return out;
}

std::uint64_t minterm_index(std::span<const Var> support, const Assignment& a) {
  std::uint64_t index = 0;
  for (Var v : support) index = (index << 1) | (a.value(v) ? 0u : 1u);
  return index;
}

std::uint64_t minterm_index(const Monomial& m) {
  std::uint64_t index = 0;
  for (Lit l : m.lits()) index = (index << 1) | (l.positive() ? 0u : 1u);
  return index;
}

// --- BooleanFunction ---

BooleanFunction BooleanFunction::constant(bool value) {
  BooleanFunction f;
  if (value) f.minterms.emplace_back();
  return f;
}

BooleanFunction BooleanFunction::from_indices(
    std::vector<Var> support, const std::vector<std::uint64_t>& indices) {
  BooleanFunction f;
  f.support = std::move(support);
  std::vector<std::uint64_t> sorted = indices;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (auto k : sorted) f.minterms.push_back(minterm_at(f.support, k));
  return f;
}

BooleanFunction BooleanFunction::from_truth_table(std::vector<Var> support,
                                                  const std::vector<bool>& table) {
  std::vector<std::uint64_t> indices;
  for (std::uint64_t k = 0; k < table.size(); ++k)
    if (table[k]) indices.push_back(k);
  return from_indices(std::move(support), indices);
}

bool BooleanFunction::evaluate(const Assignment& a) const {
  return std::any_of(minterms.begin(), minterms.end(),
                     [&](const Monomial& m) { return m.satisfied_by(a); });
}

bool BooleanFunction::contains(const Monomial& m) const {
  return std::find(minterms.begin(), minterms.end(), m) != minterms.end();
}

std::vector<bool> BooleanFunction::truth_table() const {
  std::vector<bool> table(std::size_t{1} << support.size(), false);
  for (const auto& m : minterms) table[minterm_index(m)] = true;
  return table;
}

std::vector<bool> BooleanFunction::truth_table_over(std::span<const Var> over) const {
  const std::size_t h = over.size();
  std::vector<bool> table(std::size_t{1} << h, false);
  const auto own = truth_table();
  for (std::uint64_t k = 0; k < table.size(); ++k) {
    Assignment a;
    for (std::size_t j = 0; j < h; ++j) a.set(over[j], !((k >> (h - 1 - j)) & 1u));
    table[k] = own[minterm_index(support, a)];
  }
  return table;
}

// --- Problem ---

void Problem::normalize() {
  std::sort(count_vars.begin(), count_vars.end());
  std::sort(exist_vars.begin(), exist_vars.end());
  for (auto& h : deps) std::sort(h.begin(), h.end());
}

bool Problem::is_count_var(Var v) const {
  return std::binary_search(count_vars.begin(), count_vars.end(), v);
}

bool Problem::is_exist_var(Var v) const {
  return std::binary_search(exist_vars.begin(), exist_vars.end(), v);
}

void Problem::validate() const {
  if (deps.size() != max_vars.size())
    throw Error(ErrorKind::PreconditionViolation,
                "one dependency set is required per maximizing variable");
  if (!std::is_sorted(count_vars.begin(), count_vars.end()) ||
      !std::is_sorted(exist_vars.begin(), exist_vars.end()))
    throw Error(ErrorKind::PreconditionViolation, "role lists must be sorted");
  std::vector<int> role(cnf.num_vars() + 1, 0);
  auto assign = [&](Var v, int r, const char* what) {
    if (v.id == 0 || v.id > cnf.num_vars())
      throw Error(ErrorKind::PreconditionViolation,
                  std::string(what) + " variable " + std::to_string(v.id) +
                      " outside [1, num_vars]");
    if (role[v.id] != 0)
      throw Error(ErrorKind::PreconditionViolation,
                  "variable " + std::to_string(v.id) + " has more than one role");
    role[v.id] = r;
  };
  for (Var v : max_vars) assign(v, 1, "maximizing");
  for (Var v : count_vars) assign(v, 2, "counting");
  for (Var v : exist_vars) assign(v, 3, "existential");
  for (Var v : cnf.occurring_vars())
    if (role[v.id] == 0)
      throw Error(ErrorKind::PreconditionViolation,
                  "variable " + std::to_string(v.id) + " occurs without a role");
  for (std::size_t i = 0; i < deps.size(); ++i) {
    std::set<Var> unique(deps[i].begin(), deps[i].end());
    if (unique.size() != deps[i].size() ||
        !std::is_sorted(deps[i].begin(), deps[i].end()))
      throw Error(ErrorKind::PreconditionViolation,
                  "dependency set must be sorted and duplicate-free");
    for (Var v : deps[i])
      if (v.id > cnf.num_vars() || (role[v.id] != 2 && role[v.id] != 3))
        throw Error(ErrorKind::DependencyViolation,
                    "dependency " + std::to_string(v.id) + " of x" +
                        std::to_string(max_vars[i].id) + " is not in Y u Z");
  }
}

std::size_t Problem::selector_count() const {
  std::size_t total = 0;
  for (const auto& h : deps) {
    if (h.size() >= 40) return SIZE_MAX;
    total += std::size_t{1} << h.size();
  }
  return total;
}

const SynthesizedFunction* SynthesizedSolution::find(Var v) const {
  for (const auto& f : functions)
    if (f.var == v) return &f;
  return nullptr;
}

// --- operations ---

CnfFormula cofactor(const CnfFormula& f, Var u, bool value) {
  CnfFormula out(f.num_vars());
  const Lit satisfied(u, value);
  for (const auto& c : f.clauses()) {
    if (c.contains(satisfied)) continue;
    std::vector<Lit> lits;
    lits.reserve(c.size());
    for (Lit l : c.lits())
      if (l.var() != u) lits.push_back(l);
    out.add(Clause(std::move(lits)));
  }
  return out;
}

void check_dependencies(const Problem& p, const SynthesizedSolution& s) {
  if (s.functions.size() != p.max_vars.size())
    throw Error(ErrorKind::DependencyViolation,
                "solution must give one function per maximizing variable");
  for (std::size_t i = 0; i < p.max_vars.size(); ++i) {
    const auto& sf = s.functions[i];
    if (sf.var != p.max_vars[i])
      throw Error(ErrorKind::DependencyViolation,
                  "function order does not match maximizing variables");
    std::set<Var> seen;
    for (Var v : sf.fn.support) {
      if (!std::binary_search(p.deps[i].begin(), p.deps[i].end(), v))
        throw Error(ErrorKind::DependencyViolation,
                    "x" + std::to_string(sf.var.id) + " depends on " +
                        std::to_string(v.id) + " outside its dependency set");
      if (!seen.insert(v).second)
        throw Error(ErrorKind::DependencyViolation, "duplicate support variable");
    }
    for (const auto& m : sf.fn.minterms) {
      if (m.size() != sf.fn.support.size())
        throw Error(ErrorKind::DependencyViolation, "incomplete minterm");
      for (std::size_t j = 0; j < m.size(); ++j)
        if (m.lits()[j].var() != sf.fn.support[j])
          throw Error(ErrorKind::DependencyViolation,
                      "minterm does not follow the support order");
    }
  }
}

CnfFormula apply_substitution(const Problem& p, const SynthesizedSolution& s) {
  check_dependencies(p, s);
  CnfFormula out = p.cnf;
  for (const auto& sf : s.functions) {
    const auto table = sf.fn.truth_table();
    for (std::uint64_t k = 0; k < table.size(); ++k) {
      auto lits = minterm_at(sf.fn.support, k).negation();
      lits.push_back(Lit(sf.var, table[k]));
      out.add(Clause(std::move(lits)));
    }
  }
  return out;
}

std::string to_string(const BooleanFunction& f) {
  if (f.minterms.empty()) return "F";
  std::ostringstream os;
  for (std::size_t i = 0; i < f.minterms.size(); ++i) {
    if (i) os << " | ";
    os << f.minterms[i].to_string();
  }
  return os.str();
}

}  // namespace dqmax
