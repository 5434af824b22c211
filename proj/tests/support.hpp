#pragma once

// Shared fixtures and reference oracles for the test binaries. The oracles
// here evaluate formulas directly on assignments and never go through the
// SAT engine or the CNF substitution encoding.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dqmax/formula.hpp"
#include "dqmax/io/dimacs.hpp"

namespace dqmax::testing {

inline std::string data_path(const std::string& name) {
  return std::string(DQMAX_DATA_DIR) + "/" + name;
}

inline Problem load(const std::string& name) { return load_instance(data_path(name)); }

inline std::string read_data(const std::string& name) { return read_file(data_path(name)); }

inline std::vector<Var> vars(std::initializer_list<std::uint32_t> ids) {
  std::vector<Var> out;
  for (auto id : ids) out.emplace_back(id);
  return out;
}

// Assignment of vars[0..n) from the bits of `code` (vars[j] gets bit j).
inline Assignment from_bits(const std::vector<Var>& vs, std::uint64_t code) {
  Assignment a;
  for (std::size_t j = 0; j < vs.size(); ++j) a.set(vs[j], (code >> j) & 1u);
  return a;
}

inline bool eval_clauses(const CnfFormula& f, const Assignment& a) {
  for (const auto& c : f.clauses()) {
    bool sat = false;
    for (Lit l : c.lits()) {
      const auto v = a.get(l.var());
      if (v && *v == l.positive()) sat = true;
    }
    if (!sat) return false;
  }
  return true;
}

inline std::vector<Var> all_vars(std::uint32_t n) {
  std::vector<Var> out;
  for (std::uint32_t v = 1; v <= n; ++v) out.emplace_back(v);
  return out;
}

// Naive projected count: loop over Y, inner loop over every other variable
// occurring in f.
inline std::uint64_t naive_count(const CnfFormula& f, const std::vector<Var>& ys) {
  std::vector<Var> rest;
  for (Var v : f.occurring_vars())
    if (std::find(ys.begin(), ys.end(), v) == ys.end()) rest.push_back(v);
  std::uint64_t count = 0;
  for (std::uint64_t y = 0; y < (std::uint64_t{1} << ys.size()); ++y) {
    Assignment base = from_bits(ys, y);
    for (std::uint64_t r = 0; r < (std::uint64_t{1} << rest.size()); ++r) {
      Assignment a = base;
      for (std::size_t j = 0; j < rest.size(); ++j) a.set(rest[j], (r >> j) & 1u);
      if (eval_clauses(f, a)) {
        ++count;
        break;
      }
    }
  }
  return count;
}

// naive_count of f with the literals of alpha fixed.
inline std::uint64_t naive_count_under(const CnfFormula& f, const std::vector<Var>& ys,
                                       const Assignment& alpha) {
  CnfFormula g = f;
  for (Lit l : alpha.lits()) g = cofactor(g, l.var(), l.positive());
  if (g.has_empty_clause()) return 0;
  return naive_count(g, ys);
}

// Count of Phi[sigma] by direct evaluation: the maximizing variables take the
// value of their function at each point.
inline std::uint64_t naive_score(const Problem& p, const SynthesizedSolution& s) {
  std::vector<Var> others = p.exist_vars;
  std::uint64_t count = 0;
  for (std::uint64_t y = 0; y < (std::uint64_t{1} << p.count_vars.size()); ++y) {
    const Assignment base = from_bits(p.count_vars, y);
    for (std::uint64_t r = 0; r < (std::uint64_t{1} << others.size()); ++r) {
      Assignment a = base;
      for (std::size_t j = 0; j < others.size(); ++j) a.set(others[j], (r >> j) & 1u);
      for (const auto& f : s.functions) a.set(f.var, f.fn.evaluate(a));
      if (eval_clauses(p.cnf, a)) {
        ++count;
        break;
      }
    }
  }
  return count;
}

// Truth table of a function over its support, indexed by from_bits order.
inline std::vector<bool> table_of(const BooleanFunction& f, const std::vector<Var>& over) {
  std::vector<bool> out(std::size_t{1} << over.size());
  for (std::uint64_t k = 0; k < out.size(); ++k) out[k] = f.evaluate(from_bits(over, k));
  return out;
}

// Random instance: n_vars variables split into roles, random 1..3-literal
// clauses, dependency sets drawn from Y u Z with at most max_deps members.
struct RandomShape {
  std::uint32_t vars = 8;
  std::uint32_t max_x = 2;
  std::uint32_t max_y = 3;
  std::uint32_t max_deps = 2;
  std::uint32_t clauses = 8;
  bool allow_exist = true;
};

inline Problem random_problem(std::mt19937_64& rng, const RandomShape& shape) {
  auto pick = [&](std::uint32_t lo, std::uint32_t hi) {
    return std::uniform_int_distribution<std::uint32_t>(lo, hi)(rng);
  };
  Problem p;
  const std::uint32_t n = shape.vars;
  const std::uint32_t nx = pick(1, std::min(shape.max_x, n - 1));
  const std::uint32_t ny = pick(1, std::min(shape.max_y, n - nx));
  const std::uint32_t nz = shape.allow_exist ? n - nx - ny : 0;
  std::vector<std::uint32_t> ids(n);
  for (std::uint32_t i = 0; i < n; ++i) ids[i] = i + 1;
  std::shuffle(ids.begin(), ids.end(), rng);
  std::uint32_t used = nx + ny + nz;
  for (std::uint32_t i = 0; i < nx; ++i) p.max_vars.emplace_back(ids[i]);
  for (std::uint32_t i = nx; i < nx + ny; ++i) p.count_vars.emplace_back(ids[i]);
  for (std::uint32_t i = nx + ny; i < used; ++i) p.exist_vars.emplace_back(ids[i]);
  std::sort(p.max_vars.begin(), p.max_vars.end());
  p.cnf = CnfFormula(n);
  std::vector<Var> roles(p.max_vars);
  roles.insert(roles.end(), p.count_vars.begin(), p.count_vars.end());
  roles.insert(roles.end(), p.exist_vars.begin(), p.exist_vars.end());
  for (std::uint32_t c = 0; c < shape.clauses; ++c) {
    const std::uint32_t len = pick(1, 3);
    std::vector<Lit> lits;
    for (std::uint32_t k = 0; k < len; ++k)
      lits.emplace_back(roles[pick(0, static_cast<std::uint32_t>(roles.size() - 1))],
                        pick(0, 1) == 1);
    p.cnf.add(Clause(std::move(lits)));
  }
  std::vector<Var> pool = p.count_vars;
  pool.insert(pool.end(), p.exist_vars.begin(), p.exist_vars.end());
  for (std::size_t i = 0; i < p.max_vars.size(); ++i) {
    std::shuffle(pool.begin(), pool.end(), rng);
    const std::uint32_t k =
        pick(0, std::min<std::uint32_t>(shape.max_deps, static_cast<std::uint32_t>(pool.size())));
    std::vector<Var> h(pool.begin(), pool.begin() + k);
    std::sort(h.begin(), h.end());
    p.deps.push_back(h);
  }
  p.normalize();
  // Unused variables need no role; the cnf's variable range stays n.
  return p;
}

// Three adaptive threshold queries against a secret uniform in [lo, hi] on
// 3 bits. Each answer is (query <= secret) or (query >= secret). Enumerates
// every strategy (x1, x2 as a function of the first answer, x3 as a function
// of both) and returns the largest number of distinct answer triples.
inline std::uint64_t best_threshold_strategy(std::uint64_t lo, std::uint64_t hi, bool query_le_secret) {
  auto answer = [&](std::uint64_t x, std::uint64_t s) { return query_le_secret ? x <= s : x >= s; };
  std::uint64_t best = 0;
  for (std::uint64_t x1 = 0; x1 < 8; ++x1)
    for (std::uint64_t x2 = 0; x2 < 64; ++x2)
      for (std::uint64_t x3 = 0; x3 < 4096; ++x3) {
        std::uint64_t seen = 0;  // bit set of answer triples
        for (std::uint64_t s = lo; s <= hi; ++s) {
          const unsigned a1 = answer(x1, s);
          const unsigned a2 = answer((x2 >> (3 * a1)) & 7u, s);
          const unsigned a3 = answer((x3 >> (3 * (2 * a1 + a2))) & 7u, s);
          seen |= std::uint64_t{1} << (4 * a1 + 2 * a2 + a3);
        }
        best = std::max<std::uint64_t>(best, static_cast<std::uint64_t>(std::popcount(seen)));
      }
  return best;
}

// Sum-guess game on w bits: secrets a, b uniform, the sum a + b (mod 2^w) is
// observed, the guess x wins when a <= x <= b. The best strategy picks, for
// each observed sum, the guess that wins for the most secret pairs.
inline std::uint64_t best_sum_guess(unsigned w) {
  const std::uint64_t n = std::uint64_t{1} << w;
  std::uint64_t total = 0;
  for (std::uint64_t s = 0; s < n; ++s) {
    std::uint64_t best = 0;
    for (std::uint64_t x = 0; x < n; ++x) {
      std::uint64_t wins = 0;
      for (std::uint64_t a = 0; a < n; ++a)
        for (std::uint64_t b = 0; b < n; ++b)
          if (((a + b) & (n - 1)) == s && a <= x && x <= b) ++wins;
      best = std::max(best, wins);
    }
    total += best;
  }
  return total;
}

// Two threshold queries (query >= secret) on a 3-bit secret, then a guess
// of the secret; returns the best number of secrets guessed.
inline std::uint64_t best_guess_strategy() {
  std::uint64_t best = 0;
  for (std::uint64_t x1 = 0; x1 < 8; ++x1)
    for (std::uint64_t x2 = 0; x2 < 64; ++x2)
      for (std::uint64_t x3 = 0; x3 < 4096; ++x3) {
        std::uint64_t wins = 0;
        for (std::uint64_t s = 0; s < 8; ++s) {
          const unsigned a1 = x1 >= s;
          const unsigned a2 = ((x2 >> (3 * a1)) & 7u) >= s;
          wins += ((x3 >> (3 * (2 * a1 + a2))) & 7u) == s;
        }
        best = std::max(best, wins);
      }
  return best;
}

}  // namespace dqmax::testing
