#include "dqmax/io/generator.hpp"

#include <algorithm>
#include <random>

#include "dqmax/error.hpp"

namespace dqmax {

Problem random_instance(std::uint64_t seed, const GeneratorShape& shape) {
  if (shape.vars < 2 || shape.max_x == 0 || shape.max_y == 0)
    throw Error(ErrorKind::PreconditionViolation, "need at least two variables, one maximizing and one counting");
  std::mt19937_64 rng(seed);
  auto pick = [&](std::uint32_t lo, std::uint32_t hi) {
    return std::uniform_int_distribution<std::uint32_t>(lo, hi)(rng);
  };
  const std::uint32_t n = shape.vars;
  const std::uint32_t nx = pick(1, std::min(shape.max_x, n - 1));
  const std::uint32_t ny = pick(1, std::min(shape.max_y, n - nx));

  Problem p;
  p.cnf = CnfFormula(n);
  for (std::uint32_t v = 1; v <= n; ++v) {
    if (v <= nx) p.max_vars.emplace_back(v);
    else if (v <= nx + ny) p.count_vars.emplace_back(v);
    else p.exist_vars.emplace_back(v);
  }
  for (std::uint32_t c = 0; c < shape.clauses; ++c) {
    std::vector<Lit> lits;
    const std::uint32_t len = pick(1, 3);
    for (std::uint32_t k = 0; k < len; ++k) lits.emplace_back(Var(pick(1, n)), pick(0, 1) == 1);
    p.cnf.add(Clause(std::move(lits)));
  }
  std::vector<Var> pool = p.count_vars;
  pool.insert(pool.end(), p.exist_vars.begin(), p.exist_vars.end());
  for (std::size_t i = 0; i < p.max_vars.size(); ++i) {
    std::shuffle(pool.begin(), pool.end(), rng);
    const auto k = pick(0, std::min<std::uint32_t>(shape.max_deps, static_cast<std::uint32_t>(pool.size())));
    p.deps.emplace_back(pool.begin(), pool.begin() + k);
  }
  p.normalize();
  return p;
}

}  // namespace dqmax
