#pragma once

// Seeded random instances for experiments and fuzzing from the command
// line. Roles are drawn first, then clauses of 1 to 3 literals, then each
// dependency set as a random subset of Y u Z.

#include <cstdint>

#include "dqmax/formula.hpp"

namespace dqmax {

struct GeneratorShape {
  std::uint32_t vars = 8;
  std::uint32_t max_x = 2;
  std::uint32_t max_y = 3;
  std::uint32_t max_deps = 2;
  std::uint32_t clauses = 8;
};

Problem random_instance(std::uint64_t seed, const GeneratorShape& shape = {});

}  // namespace dqmax
