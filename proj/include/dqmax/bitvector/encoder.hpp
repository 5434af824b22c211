#pragma once

// Program -> DQMax#SAT instance.
//
// reach: Y = bits of random names, X = bits of inputs, Z = observations and
//        gate variables; the objective is the win predicate, every assume
//        and the definitions of the observations.
// leak:  Y = bits of observations, X = bits of inputs, Z = random bits and
//        gate variables; the objective is the definitions of the
//        observations.
//
// In both modes an input depends on the bits of every observation declared
// before it, and random ranges become hard constraints.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dqmax/bitvector/program.hpp"
#include "dqmax/formula.hpp"

namespace dqmax::bv {

struct BitMap {
  struct Entry {
    std::string name;
    StmtKind kind = StmtKind::Random;
    std::vector<Var> bits;  // least significant first
  };
  std::vector<Entry> entries;  // declaration order

  const Entry* find(const std::string& name) const;
  // Entry and bit position of a variable, if it belongs to a named value.
  std::optional<std::pair<const Entry*, std::size_t>> locate(Var v) const;
  // "y1" for a one-bit value, "z1[2]" otherwise; "v<id>" for gate variables.
  std::string bit_name(Var v) const;
};

struct Encoding {
  Problem problem;
  BitMap map;
};

Encoding encode(const Program& prog);

}  // namespace dqmax::bv
