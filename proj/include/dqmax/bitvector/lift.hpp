#pragma once

// Bit-level solutions back to per-input bitvector functions.

#include <string>
#include <vector>

#include "dqmax/bitvector/encoder.hpp"
#include "dqmax/bitvector/minimize.hpp"
#include "dqmax/formula.hpp"

namespace dqmax::bv {

struct LiftedBit {
  Var var;
  std::vector<Var> support;
  std::vector<Cube> sop;  // over `support`, variable j = support[j]
  std::string text;
};

struct LiftedInput {
  std::string name;
  std::vector<LiftedBit> bits;  // least significant first
  std::string rendered;         // "x1 = 1 0 0", most significant first
};

struct LiftedFunction {
  std::vector<LiftedInput> inputs;  // declaration order
};

// Minimizes every bit function exactly and renders it with observation-bit
// names. Throws Internal if a minimized form disagrees with the raw
// function anywhere on its support.
LiftedFunction lift(const SynthesizedSolution& sol, const BitMap& map);

// Point encoding used by minimize(): bit j = value of support[j].
std::uint64_t point_of_minterm(std::size_t support_size, std::uint64_t canonical_index);
std::uint64_t minterm_of_point(std::size_t support_size, std::uint64_t point);

// Widens each function to its simplest form among those that keep the
// optimum. Function by function, every support point whose value can be
// flipped without lowering the count becomes a don't-care; the function is
// replaced by the minimum SOP over those don't-cares if the joint change
// still scores at least as well, and kept otherwise. The result carries its
// verified count.
SynthesizedSolution relax_dont_cares(const Problem& p, const SynthesizedSolution& s);

std::string render(const LiftedFunction& f);

}  // namespace dqmax::bv
