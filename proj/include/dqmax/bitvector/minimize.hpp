#pragma once

// Exact two-level minimization: Quine-McCluskey prime generation followed
// by Petrick's method for the cover.
//
// Points and cubes are over h ordered variables; bit j of a point is the
// value of variable j. A cube keeps variable j iff bit j of `mask` is set,
// with polarity given by bit j of `value`.

#include <cstdint>
#include <string>
#include <vector>

namespace dqmax::bv {

struct Cube {
  std::uint64_t value = 0;
  std::uint64_t mask = 0;

  bool covers(std::uint64_t point) const { return (point & mask) == value; }
  std::size_t literals() const;
  auto operator<=>(const Cube&) const = default;
};

// A minimum sum of products that is 1 on `on`, 0 outside `on` and `dc`, and
// free on `dc`. Covers are ranked by number of cubes, then literals, then
// negative literals, then lexicographically (variable 0 first, positive
// before negative before absent). No cubes = constant 0; one cube with an
// empty mask = constant 1. Throws InstanceTooLarge above 20 variables or
// when Petrick's expansion outgrows its term budget.
std::vector<Cube> minimize(std::size_t h, const std::vector<std::uint64_t>& on,
                           const std::vector<std::uint64_t>& dc = {});

bool evaluate(const std::vector<Cube>& sop, std::uint64_t point);

// Renders with the given variable names: "0", "1", "a", "a & !b | c".
std::string render_sop(const std::vector<Cube>& sop, const std::vector<std::string>& names);

}  // namespace dqmax::bv
