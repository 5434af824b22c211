#pragma once

// The dqmscnf text format: DIMACS CNF with a d/r/e prefix.
//
//   p dqmscnf <num_vars> <num_clauses>
//   d <x> <h_1> ... <h_k> 0     one per maximizing variable, in order
//   r <y ...> 0                 counting variables
//   e <z ...> 0                 existential variables
//   <lit> ... 0                 clauses
//
// Lines starting with 'c' are comments.

#include <string>
#include <string_view>

#include "dqmax/formula.hpp"

namespace dqmax {

// Throws Error(Parse) with a line number, or Error(DependencyViolation)
// when a dependency is declared under `d`.
Problem parse_instance(std::string_view text);
Problem load_instance(const std::string& path);

std::string render_instance(const Problem& p);

std::string read_file(const std::string& path);

}  // namespace dqmax
