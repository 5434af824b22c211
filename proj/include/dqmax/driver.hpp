#pragma once

// Method selection shared by the command line, the benchmark suite and the
// acceptance checks.

#include <optional>
#include <string>
#include <vector>

#include "dqmax/bitvector/encoder.hpp"
#include "dqmax/bitvector/lift.hpp"
#include "dqmax/bitvector/program.hpp"
#include "dqmax/formula.hpp"
#include "dqmax/incremental_solver.hpp"

namespace dqmax {

// Auto tries the local method and falls back to incremental when no
// variable can be split on.
enum class Method { Auto, Global, Incremental, Local };

std::optional<Method> parse_method(const std::string& tag);
std::string to_string(Method m);

struct SolveOptions {
  Method method = Method::Auto;
  ExpansionPolicy policy;
  std::optional<std::size_t> budget;  // incremental oracle calls
  unsigned workers = 0;
  std::function<void(const IterationRecord&)> on_iteration;
};

struct SolveReport {
  SynthesizedSolution solution;
  std::string method;  // the method that actually ran
  std::vector<IterationRecord> trace;
  bool complete = true;
  double wall_ms = 0;
};

// The returned solution's count has been confirmed by check_solution.
SolveReport solve(const Problem& p, const SolveOptions& options = {});

struct ProgramReport {
  bv::Encoding encoding;
  SolveReport report;
  bv::LiftedFunction lifted;
};

// Parse, encode, solve, optionally relax don't-cares, and lift.
ProgramReport solve_program(const bv::Program& prog, const SolveOptions& options = {}, bool relax = true);

}  // namespace dqmax
