#include "dqmax/driver.hpp"

#include <chrono>

#include "dqmax/error.hpp"
#include "dqmax/global_solver.hpp"
#include "dqmax/local_solver.hpp"
#include "dqmax/projected_counter.hpp"

namespace dqmax {

std::optional<Method> parse_method(const std::string& tag) {
  if (tag == "auto") return Method::Auto;
  if (tag == "global") return Method::Global;
  if (tag == "incremental") return Method::Incremental;
  if (tag == "local") return Method::Local;
  return std::nullopt;
}

std::string to_string(Method m) {
  switch (m) {
    case Method::Auto: return "auto";
    case Method::Global: return "global";
    case Method::Incremental: return "incremental";
    case Method::Local: return "local";
  }
  return "auto";
}

SolveReport solve(const Problem& p, const SolveOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  SolveReport out;

  IncrementalOptions inc;
  inc.policy = options.policy;
  inc.budget = options.budget;
  inc.oracle.workers = options.workers;
  inc.on_iteration = options.on_iteration;

  auto run_incremental = [&]() {
    auto res = solve_incremental(p, inc);
    out.solution = std::move(res.solution);
    out.trace = std::move(res.trace);
    out.complete = res.complete;
    out.method = "incremental";
  };

  switch (options.method) {
    case Method::Global: {
      GlobalOptions g;
      g.oracle.workers = options.workers;
      out.solution = solve_global(p, g);
      out.method = "global";
      break;
    }
    case Method::Incremental:
      run_incremental();
      break;
    case Method::Local:
    case Method::Auto: {
      LocalOptions l;
      l.workers = options.workers;
      l.global.oracle.workers = options.workers;
      try {
        out.solution = solve_local(p, l).solution;
        out.method = "local";
      } catch (const Error& e) {
        if (options.method == Method::Local || e.kind() != ErrorKind::NoEligibleVariable) throw;
        run_incremental();
      }
      break;
    }
  }
  check_solution(p, out.solution);
  out.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

ProgramReport solve_program(const bv::Program& prog, const SolveOptions& options, bool relax) {
  ProgramReport out;
  out.encoding = bv::encode(prog);
  out.report = solve(out.encoding.problem, options);
  if (relax && out.report.complete)
    out.report.solution = bv::relax_dont_cares(out.encoding.problem, out.report.solution);
  out.lifted = bv::lift(out.report.solution, out.encoding.map);
  return out;
}

}  // namespace dqmax
