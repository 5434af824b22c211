#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dqmax/driver.hpp"
#include "dqmax/error.hpp"
#include "dqmax/io/benchmark_suite.hpp"
#include "dqmax/io/dimacs.hpp"
#include "dqmax/io/generator.hpp"
#include "dqmax/io/result_document.hpp"
#include "dqmax/projected_counter.hpp"

namespace dqmax {
namespace {

struct SolveFlags {
  std::string method = "auto";
  std::string policy = "round-robin";
  std::size_t budget = 0;  // 0 = no limit
  unsigned workers = 0;
  bool json = false;
  bool text = false;
  bool trace = false;
};

void add_solve_flags(CLI::App* cmd, SolveFlags& f) {
  cmd->add_option("--method", f.method, "auto, global, incremental or local")
      ->check(CLI::IsMember({"auto", "global", "incremental", "local"}));
  cmd->add_option("--policy", f.policy, "incremental expansion order")
      ->check(CLI::IsMember({"round-robin", "fixed-order", "largest-remaining"}));
  cmd->add_option("--budget", f.budget, "maximum incremental oracle calls (0 = unlimited)");
  cmd->add_option("--workers", f.workers, "worker threads (0 = DQMAX_WORKERS or hardware)");
  auto* json = cmd->add_flag("--json", f.json, "print a JSON result document");
  auto* text = cmd->add_flag("--text", f.text, "print a plain-text summary (default)");
  json->excludes(text);
  cmd->add_flag("--trace", f.trace, "log every incremental iteration to stderr as a JSON line");
}

SolveOptions to_options(const SolveFlags& f, std::ostream& err) {
  SolveOptions o;
  o.method = *parse_method(f.method);
  o.policy.strategy = *parse_strategy(f.policy);
  if (f.budget) o.budget = f.budget;
  o.workers = f.workers;
  if (f.trace)
    o.on_iteration = [&err](const IterationRecord& r) { err << iteration_to_json(r).dump() << "\n"; };
  return o;
}

ResultDocument document_of(const SolveReport& r) {
  ResultDocument doc;
  doc.solution = r.solution;
  doc.method = r.method;
  doc.iterations = r.trace;
  doc.wall_ms = r.wall_ms;
  return doc;
}

void print_text(std::ostream& out, const SolveReport& r) {
  const auto& s = r.solution;
  out << "count " << *s.achieved_count << " of " << s.total << " (method " << r.method
      << (r.complete ? "" : ", stopped by budget") << ")\n";
  for (const auto& f : s.functions) {
    out << "var " << f.var.id << " over {";
    for (std::size_t k = 0; k < f.fn.support.size(); ++k) out << (k ? " " : "") << f.fn.support[k].id;
    out << "}: " << to_string(f.fn) << "\n";
  }
}

int cmd_solve(const std::string& file, const SolveFlags& f, std::ostream& out, std::ostream& err) {
  const Problem p = load_instance(file);
  const SolveReport r = solve(p, to_options(f, err));
  if (f.json) out << render_result(document_of(r));
  else print_text(out, r);
  return 0;
}

int cmd_solve_program(const std::string& file, const SolveFlags& f, bool relax, const std::string& emit,
                      std::ostream& out, std::ostream& err) {
  const bv::Program prog = bv::load_program(file);
  if (!emit.empty()) {
    std::ofstream os(emit);
    if (!os) throw Error(ErrorKind::Parse, "cannot write " + emit);
    os << render_instance(bv::encode(prog).problem);
  }
  const ProgramReport r = solve_program(prog, to_options(f, err), relax);
  if (f.json) {
    ResultDocument doc = document_of(r.report);
    for (const auto& in : r.lifted.inputs) {
      doc.lifted.emplace_back(in.name, in.rendered);
      for (const auto& b : in.bits) doc.bit_lifted[b.var.id] = b.text;
    }
    out << render_result(doc);
  } else {
    const auto& s = r.report.solution;
    const Problem& p = r.encoding.problem;
    out << "count " << *s.achieved_count << " of " << s.total << " (method " << r.report.method << ", |X|="
        << p.max_vars.size() << " |Y|=" << p.count_vars.size() << " |Z|=" << p.exist_vars.size()
        << " clauses=" << p.cnf.size() << ")\n"
        << bv::render(r.lifted);
  }
  return 0;
}

int cmd_check(const std::string& instance, const std::string& result, std::ostream& out, std::ostream& err) {
  const Problem p = load_instance(instance);
  const ResultDocument doc = parse_result(read_file(result));
  try {
    const Count c = verify_result(p, doc);
    out << "ok: count " << c << " of " << doc.solution.total << " verified\n";
    return 0;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::VerificationMismatch && e.kind() != ErrorKind::DependencyViolation) throw;
    err << "mismatch: " << e.what() << "\n";
    return 1;
  }
}

int cmd_count(const std::string& file, std::ostream& out) {
  const Problem p = load_instance(file);
  out << count_projected(p.cnf, p.count_vars) << "\n";
  return 0;
}

int cmd_bench(const SolveFlags& f, bool show_lifted, std::ostream& out, std::ostream& err) {
  std::vector<BenchRow> rows;
  bool failed = false;
  for (const auto& b : default_suite()) {
    rows.push_back(run_bench(b, to_options(f, err)));
    failed = failed || !rows.back().error.empty();
  }
  out << render_bench_table(rows);
  if (show_lifted)
    for (const auto& r : rows)
      if (!r.lifted.empty()) out << "\n" << r.name << ":\n" << r.lifted;
  return failed ? 1 : 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Synthesizes dependency-respecting Boolean functions that maximize a projected model count.",
               "dqmax"};
  app.require_subcommand(1);

  std::string file, result, emit, suite = "paper";
  SolveFlags flags;
  bool no_relax = false, show_lifted = false;
  std::uint64_t seed = 0;
  GeneratorShape shape;

  auto* solve_cmd = app.add_subcommand("solve", "solve a dqmscnf instance");
  solve_cmd->add_option("file", file, "instance file")->required();
  add_solve_flags(solve_cmd, flags);

  auto* program_cmd = app.add_subcommand("solve-program", "encode, solve and lift a bitvector program");
  program_cmd->add_option("file", file, "program file")->required();
  add_solve_flags(program_cmd, flags);
  program_cmd->add_flag("--no-relax", no_relax, "keep the solver's raw functions instead of simplifying them");
  program_cmd->add_option("--emit-instance", emit, "also write the encoded dqmscnf instance here");

  auto* check_cmd = app.add_subcommand("check", "recount a result document against its instance");
  check_cmd->add_option("instance", file, "instance file")->required();
  check_cmd->add_option("result", result, "result JSON")->required();

  auto* count_cmd = app.add_subcommand("count", "projected count with every maximizing variable left free");
  count_cmd->add_option("file", file, "instance file")->required();

  auto* bench_cmd = app.add_subcommand("bench", "run the benchmark suite");
  bench_cmd->add_option("--suite", suite, "suite name")->check(CLI::IsMember({"paper"}));
  add_solve_flags(bench_cmd, flags);
  bench_cmd->add_flag("--show-lifted", show_lifted, "print the lifted functions of program rows");

  auto* random_cmd = app.add_subcommand("random", "print a random dqmscnf instance");
  random_cmd->add_option("--seed", seed, "generator seed");
  random_cmd->add_option("--vars", shape.vars, "number of variables");
  random_cmd->add_option("--max-x", shape.max_x, "maximum number of maximizing variables");
  random_cmd->add_option("--max-y", shape.max_y, "maximum number of counting variables");
  random_cmd->add_option("--max-deps", shape.max_deps, "maximum dependency set size");
  random_cmd->add_option("--clauses", shape.clauses, "number of clauses");

  std::vector<const char*> argv{"dqmax"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (*solve_cmd) return cmd_solve(file, flags, out, err);
    if (*program_cmd) return cmd_solve_program(file, flags, !no_relax, emit, out, err);
    if (*check_cmd) return cmd_check(file, result, out, err);
    if (*count_cmd) return cmd_count(file, out);
    if (*bench_cmd) return cmd_bench(flags, show_lifted, out, err);
    if (*random_cmd) {
      out << render_instance(random_instance(seed, shape));
      return 0;
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    const bool input = e.kind() == ErrorKind::Parse || e.kind() == ErrorKind::UnsupportedOperator ||
                       e.kind() == ErrorKind::PreconditionViolation;
    return input ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace dqmax
