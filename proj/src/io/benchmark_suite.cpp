#include "dqmax/io/benchmark_suite.hpp"

#include <cstdio>

#include "dqmax/bitvector/encoder.hpp"
#include "dqmax/bitvector/program.hpp"
#include "dqmax/error.hpp"
#include "dqmax/io/dimacs.hpp"

namespace dqmax {

std::vector<BenchInstance> default_suite() {
  return {
      {"ex1", "ex1.dqm", false, R"(c max^{z1,z2} x1. R y1 y2. E z1 z2.
c (x1 <=> y1) & (z1 <=> y1 | y2) & (z2 <=> y1 & y2)
c variables: 1 = x1, 2 = y1, 3 = y2, 4 = z1, 5 = z2
p dqmscnf 5 7
d 1 4 5 0
r 2 3 0
e 4 5 0
3 -5 0
-3 4 0
2 -5 0
2 3 -4 0
1 -2 0
-1 4 0
-1 -3 5 0
)"},
      {"ex2", "ex2.dqm", false, R"(c max^{z1} x1. max^{z2} x2. R y1 y2. E z1 z2.
c (x1 => y2) & (y1 => x2) & (y1 | z2 <=> y2 & z1)
c variables: 1 = x1, 2 = x2, 3 = y1, 4 = y2, 5 = z1, 6 = z2
p dqmscnf 6 7
d 1 5 0
d 2 6 0
r 3 4 0
e 5 6 0
-1 4 0
2 -3 0
-3 4 0
-3 5 0
4 -6 0
5 -6 0
3 -4 -5 6 0
)"},
      {"ex10", "ex10.dqm", false, R"(c max^{z1} x1. R y1 y2. E z1.
c (x1 <=> y1) & (z1 <=> y1 | y2)
c variables: 1 = x1, 2 = y1, 3 = y2, 4 = z1
p dqmscnf 4 5
d 1 4 0
r 2 3 0
e 4 0
-1 2 0
1 -2 0
2 3 -4 0
-2 4 0
-3 4 0
)"},
      {"ex4 (3 bits)", "ex4_3.bv", true, R"(# Two secrets, their sum is observed, one guess that must land between them.
width 3
mode reach
random y1
random y2
observe z1 := y1 + y2
input x1
assume y1 <= x1
win x1 <= y2
)"},
      {"ex4 (4 bits)", "ex4_4.bv", true, R"(# Two secrets, their sum is observed, one guess that must land between them.
width 4
mode reach
random y1
random y2
observe z1 := y1 + y2
input x1
assume y1 <= x1
win x1 <= y2
)"},
      {"ex6 (3 bits)", "ex6.bv", true, R"(# Three adaptive threshold queries against a secret in 1..6. Each answer
# tells whether the secret is at least the query.
width 3
mode leak
random z in 1..6
input x1
observe y1 := x1 <= z
input x2
observe y2 := x2 <= z
input x3
observe y3 := x3 <= z
)"},
      {"guessbits (3 bits)", "guessbits.bv", true, R"(# Two threshold queries, then a guess of the secret.
width 3
mode reach
random y1
input x1
observe z1 := x1 >= y1
input x2
observe z2 := x2 >= y1
input x3
win x3 == y1
)"},
      {"capacity (3 bits)", "capacity.bv", true, R"(# Three adaptive threshold queries against an unconstrained secret.
width 3
mode leak
random z
input x1
observe y1 := x1 >= z
input x2
observe y2 := x2 >= z
input x3
observe y3 := x3 >= z
)"},
  };
}

Problem bench_problem(const BenchInstance& b) {
  if (b.program) return bv::encode(bv::parse_program(b.text)).problem;
  return parse_instance(b.text);
}

BenchRow run_bench(const BenchInstance& b, const SolveOptions& options) {
  BenchRow row;
  row.name = b.name;
  try {
    if (b.program) {
      const auto res = solve_program(bv::parse_program(b.text), options);
      const Problem& p = res.encoding.problem;
      row.x = p.max_vars.size();
      row.y = p.count_vars.size();
      row.z = p.exist_vars.size();
      row.clauses = p.cnf.size();
      row.count = res.report.solution.achieved_count;
      row.total = res.report.solution.total;
      row.method = res.report.method;
      row.ms = res.report.wall_ms;
      row.lifted = bv::render(res.lifted);
    } else {
      const Problem p = parse_instance(b.text);
      row.x = p.max_vars.size();
      row.y = p.count_vars.size();
      row.z = p.exist_vars.size();
      row.clauses = p.cnf.size();
      const auto res = solve(p, options);
      row.count = res.solution.achieved_count;
      row.total = res.solution.total;
      row.method = res.method;
      row.ms = res.wall_ms;
    }
  } catch (const Error& e) {
    row.error = e.what();
  }
  return row;
}

std::string render_bench_table(const std::vector<BenchRow>& rows) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-20s %4s %4s %5s %6s %10s %-12s %10s\n", "instance", "|X|", "|Y|", "|Z|",
                "|Phi|", "count", "method", "time");
  out += buf;
  for (const auto& r : rows) {
    const std::string count = r.count ? r.count->str() + "/" + r.total.str() : "-";
    std::snprintf(buf, sizeof buf, "%-20s %4zu %4zu %5zu %6zu %10s %-12s %8.1fms\n", r.name.c_str(), r.x, r.y,
                  r.z, r.clauses, count.c_str(), r.method.c_str(), r.ms);
    out += buf;
    if (!r.error.empty()) out += "  error: " + r.error + "\n";
  }
  return out;
}

}  // namespace dqmax
