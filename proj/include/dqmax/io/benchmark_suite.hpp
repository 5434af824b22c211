#pragma once

// The eight benchmark instances: three hand-written CNF instances and five
// bitblasted programs. The texts are embedded so the binary runs without
// the data directory; the test suite checks they match data/.

#include <optional>
#include <string>
#include <vector>

#include "dqmax/driver.hpp"
#include "dqmax/formula.hpp"

namespace dqmax {

struct BenchInstance {
  std::string name;
  std::string file;  // name under data/
  bool program = false;
  std::string text;
};

std::vector<BenchInstance> default_suite();

// The DQMax#SAT instance of a bench entry (encoded for programs).
Problem bench_problem(const BenchInstance& b);

struct BenchRow {
  std::string name;
  std::size_t x = 0, y = 0, z = 0, clauses = 0;
  std::optional<Count> count;
  Count total = 0;
  std::string method;
  double ms = 0;
  std::string error;  // empty on success
  std::string lifted;
};

BenchRow run_bench(const BenchInstance& b, const SolveOptions& options = {});
std::string render_bench_table(const std::vector<BenchRow>& rows);

}  // namespace dqmax
