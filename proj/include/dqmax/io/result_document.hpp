#pragma once

// JSON result documents:
//
//   {"count": 3, "total": 4, "ratio": 0.75, "method": "global",
//    "functions": {"1": {"support": [4, 5], "minterms": [[4, 5], [4, -5]],
//                        "lifted": "z1"}},
//    "iterations": [...], "lifted": {"x1": "x1 = 1 0 0"}, "wall_ms": 1.2}
//
// Minterm literals are signed variable ids. Counts that do not fit in 64
// bits are written as decimal strings. "iterations" and "lifted" are
// optional.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dqmax/formula.hpp"
#include "dqmax/incremental_solver.hpp"

namespace dqmax {

struct ResultDocument {
  SynthesizedSolution solution;  // achieved_count is the claimed count
  std::string method;
  std::vector<IterationRecord> iterations;
  std::map<std::uint32_t, std::string> bit_lifted;  // per max var
  std::vector<std::pair<std::string, std::string>> lifted;  // per program input
  double wall_ms = 0;
};

nlohmann::json to_json(const ResultDocument& doc);
nlohmann::json iteration_to_json(const IterationRecord& r);
std::string render_result(const ResultDocument& doc);

// Throws Error(Parse) on malformed documents.
ResultDocument parse_result(std::string_view text);

// Recounts the document's functions against p. Returns the recount; throws
// VerificationMismatch when it differs from the claimed count or the total
// is not 2^|Y|, DependencyViolation when a support leaves H_i.
Count verify_result(const Problem& p, const ResultDocument& doc);

}  // namespace dqmax
