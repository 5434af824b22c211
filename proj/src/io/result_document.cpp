#include "dqmax/io/result_document.hpp"

#include <algorithm>

#include "dqmax/error.hpp"
#include "dqmax/projected_counter.hpp"

namespace dqmax {
namespace {

using nlohmann::json;

json count_to_json(const Count& c) {
  if (c <= std::numeric_limits<std::uint64_t>::max()) return c.convert_to<std::uint64_t>();
  return c.str();
}

Count count_from_json(const json& j, const char* what) {
  if (j.is_number_unsigned()) return Count(j.get<std::uint64_t>());
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return Count(j.get<std::int64_t>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (!s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
      return Count(s);
  }
  throw Error(ErrorKind::Parse, std::string("'") + what + "' must be a non-negative integer");
}

json function_to_json(const SynthesizedFunction& f) {
  json support = json::array();
  for (Var v : f.fn.support) support.push_back(v.id);
  json minterms = json::array();
  for (const auto& m : f.fn.minterms) {
    json lits = json::array();
    for (Lit l : m.lits()) lits.push_back(l.to_dimacs());
    minterms.push_back(std::move(lits));
  }
  return {{"support", std::move(support)}, {"minterms", std::move(minterms)}};
}

SynthesizedFunction function_from_json(std::uint32_t id, const json& j) {
  if (!j.is_object() || !j.contains("support") || !j.contains("minterms") || !j["support"].is_array() ||
      !j["minterms"].is_array())
    throw Error(ErrorKind::Parse, "function " + std::to_string(id) + " needs 'support' and 'minterms' arrays");
  SynthesizedFunction f;
  f.var = Var(id);
  for (const auto& v : j["support"]) {
    if (!v.is_number_integer() || v.get<std::int64_t>() <= 0)
      throw Error(ErrorKind::Parse, "support entries must be positive variable ids");
    f.fn.support.emplace_back(static_cast<std::uint32_t>(v.get<std::int64_t>()));
  }
  std::vector<std::uint64_t> indices;
  for (const auto& m : j["minterms"]) {
    if (!m.is_array()) throw Error(ErrorKind::Parse, "a minterm must be an array of literals");
    std::vector<Lit> lits;
    for (const auto& l : m) {
      if (!l.is_number_integer() || l.get<std::int64_t>() == 0)
        throw Error(ErrorKind::Parse, "minterm literals must be nonzero integers");
      lits.push_back(Lit::from_dimacs(static_cast<int>(l.get<std::int64_t>())));
    }
    if (lits.size() != f.fn.support.size())
      throw Error(ErrorKind::DependencyViolation,
                  "minterm of function " + std::to_string(id) + " is not complete over its support");
    for (std::size_t k = 0; k < lits.size(); ++k)
      if (lits[k].var() != f.fn.support[k])
        throw Error(ErrorKind::DependencyViolation,
                    "minterm of function " + std::to_string(id) + " does not follow its support order");
    indices.push_back(minterm_index(Monomial(lits)));
  }
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  f.fn = BooleanFunction::from_indices(f.fn.support, indices);
  return f;
}

}  // namespace

json iteration_to_json(const IterationRecord& r) {
  json j;
  j["iteration"] = r.iteration;
  j["expanded_var"] = r.expanded_var ? json(r.expanded_var->id) : json(nullptr);
  j["expanded_on"] = r.expanded_on ? json(r.expanded_on->id) : json(nullptr);
  j["count"] = count_to_json(r.count);
  j["elapsed_ms"] = r.elapsed_ms;
  j["oracle_nodes"] = r.stats.nodes;
  j["sat_calls"] = r.stats.sat_calls;
  return j;
}

json to_json(const ResultDocument& doc) {
  const SynthesizedSolution& s = doc.solution;
  if (!s.achieved_count) throw Error(ErrorKind::PreconditionViolation, "a result needs a count");
  json j;
  j["count"] = count_to_json(*s.achieved_count);
  j["total"] = count_to_json(s.total);
  j["ratio"] = s.total == 0 ? 0.0 : (*s.achieved_count).convert_to<double>() / s.total.convert_to<double>();
  json functions = json::object();
  for (const auto& f : s.functions) {
    json fj = function_to_json(f);
    if (auto it = doc.bit_lifted.find(f.var.id); it != doc.bit_lifted.end()) fj["lifted"] = it->second;
    functions[std::to_string(f.var.id)] = std::move(fj);
  }
  j["functions"] = std::move(functions);
  j["method"] = doc.method;
  if (!doc.iterations.empty()) {
    json its = json::array();
    for (const auto& r : doc.iterations) its.push_back(iteration_to_json(r));
    j["iterations"] = std::move(its);
  }
  if (!doc.lifted.empty()) {
    json lifted = json::object();
    for (const auto& [name, text] : doc.lifted) lifted[name] = text;
    j["lifted"] = std::move(lifted);
  }
  j["wall_ms"] = doc.wall_ms;
  return j;
}

std::string render_result(const ResultDocument& doc) { return to_json(doc).dump(2) + "\n"; }

ResultDocument parse_result(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::Parse, "a result document is a JSON object");
  for (const char* key : {"count", "total", "functions"})
    if (!j.contains(key)) throw Error(ErrorKind::Parse, std::string("missing '") + key + "'");
  ResultDocument doc;
  doc.solution.achieved_count = count_from_json(j["count"], "count");
  doc.solution.total = count_from_json(j["total"], "total");
  if (!j["functions"].is_object()) throw Error(ErrorKind::Parse, "'functions' must be an object");
  for (const auto& [key, value] : j["functions"].items()) {
    std::uint32_t id = 0;
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(key, &used);
      if (used != key.size() || v == 0 || v > UINT32_MAX) throw std::invalid_argument(key);
      id = static_cast<std::uint32_t>(v);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "function key '" + key + "' is not a variable id");
    }
    doc.solution.functions.push_back(function_from_json(id, value));
    if (value.contains("lifted") && value["lifted"].is_string())
      doc.bit_lifted[id] = value["lifted"].get<std::string>();
  }
  std::sort(doc.solution.functions.begin(), doc.solution.functions.end(),
            [](const auto& a, const auto& b) { return a.var < b.var; });
  if (j.contains("method") && j["method"].is_string()) doc.method = j["method"].get<std::string>();
  if (j.contains("wall_ms") && j["wall_ms"].is_number()) doc.wall_ms = j["wall_ms"].get<double>();
  if (j.contains("lifted") && j["lifted"].is_object())
    for (const auto& [name, text] : j["lifted"].items())
      if (text.is_string()) doc.lifted.emplace_back(name, text.get<std::string>());
  return doc;
}

Count verify_result(const Problem& p, const ResultDocument& doc) {
  SynthesizedSolution s;
  for (Var x : p.max_vars) {
    const SynthesizedFunction* f = doc.solution.find(x);
    if (!f) throw Error(ErrorKind::DependencyViolation, "no function for variable " + std::to_string(x.id));
    s.functions.push_back(*f);
  }
  if (s.functions.size() != doc.solution.functions.size())
    throw Error(ErrorKind::DependencyViolation, "functions given for variables that are not maximizing");
  const Count total = pow2(p.count_vars.size());
  if (doc.solution.total != total)
    throw Error(ErrorKind::VerificationMismatch,
                "claimed total " + doc.solution.total.str() + " but 2^|Y| is " + total.str());
  s.total = total;
  s.achieved_count = doc.solution.achieved_count;
  return check_solution(p, s);
}

}  // namespace dqmax
