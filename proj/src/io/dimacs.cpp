#include "dqmax/io/dimacs.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "dqmax/error.hpp"

namespace dqmax {
namespace {

std::vector<long long> parse_ints(std::string_view line, std::size_t line_no,
                                  std::size_t skip) {
  std::vector<long long> out;
  std::size_t i = skip;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    long long value = 0;
    const auto* first = line.data() + i;
    const auto* last = line.data() + line.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || (ptr != last && *ptr != ' ' && *ptr != '\t' && *ptr != '\r'))
      throw Error(ErrorKind::Parse, "expected an integer", line_no, i + 1);
    i = static_cast<std::size_t>(ptr - line.data());
    out.push_back(value);
  }
  return out;
}

}  // namespace

Problem parse_instance(std::string_view text) {
  Problem p;
  bool header = false;
  long long declared_clauses = 0;
  std::uint32_t num_vars = 0;
  // 1 = max, 2 = count, 3 = exist
  std::map<std::uint32_t, int> role;
  struct PendingDep {
    std::size_t line;
    std::vector<Var> deps;
  };
  std::vector<PendingDep> pending;
  bool in_matrix = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;

  auto declare = [&](long long v, int r, std::size_t ln) {
    if (v <= 0 || v > num_vars)
      throw Error(ErrorKind::Parse, "variable " + std::to_string(v) + " out of range", ln);
    if (!role.emplace(static_cast<std::uint32_t>(v), r).second)
      throw Error(ErrorKind::Parse, "variable " + std::to_string(v) + " declared twice", ln);
  };

  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
      if (end == text.size()) break;
      continue;
    }
    line = line.substr(first);
    const char tag = line[0];
    if (tag == 'c') continue;
    if (tag == 'p') {
      if (header) throw Error(ErrorKind::Parse, "duplicate header", line_no);
      std::istringstream is{std::string(line)};
      std::string p_tag, format;
      long long nv = -1, nc = -1;
      is >> p_tag >> format >> nv >> nc;
      std::string extra;
      if (!is || format != "dqmscnf" || nv < 0 || nc < 0 || (is >> extra))
        throw Error(ErrorKind::Parse, "header must be 'p dqmscnf <vars> <clauses>'", line_no);
      header = true;
      num_vars = static_cast<std::uint32_t>(nv);
      declared_clauses = nc;
      p.cnf = CnfFormula(num_vars);
      continue;
    }
    if (!header) throw Error(ErrorKind::Parse, "missing 'p dqmscnf' header", line_no);
    if (tag == 'd' || tag == 'r' || tag == 'e') {
      if (in_matrix)
        throw Error(ErrorKind::Parse, "prefix line after the first clause", line_no);
      auto ints = parse_ints(line, line_no, 1);
      if (ints.empty() || ints.back() != 0)
        throw Error(ErrorKind::Parse, "prefix line must end with 0", line_no);
      ints.pop_back();
      for (long long v : ints)
        if (v == 0) throw Error(ErrorKind::Parse, "unexpected 0 inside prefix line", line_no);
      if (tag == 'd') {
        if (ints.empty())
          throw Error(ErrorKind::Parse, "'d' line needs a maximizing variable", line_no);
        declare(ints[0], 1, line_no);
        p.max_vars.emplace_back(static_cast<std::uint32_t>(ints[0]));
        PendingDep dep{line_no, {}};
        for (std::size_t k = 1; k < ints.size(); ++k) {
          if (ints[k] <= 0 || ints[k] > num_vars)
            throw Error(ErrorKind::Parse, "dependency " + std::to_string(ints[k]) + " out of range",
                        line_no);
          dep.deps.emplace_back(static_cast<std::uint32_t>(ints[k]));
        }
        pending.push_back(std::move(dep));
      } else {
        for (long long v : ints) {
          declare(v, tag == 'r' ? 2 : 3, line_no);
          (tag == 'r' ? p.count_vars : p.exist_vars).emplace_back(static_cast<std::uint32_t>(v));
        }
      }
      continue;
    }
    if (tag != '-' && (tag < '0' || tag > '9'))
      throw Error(ErrorKind::Parse, std::string("unexpected line tag '") + tag + "'", line_no);
    in_matrix = true;
    auto ints = parse_ints(line, line_no, 0);
    if (ints.empty() || ints.back() != 0)
      throw Error(ErrorKind::Parse, "clause must end with 0", line_no);
    ints.pop_back();
    std::vector<Lit> lits;
    for (long long v : ints) {
      if (v == 0) throw Error(ErrorKind::Parse, "unexpected 0 inside clause", line_no);
      const long long id = v < 0 ? -v : v;
      if (id > num_vars)
        throw Error(ErrorKind::Parse, "literal " + std::to_string(v) + " exceeds num_vars", line_no);
      if (!role.count(static_cast<std::uint32_t>(id)))
        throw Error(ErrorKind::Parse, "variable " + std::to_string(id) + " is not declared",
                    line_no);
      lits.push_back(Lit::from_dimacs(static_cast<int>(v)));
    }
    p.cnf.add(Clause(std::move(lits)));
    --declared_clauses;
  }
  if (!header) throw Error(ErrorKind::Parse, "empty instance", line_no);
  if (declared_clauses != 0)
    throw Error(ErrorKind::Parse, "clause count does not match the header", line_no);

  for (const auto& dep : pending) {
    for (Var v : dep.deps) {
      auto it = role.find(v.id);
      if (it == role.end())
        throw Error(ErrorKind::Parse, "dependency " + std::to_string(v.id) + " is not declared",
                    dep.line);
      if (it->second == 1)
        throw Error(ErrorKind::DependencyViolation,
                    "dependency " + std::to_string(v.id) + " is a maximizing variable", dep.line);
    }
    auto sorted = dep.deps;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error(ErrorKind::Parse, "repeated dependency", dep.line);
    p.deps.push_back(std::move(sorted));
  }
  p.normalize();
  p.validate();
  return p;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Problem load_instance(const std::string& path) { return parse_instance(read_file(path)); }

std::string render_instance(const Problem& p) {
  std::ostringstream os;
  os << "p dqmscnf " << p.cnf.num_vars() << ' ' << p.cnf.size() << '\n';
  for (std::size_t i = 0; i < p.max_vars.size(); ++i) {
    os << "d " << p.max_vars[i].id;
    for (Var v : p.deps[i]) os << ' ' << v.id;
    os << " 0\n";
  }
  os << 'r';
  for (Var v : p.count_vars) os << ' ' << v.id;
  os << " 0\n";
  if (!p.exist_vars.empty()) {
    os << 'e';
    for (Var v : p.exist_vars) os << ' ' << v.id;
    os << " 0\n";
  }
  for (const auto& c : p.cnf.clauses()) {
    for (Lit l : c.lits()) os << l.to_dimacs() << ' ';
    os << "0\n";
  }
  return os.str();
}

}  // namespace dqmax
