#include "dqmax/bitvector/lift.hpp"

#include "dqmax/error.hpp"
#include "dqmax/projected_counter.hpp"

namespace dqmax::bv {
namespace {

std::vector<std::uint64_t> on_points(const BooleanFunction& fn) {
  const std::size_t h = fn.support.size();
  std::vector<std::uint64_t> out;
  for (const auto& m : fn.minterms) out.push_back(point_of_minterm(h, minterm_index(m)));
  return out;
}

BooleanFunction from_sop(const std::vector<Var>& support, const std::vector<Cube>& sop) {
  const std::size_t h = support.size();
  std::vector<std::uint64_t> chosen;
  for (std::uint64_t k = 0; k < (std::uint64_t{1} << h); ++k)
    if (evaluate(sop, point_of_minterm(h, k))) chosen.push_back(k);
  return BooleanFunction::from_indices(support, chosen);
}

std::string bracket(const std::string& text, const std::vector<Cube>& sop) {
  if (sop.size() == 1 && sop[0].literals() <= 1) return text;
  if (sop.empty()) return text;
  return "(" + text + ")";
}

}  // namespace

std::uint64_t point_of_minterm(std::size_t h, std::uint64_t k) {
  std::uint64_t point = 0;
  for (std::size_t j = 0; j < h; ++j)
    if (!((k >> (h - 1 - j)) & 1u)) point |= std::uint64_t{1} << j;
  return point;
}

std::uint64_t minterm_of_point(std::size_t h, std::uint64_t point) {
  // The map is an involution.
  return point_of_minterm(h, point);
}

LiftedFunction lift(const SynthesizedSolution& sol, const BitMap& map) {
  LiftedFunction out;
  for (const auto& entry : map.entries) {
    if (entry.kind != StmtKind::Input) continue;
    LiftedInput in;
    in.name = entry.name;
    for (Var v : entry.bits) {
      const SynthesizedFunction* f = sol.find(v);
      if (!f) throw Error(ErrorKind::PreconditionViolation, "no function for bit " + map.bit_name(v));
      LiftedBit bit;
      bit.var = v;
      bit.support = f->fn.support;
      const std::size_t h = bit.support.size();
      bit.sop = minimize(h, on_points(f->fn));
      const auto raw = f->fn.truth_table();
      for (std::uint64_t k = 0; k < raw.size(); ++k)
        if (evaluate(bit.sop, point_of_minterm(h, k)) != raw[k])
          throw Error(ErrorKind::Internal, "minimized form of " + map.bit_name(v) + " differs from the raw function");
      std::vector<std::string> names;
      for (Var s : bit.support) names.push_back(map.bit_name(s));
      bit.text = render_sop(bit.sop, names);
      in.bits.push_back(std::move(bit));
    }
    in.rendered = in.name + " =";
    for (auto it = in.bits.rbegin(); it != in.bits.rend(); ++it)
      in.rendered += " " + bracket(it->text, it->sop);
    out.inputs.push_back(std::move(in));
  }
  return out;
}

SynthesizedSolution relax_dont_cares(const Problem& p, const SynthesizedSolution& s) {
  SynthesizedSolution cur = s;
  cur.achieved_count.reset();
  const Count target = check_solution(p, cur);
  Count best = target;
  for (std::size_t i = 0; i < cur.functions.size(); ++i) {
    const BooleanFunction original = cur.functions[i].fn;
    const std::size_t h = original.support.size();
    std::vector<bool> table = original.truth_table();
    std::vector<std::uint64_t> on, dc;
    for (std::uint64_t k = 0; k < table.size(); ++k) {
      SynthesizedSolution probe = cur;
      std::vector<bool> flipped = table;
      flipped[k] = !flipped[k];
      probe.functions[i].fn = BooleanFunction::from_truth_table(original.support, flipped);
      if (check_solution(p, probe) >= target) dc.push_back(point_of_minterm(h, k));
      else if (table[k]) on.push_back(point_of_minterm(h, k));
    }
    cur.functions[i].fn = from_sop(original.support, minimize(h, on, dc));
    const Count score = check_solution(p, cur);
    if (score >= target) best = score;
    else cur.functions[i].fn = original;
  }
  cur.achieved_count = best;
  return cur;
}

std::string render(const LiftedFunction& f) {
  std::string out;
  for (const auto& in : f.inputs) out += in.rendered + "\n";
  return out;
}

}  // namespace dqmax::bv
