#include <optional>

#include "dqmax/error.hpp"
#include "dqmax/maxcount_oracle.hpp"
#include "dqmax/projected_counter.hpp"

namespace dqmax {

SynthesizedSolution brute_force_dqmaxsat(const Problem& p) {
  std::size_t selectors = 0;
  for (const auto& h : p.deps) {
    if (h.size() > 5)
      throw Error(ErrorKind::InstanceTooLarge, "dependency set too large to enumerate");
    selectors += std::size_t{1} << h.size();
  }
  if (selectors > 20)
    throw Error(ErrorKind::InstanceTooLarge,
                "brute force needs sum of 2^|H_i| <= 20, got " + std::to_string(selectors));

  std::optional<SynthesizedSolution> best;
  Count best_count = -1;
  const std::uint64_t space = std::uint64_t{1} << selectors;
  for (std::uint64_t code = 0; code < space; ++code) {
    SynthesizedSolution s;
    std::size_t offset = 0;
    for (std::size_t i = 0; i < p.max_vars.size(); ++i) {
      const std::size_t width = std::size_t{1} << p.deps[i].size();
      std::vector<std::uint64_t> chosen;
      for (std::size_t m = 0; m < width; ++m)
        if ((code >> (selectors - 1 - (offset + m))) & 1u) chosen.push_back(m);
      s.functions.push_back({p.max_vars[i], BooleanFunction::from_indices(p.deps[i], chosen)});
      offset += width;
    }
    const Count count = check_solution(p, s);
    if (count > best_count) {
      best_count = count;
      best = std::move(s);
    }
  }
  best->achieved_count = best_count;
  best->total = pow2(p.count_vars.size());
  return *best;
}

}  // namespace dqmax
