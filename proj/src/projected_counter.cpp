#include "dqmax/projected_counter.hpp"

#include "dqmax/error.hpp"
#include "dqmax/sat_engine.hpp"

namespace dqmax {

Count count_projected(const CnfFormula& f, std::span<const Var> count_vars,
                      std::span<const Var>) {
  return enumerate_projected(f, count_vars);
}

Count check_solution(const Problem& p, const SynthesizedSolution& s) {
  const CnfFormula substituted = apply_substitution(p, s);
  const Count count = count_projected(substituted, p.count_vars, p.exist_vars);
  if (s.achieved_count && *s.achieved_count != count)
    throw Error(ErrorKind::VerificationMismatch,
                "claimed count " + s.achieved_count->str() + " but recount gives " +
                    count.str());
  return count;
}

}  // namespace dqmax
