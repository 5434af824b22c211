#pragma once

// Exact Y-projected model counting by projected AllSAT. This is the
// verification path: it shares nothing with the oracle's search beyond the
// SAT engine.

#include <span>

#include "dqmax/formula.hpp"

namespace dqmax {

// Number of count_vars assignments extendable to a model of f. Variables
// outside count_vars are existential; exist_vars is accepted for symmetry
// with the problem roles.
Count count_projected(const CnfFormula& f, std::span<const Var> count_vars,
                      std::span<const Var> exist_vars = {});

// Count of Phi[sigma] projected on Y. Throws DependencyViolation when s
// leaves the dependency sets, VerificationMismatch when s.achieved_count is
// set and differs from the recount.
Count check_solution(const Problem& p, const SynthesizedSolution& s);

}  // namespace dqmax
