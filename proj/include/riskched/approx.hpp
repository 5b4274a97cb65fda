#pragma once

#include <cstdint>
#include <functional>

#include "riskched/exact.hpp"

namespace riskched {

/// A Min-Exp solver; its certificate guarantee is taken as sigma.
using ExpSolver = std::function<SolveResult(const Instance&)>;

/// Runs `solver` and certifies CVaR_alpha within
/// sigma * min{1/Pr_min, 1/(1-alpha)}.
SolveResult lift_expectation_cvar(const Instance& inst, const Rational& alpha, const ExpSolver& solver);

/// CVaR_alpha for sumWC via the completion-time relaxation: jobs are listed
/// by LP completion time, giving ratio 2 against the LP bound. Instances
/// with uncertain processing times and deterministic weights are inverted
/// first; lp_completion then refers to the inverted instance.
SolveResult lp_round_cvar_sumwc(const Instance& inst, const Rational& alpha);

/// VaR_alpha for sumWC: one relaxation per scenario subset of total
/// probability at most 1-alpha that may be ignored, best bound rounded.
SolveResult lp_round_var_sumwc(const Instance& inst, const Rational& alpha, std::uint64_t cap = 1u << 16);

/// Minmax unit-time sumWU/sumWT via the scenario-averaged assignment;
/// ratio K.
SolveResult minmax_assignment_k_approx(const Instance& inst);

/// True when lp_round_* solve the inverted instance for `inst`.
bool needs_inversion(const Instance& inst);

}  // namespace riskched
