#pragma once

#include "schedcon/model.hpp"

namespace schedcon {

/// Minimize energy subject to makespan <= makespan_budget.
struct MakespanBudgetProblem {
    Fleet fleet;
    JobSpec jobs = JobSpec::divisible(Rational(1));
    Rational makespan_budget;
};

/// Fill order for the divisible case: efficiency non-increasing, then faster first, then lower id.
std::vector<MachineId> divisible_fill_order(const Fleet& fleet);

/// Divisible jobs: saturate machines in fill order for the whole budget; the last one takes the remainder.
SolveOutcome min_energy_divisible(const MakespanBudgetProblem& problem);

/// Non-divisible jobs: largest job first, each onto the first machine in efficiency order that can
/// still finish it within the budget.
SolveOutcome min_energy_nondivisible(const MakespanBudgetProblem& problem);

/// 1 + eta_max / eta_min over the whole fleet.
Rational efficiency_spread_bound(const Fleet& fleet);
/// 1 + eta_max / (2 * eta_min) over the whole fleet.
Rational efficiency_spread_bound_tight(const Fleet& fleet);

}  // namespace schedcon
