#pragma once

#include <vector>

#include "schedcon/model.hpp"

namespace schedcon {

/// Minimize makespan subject to total energy <= energy_budget.
struct EnergyBudgetProblem {
    Fleet fleet;
    JobSpec jobs = JobSpec::divisible(Rational(1));
    Rational energy_budget;
};

/// Largest divisible work any schedule can finish within the budget (over all makespans),
/// attained where exactly a prefix of the efficiency order runs the whole makespan.
Rational max_work_within_budget(const Fleet& fleet, const Rational& energy_budget);

/// Exact for divisible jobs. Machines in efficiency order; for each prefix length k either the prefix
/// alone carries W with energy to spare, or the prefix runs the full makespan and machine k+1 absorbs
/// the leftover energy. The smallest makespan whose witness respects every cap wins.
SolveOutcome min_makespan_divisible(const EnergyBudgetProblem& problem);

/// Non-divisible jobs: LPT over every efficiency-ordered prefix, keep the largest prefix within budget,
/// then top up the next machine with a subset-sum selection of jobs that fits the leftover energy.
SolveOutcome min_makespan_nondivisible(const EnergyBudgetProblem& problem, const Rational& epsilon);

}  // namespace schedcon
