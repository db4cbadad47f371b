#pragma once

#include <cstdint>

#include "schedcon/model.hpp"

namespace schedcon {

/// Divisible work W on a fleet under an instantaneous power cap P.
struct PowerProblem {
    Fleet fleet;
    Rational total_work;
    Rational power_cap;

    /// Z = floor(P - Gamma): marginal power available above the all-idle draw.
    std::int64_t margin() const;
};

/// Chooses the working set with the FPTAS speed knapsack and runs it for W / (total speed).
/// Guarantee: makespan <= OPT / (1 - eps).
SolveOutcome min_makespan_under_power(const PowerProblem& problem, const Rational& epsilon);

enum class GreedyMode {
    Corrected,      // add a machine when its marginal energy per unit work does not exceed the current set's
    PaperVerbatim,  // add a machine when the current set's energy per unit work does not exceed its own
};

/// Ratio-ordered greedy working-set selection for energy under a power cap (factor 2 target).
SolveOutcome min_energy_under_power(const PowerProblem& problem, GreedyMode mode = GreedyMode::Corrected);

/// Energy of running exactly `working_set` (all finishing together) on W units of divisible work:
/// (Gamma + sum d) * W / (sum v).
Rational set_energy(const Fleet& fleet, std::span<const MachineId> working_set, const Rational& total_work);

/// Schedule where every machine in the set runs W / (sum v) seconds.
Schedule proportional_schedule(const Fleet& fleet, std::span<const MachineId> working_set,
                               const Rational& total_work);

}  // namespace schedcon
