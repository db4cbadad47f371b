#pragma once

// Reference solvers used to certify the approximation and exactness claims of the
// production solvers: exhaustive enumeration, grid sweeps, LP vertex enumeration,
// and a time-stepped energy integrator. None of them share code paths with the
// solvers they check beyond the model's makespan/energy evaluation.

#include <cstdint>
#include <optional>
#include <string>

#include "schedcon/energy_budget.hpp"
#include "schedcon/makespan_budget.hpp"
#include "schedcon/model.hpp"
#include "schedcon/power_solvers.hpp"

namespace schedcon::oracle {

class SearchSpaceTooLarge : public std::length_error {
public:
    using std::length_error::length_error;
};

enum class Method { SubsetEnum, AssignmentEnum, GridT, FractionalKnapsack, Breakpoint, StepSimulation };

std::string to_string(Method method);

struct OracleResult {
    bool feasible = false;
    Rational objective;
    Schedule witness;
    std::uint64_t search_space_size = 0;
    Method method = Method::SubsetEnum;
};

inline constexpr std::size_t kMaxSubsetMachines = 22;
inline constexpr std::uint64_t kMaxAssignments = 10'000'000;

/// All subsets with Gamma + sum d <= P; minimizes W / sum v (makespan) or (Gamma + sum d) W / sum v (energy).
OracleResult exact_power_subset(const PowerProblem& problem, ObjectiveKind objective);

/// Size of the job -> machine search space, saturating at UINT64_MAX.
std::uint64_t assignment_space(std::size_t machines, std::size_t jobs);

/// All m^n job -> machine maps. EnergyBudget: minimize makespan among maps within budget.
/// MakespanBudget: minimize energy among maps within the makespan limit. Ties keep the first
/// map in lexicographic order (job 0 most significant).
OracleResult exact_assignment_enum(const Fleet& fleet, std::span<const std::int64_t> weights,
                                   const Constraint& constraint);

/// Fewest machines that can host all jobs within the makespan limit; nullopt if none can.
std::optional<std::size_t> min_machine_count(const Fleet& fleet, std::span<const std::int64_t> weights,
                                             const Rational& makespan_budget);

struct GridResult {
    OracleResult result;
    Rational step;       // grid spacing
    Rational peak_work;  // max over the grid of the work that fits in the budget
};

/// Sweeps T over [W / sum v, max(W / min v, E / (Gamma + d_first)) * 1.01] in `resolution` steps; at each T the most work that
/// fits is a fractional knapsack (efficiency order, per-machine time cap T, energy cap E - Gamma T).
GridResult grid_min_T_divisible(const EnergyBudgetProblem& problem, std::int64_t resolution = 10'000);

/// Max-work curve evaluated at its breakpoints (where a prefix exactly exhausts the budget); the
/// minimal makespan is the first upward crossing of W, found by linear interpolation. Exact.
std::optional<Rational> breakpoint_min_T_divisible(const EnergyBudgetProblem& problem);

/// Minimum of sum d t over the vertices of {sum v t = W, 0 <= t <= T_budget}; among ties the vertex
/// with the smallest system energy. Energy is reported with the realized makespan.
OracleResult fixed_T_min_energy_divisible(const MakespanBudgetProblem& problem);

/// Also searches shorter realized makespans T' <= T_budget at the breakpoints of the fixed-T value.
OracleResult continuous_min_energy_divisible(const MakespanBudgetProblem& problem);

/// Integrates power over `steps` equal slices of [0, makespan]: a machine draws working power in a
/// slice that starts before its busy time ends, idle power otherwise.
Rational step_simulation_energy(const Schedule& schedule, const Fleet& fleet, std::int64_t steps);

}  // namespace schedcon::oracle
