#include "schedcon/makespan_budget.hpp"

#include <algorithm>
#include <numeric>

namespace schedcon {

std::vector<MachineId> divisible_fill_order(const Fleet& fleet) {
    std::vector<MachineId> order = fleet.by_efficiency();
    // by_efficiency is stable on id; among equal efficiency prefer the faster machine so a lone
    // machine finishes as early as possible.
    std::stable_sort(order.begin(), order.end(), [&](MachineId a, MachineId b) {
        const Machine& x = fleet[a];
        const Machine& y = fleet[b];
        const __int128 lhs = static_cast<__int128>(x.speed) * y.marginal_power();
        const __int128 rhs = static_cast<__int128>(y.speed) * x.marginal_power();
        if (lhs != rhs) {
            return lhs > rhs;
        }
        return x.speed > y.speed;
    });
    return order;
}

SolveOutcome min_energy_divisible(const MakespanBudgetProblem& problem) {
    const Fleet& fleet = problem.fleet;
    if (!problem.jobs.is_divisible()) {
        throw ModelError("min_energy_divisible: divisible jobs required");
    }
    const Rational w = problem.jobs.total_work();
    const Rational& limit = problem.makespan_budget;
    const Rational capacity = limit * fleet.total_speed();
    if (capacity < w) {
        return infeasible_outcome("makespan-energy-divisible", ObjectiveKind::Energy,
                                  Certificate{"all machines together cannot finish the work within the makespan budget",
                                              {{"capacity", to_string(capacity)}, {"total_work", to_string(w)}}});
    }

    std::vector<Rational> times(fleet.size(), Rational(0));
    Rational remaining = w;
    std::size_t used = 0;
    for (MachineId id : divisible_fill_order(fleet)) {
        if (remaining <= 0) {
            break;
        }
        const Rational full = limit * fleet[id].speed;
        if (remaining >= full) {
            times[id] = limit;
            remaining -= full;
        } else {
            times[id] = remaining / fleet[id].speed;
            remaining = 0;
        }
        ++used;
    }

    SolveOutcome out;
    out.problem = "makespan-energy-divisible";
    out.objective_kind = ObjectiveKind::Energy;
    out.schedule = schedule_from_times(fleet, times);
    out.objective = energy(out.schedule, fleet);
    out.guarantee.exact = true;
    out.guarantee.bound_ratio = Rational(1);
    out.diagnostics["machines_used"] = std::to_string(used);
    out.diagnostics["makespan"] = to_string(makespan(out.schedule));
    return out;
}

SolveOutcome min_energy_nondivisible(const MakespanBudgetProblem& problem) {
    const Fleet& fleet = problem.fleet;
    if (!problem.jobs.is_discrete()) {
        throw ModelError("min_energy_nondivisible: discrete jobs required");
    }
    const auto weights = problem.jobs.weights();
    const Rational& limit = problem.makespan_budget;
    const std::vector<MachineId> machines = fleet.by_efficiency();

    std::vector<std::size_t> jobs(weights.size());
    std::iota(jobs.begin(), jobs.end(), std::size_t{0});
    std::stable_sort(jobs.begin(), jobs.end(), [&](std::size_t a, std::size_t b) { return weights[a] > weights[b]; });

    std::vector<std::int64_t> load(fleet.size(), 0);
    std::vector<MachineId> placement(weights.size(), 0);
    for (std::size_t j : jobs) {
        bool placed = false;
        for (MachineId id : machines) {
            // (load + w) / v <= T
            if (Rational(load[id] + weights[j]) <= limit * fleet[id].speed) {
                load[id] += weights[j];
                placement[j] = id;
                placed = true;
                break;
            }
        }
        if (!placed) {
            return infeasible_outcome(
                "makespan-energy-discrete", ObjectiveKind::Energy,
                Certificate{"job " + std::to_string(j) + " fits no machine within the makespan budget",
                            {{"job", std::to_string(j)},
                             {"weight", std::to_string(weights[j])},
                             {"makespan_budget", to_string(limit)}}});
        }
    }

    SolveOutcome out;
    out.problem = "makespan-energy-discrete";
    out.objective_kind = ObjectiveKind::Energy;
    out.schedule = schedule_from_placement(fleet, weights, placement);
    out.objective = energy(out.schedule, fleet);
    out.guarantee.bound_ratio = efficiency_spread_bound(fleet);
    out.guarantee.exact = fleet.size() == 1;
    if (out.guarantee.exact) {
        out.guarantee.bound_ratio = Rational(1);
    }
    out.diagnostics["working_set_size"] = std::to_string(out.schedule.working_set().size());
    out.diagnostics["tight_bound"] = to_string(efficiency_spread_bound_tight(fleet));
    out.diagnostics["makespan"] = to_string(makespan(out.schedule));
    return out;
}

namespace {

std::pair<Rational, Rational> efficiency_range(const Fleet& fleet) {
    if (fleet.empty()) {
        throw ModelError("efficiency range of an empty fleet");
    }
    Rational lo = fleet[0].efficiency();
    Rational hi = lo;
    for (const Machine& c : fleet.machines()) {
        const Rational eta = c.efficiency();
        lo = std::min(lo, eta);
        hi = std::max(hi, eta);
    }
    return {lo, hi};
}

}  // namespace

Rational efficiency_spread_bound(const Fleet& fleet) {
    const auto [lo, hi] = efficiency_range(fleet);
    return 1 + hi / lo;
}

Rational efficiency_spread_bound_tight(const Fleet& fleet) {
    const auto [lo, hi] = efficiency_range(fleet);
    return 1 + hi / (2 * lo);
}

}  // namespace schedcon
