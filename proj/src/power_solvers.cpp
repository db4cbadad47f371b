#include "schedcon/power_solvers.hpp"

#include <algorithm>
#include <numeric>

#include "schedcon/kernels.hpp"

namespace schedcon {

std::int64_t PowerProblem::margin() const {
    return floor_to_int64(power_cap - fleet.gamma_total());
}

Rational set_energy(const Fleet& fleet, std::span<const MachineId> working_set, const Rational& total_work) {
    std::int64_t sum_d = 0;
    std::int64_t sum_v = 0;
    for (MachineId id : working_set) {
        sum_d += fleet[id].marginal_power();
        sum_v += fleet[id].speed;
    }
    if (sum_v == 0) {
        throw ModelError("set_energy: empty working set");
    }
    return Rational(fleet.gamma_total() + sum_d) * total_work / sum_v;
}

Schedule proportional_schedule(const Fleet& fleet, std::span<const MachineId> working_set,
                               const Rational& total_work) {
    std::int64_t sum_v = 0;
    for (MachineId id : working_set) {
        sum_v += fleet[id].speed;
    }
    Schedule s = idle_schedule(fleet);
    if (sum_v == 0) {
        return s;
    }
    const Rational t = total_work / sum_v;
    for (MachineId id : working_set) {
        s.assignments[id].time = t;
        s.assignments[id].work = t * fleet[id].speed;
    }
    return s;
}

SolveOutcome min_makespan_under_power(const PowerProblem& problem, const Rational& epsilon) {
    const Fleet& fleet = problem.fleet;
    std::vector<kernels::SpeedPower> items;
    items.reserve(fleet.size());
    for (const Machine& c : fleet.machines()) {
        items.push_back({c.speed, c.marginal_power()});
    }
    const std::int64_t z = problem.margin();
    const auto pick = kernels::fptas_max_speed(items, std::max<std::int64_t>(z, 0), epsilon);
    if (pick.subset.empty()) {
        return infeasible_outcome("power-makespan", ObjectiveKind::Makespan,
                                  Certificate{"no machine fits within the power margin",
                                              {{"margin", std::to_string(z)},
                                               {"min_marginal_power", std::to_string(fleet.min_marginal_power())}}});
    }
    std::vector<MachineId> ws(pick.subset.begin(), pick.subset.end());

    SolveOutcome out;
    out.problem = "power-makespan";
    out.objective_kind = ObjectiveKind::Makespan;
    out.schedule = proportional_schedule(fleet, ws, problem.total_work);
    out.objective = makespan(out.schedule);
    out.guarantee.epsilon = epsilon;
    out.guarantee.bound_ratio = 1 / (1 - epsilon);
    out.guarantee.exact = false;
    out.diagnostics["achieved_speed"] = std::to_string(pick.achieved_speed);
    out.diagnostics["rounded_table_size"] = std::to_string(pick.rounded_table_size);
    out.diagnostics["scale"] = to_string(pick.rounding.scale);
    out.diagnostics["margin"] = std::to_string(z);
    return out;
}

namespace {

// a/b > c/d for positive denominators
bool ratio_greater(__int128 a, __int128 b, __int128 c, __int128 d) {
    return a * d > c * b;
}

}  // namespace

SolveOutcome min_energy_under_power(const PowerProblem& problem, GreedyMode mode) {
    const Fleet& fleet = problem.fleet;
    const std::int64_t z = problem.margin();
    const std::int64_t gamma = fleet.gamma_total();

    std::vector<MachineId> eligible;
    for (const Machine& c : fleet.machines()) {
        if (c.marginal_power() <= z) {
            eligible.push_back(c.id);
        }
    }
    if (eligible.empty()) {
        return infeasible_outcome("power-energy", ObjectiveKind::Energy,
                                  Certificate{"no machine fits within the power margin",
                                              {{"margin", std::to_string(z)},
                                               {"min_marginal_power", std::to_string(fleet.min_marginal_power())}}});
    }

    // First pick maximizes v / ((d + Gamma) * d) among machines that fit alone.
    MachineId first = eligible.front();
    for (MachineId id : eligible) {
        const Machine& c = fleet[id];
        const Machine& f = fleet[first];
        if (ratio_greater(c.speed, static_cast<__int128>(c.marginal_power() + gamma) * c.marginal_power(), f.speed,
                          static_cast<__int128>(f.marginal_power() + gamma) * f.marginal_power())) {
            first = id;
        }
    }

    // Remaining machines by v / d^2, non-increasing.
    std::vector<MachineId> rest;
    for (const Machine& c : fleet.machines()) {
        if (c.id != first) {
            rest.push_back(c.id);
        }
    }
    std::stable_sort(rest.begin(), rest.end(), [&](MachineId a, MachineId b) {
        const Machine& x = fleet[a];
        const Machine& y = fleet[b];
        return ratio_greater(x.speed, static_cast<__int128>(x.marginal_power()) * x.marginal_power(), y.speed,
                             static_cast<__int128>(y.marginal_power()) * y.marginal_power());
    });

    std::vector<MachineId> set{first};
    std::int64_t sum_d = fleet[first].marginal_power();
    std::int64_t sum_v = fleet[first].speed;
    Rational sum_eff = fleet[first].efficiency();
    std::size_t replacements = 0;

    for (MachineId id : rest) {
        if (Rational(gamma + sum_d) >= problem.power_cap) {
            break;
        }
        const Machine& c = fleet[id];
        const std::int64_t d = c.marginal_power();
        const std::int64_t left = z - sum_d;
        // e = d / v against ce = (Gamma + sum d) / sum v
        const __int128 lhs = static_cast<__int128>(d) * sum_v;
        const __int128 rhs = static_cast<__int128>(gamma + sum_d) * c.speed;
        const bool improves = mode == GreedyMode::Corrected ? lhs <= rhs : rhs <= lhs;
        if (d <= left && improves) {
            set.push_back(id);
            sum_d += d;
            sum_v += c.speed;
            sum_eff += c.efficiency();
        } else if (d > left && d <= z && c.efficiency() > sum_eff) {
            set.assign(1, id);
            sum_d = d;
            sum_v = c.speed;
            sum_eff = c.efficiency();
            ++replacements;
        }
    }

    std::size_t closure_adds = 0;
    if (mode == GreedyMode::Corrected) {
        // Close the set: after a replacement, earlier machines may fit and strictly help.
        bool changed = true;
        while (changed) {
            changed = false;
            for (MachineId id : rest) {
                if (std::find(set.begin(), set.end(), id) != set.end()) {
                    continue;
                }
                const Machine& c = fleet[id];
                const std::int64_t d = c.marginal_power();
                if (d <= z - sum_d &&
                    static_cast<__int128>(d) * sum_v < static_cast<__int128>(gamma + sum_d) * c.speed) {
                    set.push_back(id);
                    sum_d += d;
                    sum_v += c.speed;
                    ++closure_adds;
                    changed = true;
                }
            }
        }
    }
    std::sort(set.begin(), set.end());

    SolveOutcome out;
    out.problem = "power-energy";
    out.objective_kind = ObjectiveKind::Energy;
    out.schedule = proportional_schedule(fleet, set, problem.total_work);
    out.objective = energy(out.schedule, fleet);
    out.guarantee.exact = eligible.size() == 1;
    out.guarantee.bound_ratio = out.guarantee.exact ? Rational(1) : Rational(2);
    out.diagnostics["first_pick"] = std::to_string(first);
    out.diagnostics["mode"] = mode == GreedyMode::Corrected ? "corrected" : "paper-verbatim";
    out.diagnostics["replacements"] = std::to_string(replacements);
    out.diagnostics["closure_adds"] = std::to_string(closure_adds);
    out.diagnostics["margin"] = std::to_string(z);
    return out;
}

}  // namespace schedcon
