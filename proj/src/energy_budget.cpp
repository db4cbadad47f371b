#include "schedcon/energy_budget.hpp"

#include <algorithm>
#include <optional>

#include "schedcon/kernels.hpp"

namespace schedcon {

namespace {

struct Prefix {
    std::vector<MachineId> order;
    std::vector<std::int64_t> sum_v;  // sum_v[k]: total speed of the first k machines
    std::vector<std::int64_t> sum_d;
};

Prefix efficiency_prefix(const Fleet& fleet) {
    Prefix p;
    p.order = fleet.by_efficiency();
    p.sum_v.assign(fleet.size() + 1, 0);
    p.sum_d.assign(fleet.size() + 1, 0);
    for (std::size_t k = 0; k < p.order.size(); ++k) {
        p.sum_v[k + 1] = p.sum_v[k] + fleet[p.order[k]].speed;
        p.sum_d[k + 1] = p.sum_d[k] + fleet[p.order[k]].marginal_power();
    }
    return p;
}

}  // namespace

Rational max_work_within_budget(const Fleet& fleet, const Rational& energy_budget) {
    const Prefix p = efficiency_prefix(fleet);
    Rational best(0);
    for (std::size_t k = 1; k <= fleet.size(); ++k) {
        const std::int64_t draw = fleet.gamma_total() + p.sum_d[k];
        if (draw == 0) {
            continue;
        }
        best = std::max(best, Rational(p.sum_v[k]) * energy_budget / draw);
    }
    return best;
}

SolveOutcome min_makespan_divisible(const EnergyBudgetProblem& problem) {
    const Fleet& fleet = problem.fleet;
    if (!problem.jobs.is_divisible()) {
        throw ModelError("min_makespan_divisible: divisible jobs required");
    }
    const Rational w = problem.jobs.total_work();
    const Rational& e = problem.energy_budget;
    const Rational gamma(fleet.gamma_total());
    const Prefix p = efficiency_prefix(fleet);
    const std::size_t m = fleet.size();

    struct Candidate {
        Rational t;
        std::size_t k = 0;             // time-capped machines
        std::optional<Rational> tail;  // busy time of machine k+1
    };
    std::optional<Candidate> best;
    std::size_t tried = 0;
    auto offer = [&](Candidate c) {
        if (!best || c.t < best->t) {
            best = std::move(c);
        }
    };

    for (std::size_t k = 1; k <= m; ++k) {
        // Prefix carries everything; energy must have slack.
        ++tried;
        const Rational t = w / p.sum_v[k];
        if ((gamma + p.sum_d[k]) * t <= e) {
            offer({t, k, std::nullopt});
        }
        if (k == m) {
            break;
        }
        // Prefix saturated in time, next machine saturated in energy:
        //   sum_v * T + eta * (E - (Gamma + sum_d) * T) = W
        const Machine& next = fleet[p.order[k]];
        if (next.marginal_power() <= 0) {
            continue;
        }
        ++tried;
        const Rational eta = next.efficiency();
        const Rational coef = Rational(p.sum_v[k]) - eta * (gamma + p.sum_d[k]);
        if (coef == 0) {
            continue;
        }
        const Rational tk = (w - eta * e) / coef;
        if (tk <= 0) {
            continue;
        }
        const Rational tail = (e - (gamma + p.sum_d[k]) * tk) / next.marginal_power();
        if (tail < 0 || tail > tk) {
            continue;
        }
        offer({tk, k, tail});
    }

    if (!best) {
        return infeasible_outcome(
            "energy-makespan-divisible", ObjectiveKind::Makespan,
            Certificate{"energy budget cannot complete the work at any makespan",
                        {{"max_work", to_string(max_work_within_budget(fleet, e))}, {"total_work", to_string(w)}}});
    }

    std::vector<Rational> times(m, Rational(0));
    for (std::size_t i = 0; i < best->k; ++i) {
        times[p.order[i]] = best->t;
    }
    if (best->tail) {
        times[p.order[best->k]] = *best->tail;
    }

    SolveOutcome out;
    out.problem = "energy-makespan-divisible";
    out.objective_kind = ObjectiveKind::Makespan;
    out.schedule = schedule_from_times(fleet, times);
    out.objective = makespan(out.schedule);
    out.guarantee.exact = true;
    out.guarantee.bound_ratio = Rational(1);
    out.diagnostics["capped_prefix"] = std::to_string(best->k);
    out.diagnostics["candidates"] = std::to_string(tried);
    out.diagnostics["energy_used"] = to_string(energy(out.schedule, fleet));
    return out;
}

SolveOutcome min_makespan_nondivisible(const EnergyBudgetProblem& problem, const Rational& epsilon) {
    const Fleet& fleet = problem.fleet;
    if (!problem.jobs.is_discrete()) {
        throw ModelError("min_makespan_nondivisible: discrete jobs required");
    }
    const auto weights = problem.jobs.weights();
    const Rational& budget = problem.energy_budget;
    const std::vector<MachineId> order = fleet.by_efficiency();
    std::vector<Machine> sorted;
    for (MachineId id : order) {
        sorted.push_back(fleet[id]);
    }

    std::size_t best_r = 0;
    Schedule base;
    Rational base_energy;
    Rational min_energy;
    for (std::size_t r = 1; r <= sorted.size(); ++r) {
        Schedule s = complete_schedule(kernels::lpt_assign(weights, std::span(sorted).first(r)), fleet);
        const Rational e = energy(s, fleet);
        if (r == 1 || e < min_energy) {
            min_energy = e;
        }
        if (e <= budget) {
            best_r = r;
            base = std::move(s);
            base_energy = e;
        }
    }
    if (best_r == 0) {
        return infeasible_outcome("energy-makespan-discrete", ObjectiveKind::Makespan,
                                  Certificate{"no efficiency-ordered prefix schedule fits the energy budget",
                                              {{"min_prefix_energy", to_string(min_energy)},
                                               {"energy_budget", to_string(budget)}}});
    }

    SolveOutcome out;
    out.problem = "energy-makespan-discrete";
    out.objective_kind = ObjectiveKind::Makespan;
    out.guarantee.epsilon = epsilon;
    out.guarantee.bound_ratio = Rational(19, 12) + epsilon;
    out.diagnostics["prefix"] = std::to_string(best_r);
    out.diagnostics["topped_up"] = "false";
    out.schedule = base;

    if (best_r < sorted.size()) {
        // Load the next machine with as much work as the leftover energy pays for.
        const Machine& next = sorted[best_r];
        const Rational capacity = (budget - base_energy) * next.efficiency();
        const auto pick = kernels::subset_sum_max_work(weights, capacity, epsilon);
        if (!pick.subset.empty()) {
            std::vector<std::int64_t> rest_w;
            std::vector<JobIndex> rest_ids;
            for (JobIndex j = 0, k = 0; j < weights.size(); ++j) {
                if (k < pick.subset.size() && pick.subset[k] == j) {
                    ++k;
                    continue;
                }
                rest_w.push_back(weights[j]);
                rest_ids.push_back(j);
            }
            Schedule combined = kernels::lpt_assign(rest_w, rest_ids, std::span(sorted).first(best_r));
            combined.assignments.push_back(Assignment{next.id, Rational(pick.total),
                                                      make_rational(pick.total, next.speed), pick.subset});
            combined = complete_schedule(std::move(combined), fleet);
            if (energy(combined, fleet) <= budget && makespan(combined) < makespan(base)) {
                out.schedule = std::move(combined);
                out.diagnostics["topped_up"] = "true";
            }
        }
        out.diagnostics["topup_capacity"] = to_string(capacity);
        out.diagnostics["topup_work"] = std::to_string(pick.total);
    }
    out.objective = makespan(out.schedule);
    out.diagnostics["energy_used"] = to_string(energy(out.schedule, fleet));
    return out;
}

}  // namespace schedcon
