#include "schedcon/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace schedcon::oracle {

std::string to_string(Method method) {
    switch (method) {
        case Method::SubsetEnum:
            return "subset-enum";
        case Method::AssignmentEnum:
            return "assignment-enum";
        case Method::GridT:
            return "grid-T";
        case Method::FractionalKnapsack:
            return "fractional-knapsack";
        case Method::Breakpoint:
            return "breakpoint";
        case Method::StepSimulation:
            return "step-simulation";
    }
    return "unknown";
}

OracleResult exact_power_subset(const PowerProblem& problem, ObjectiveKind objective) {
    const Fleet& fleet = problem.fleet;
    const std::size_t m = fleet.size();
    if (m > kMaxSubsetMachines) {
        throw SearchSpaceTooLarge("subset enumeration refused: " + std::to_string(m) + " machines > " +
                                  std::to_string(kMaxSubsetMachines));
    }
    const Rational cap = problem.power_cap;
    const std::int64_t gamma = fleet.gamma_total();

    OracleResult out;
    out.method = Method::SubsetEnum;
    out.search_space_size = std::uint64_t{1} << m;
    std::uint64_t best_mask = 0;
    Rational best;
    for (std::uint64_t mask = 1; mask < out.search_space_size; ++mask) {
        std::int64_t d = 0;
        std::int64_t v = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if ((mask >> i) & 1U) {
                d += fleet[i].marginal_power();
                v += fleet[i].speed;
            }
        }
        if (Rational(gamma + d) > cap) {
            continue;
        }
        const Rational value = objective == ObjectiveKind::Makespan ? problem.total_work / v
                                                                    : Rational(gamma + d) * problem.total_work / v;
        if (!out.feasible || value < best) {
            out.feasible = true;
            best = value;
            best_mask = mask;
        }
    }
    if (!out.feasible) {
        return out;
    }
    std::vector<MachineId> ws;
    for (std::size_t i = 0; i < m; ++i) {
        if ((best_mask >> i) & 1U) {
            ws.push_back(i);
        }
    }
    out.objective = best;
    out.witness = proportional_schedule(fleet, ws, problem.total_work);
    return out;
}

std::uint64_t assignment_space(std::size_t machines, std::size_t jobs) {
    std::uint64_t size = 1;
    for (std::size_t j = 0; j < jobs; ++j) {
        if (size > std::numeric_limits<std::uint64_t>::max() / std::max<std::size_t>(machines, 1)) {
            return std::numeric_limits<std::uint64_t>::max();
        }
        size *= machines;
    }
    return size;
}

namespace {

using Wide = __int128;

Wide saturating_floor(const Rational& x) {
    const Integer f = schedcon::floor(x);
    static const Integer limit = Integer(1) << 120;
    if (f >= limit) {
        return Wide{1} << 120;
    }
    if (f <= -limit) {
        return -(Wide{1} << 120);
    }
    const bool neg = f < 0;
    const Integer a = neg ? Integer(-f) : f;
    const Integer mask = (Integer(1) << 64) - 1;
    const auto lo = static_cast<std::uint64_t>(Integer(a & mask).convert_to<std::uint64_t>());
    const auto hi = static_cast<std::uint64_t>(Integer(a >> 64).convert_to<std::uint64_t>());
    const Wide v = (static_cast<Wide>(hi) << 64) | static_cast<Wide>(lo);
    return neg ? -v : v;
}

Rational from_wide(Wide num, Wide den) {
    auto to_integer = [](Wide v) {
        const bool neg = v < 0;
        unsigned __int128 a = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
        Integer r = Integer(static_cast<std::uint64_t>(a >> 64));
        r <<= 64;
        r += Integer(static_cast<std::uint64_t>(a));
        return neg ? Integer(-r) : r;
    };
    return Rational(to_integer(num), to_integer(den));
}

// Integer-scaled view of a discrete instance: with L = lcm of speeds, machine i's busy time
// times L is load_i * (L / v_i), and energy times L is exact in 128-bit integers.
struct Scaled {
    Wide lcm = 1;
    std::vector<Wide> per_unit;  // L / v_i
    std::vector<Wide> marginal;
    Wide gamma = 0;
};

Scaled scale_fleet(const Fleet& fleet) {
    Scaled s;
    for (const Machine& c : fleet.machines()) {
        s.lcm = std::lcm(s.lcm, static_cast<Wide>(c.speed));
    }
    for (const Machine& c : fleet.machines()) {
        s.per_unit.push_back(s.lcm / c.speed);
        s.marginal.push_back(c.marginal_power());
    }
    s.gamma = fleet.gamma_total();
    return s;
}

// Visits every job -> machine map in lexicographic order (job 0 most significant),
// maintaining per-machine loads incrementally.
template <typename Visit>
void for_each_assignment(std::size_t m, std::span<const std::int64_t> weights, Visit&& visit) {
    const std::size_t n = weights.size();
    std::vector<std::size_t> pick(n, 0);
    std::vector<std::int64_t> load(m, 0);
    for (std::size_t j = 0; j < n; ++j) {
        load[0] += weights[j];
    }
    while (true) {
        visit(pick, load);
        std::size_t j = n;
        while (j > 0) {
            --j;
            load[pick[j]] -= weights[j];
            if (pick[j] + 1 < m) {
                ++pick[j];
                load[pick[j]] += weights[j];
                break;
            }
            pick[j] = 0;
            load[0] += weights[j];
            if (j == 0) {
                return;
            }
        }
        if (n == 0) {
            return;
        }
    }
}

}  // namespace

OracleResult exact_assignment_enum(const Fleet& fleet, std::span<const std::int64_t> weights,
                                   const Constraint& constraint) {
    const std::size_t m = fleet.size();
    const std::uint64_t space = assignment_space(m, weights.size());
    if (space > kMaxAssignments) {
        throw SearchSpaceTooLarge("assignment enumeration refused: " + std::to_string(m) + "^" +
                                  std::to_string(weights.size()) + " maps exceed " + std::to_string(kMaxAssignments));
    }
    if (constraint.kind == ConstraintKind::PowerCap) {
        throw ModelError("assignment enumeration supports energy and makespan budgets only");
    }
    const Scaled sc = scale_fleet(fleet);
    const Wide limit = saturating_floor(constraint.value * from_wide(sc.lcm, 1));
    const bool energy_budget = constraint.kind == ConstraintKind::EnergyBudget;

    OracleResult out;
    out.method = Method::AssignmentEnum;
    out.search_space_size = space;
    Wide best = 0;
    std::vector<std::size_t> best_pick;
    for_each_assignment(m, weights, [&](const std::vector<std::size_t>& pick, const std::vector<std::int64_t>& load) {
        Wide t_max = 0;
        Wide work_energy = 0;
        for (std::size_t i = 0; i < m; ++i) {
            const Wide t = load[i] * sc.per_unit[i];
            t_max = std::max(t_max, t);
            work_energy += sc.marginal[i] * t;
        }
        const Wide e = work_energy + sc.gamma * t_max;
        const Wide constrained = energy_budget ? e : t_max;
        const Wide objective = energy_budget ? t_max : e;
        if (constrained > limit) {
            return;
        }
        if (!out.feasible || objective < best) {
            out.feasible = true;
            best = objective;
            best_pick = pick;
        }
    });
    if (!out.feasible) {
        return out;
    }
    std::vector<MachineId> placement(best_pick.begin(), best_pick.end());
    out.witness = schedule_from_placement(fleet, weights, placement);
    out.objective = from_wide(best, sc.lcm);
    return out;
}

std::optional<std::size_t> min_machine_count(const Fleet& fleet, std::span<const std::int64_t> weights,
                                             const Rational& makespan_budget) {
    const std::size_t m = fleet.size();
    if (assignment_space(m, weights.size()) > kMaxAssignments) {
        throw SearchSpaceTooLarge("machine-count enumeration refused");
    }
    const Scaled sc = scale_fleet(fleet);
    const Wide limit = saturating_floor(makespan_budget * from_wide(sc.lcm, 1));
    std::optional<std::size_t> best;
    for_each_assignment(m, weights, [&](const std::vector<std::size_t>&, const std::vector<std::int64_t>& load) {
        std::size_t used = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (load[i] * sc.per_unit[i] > limit) {
                return;
            }
            used += load[i] > 0 ? 1 : 0;
        }
        if (!best || used < *best) {
            best = used;
        }
    });
    return best;
}

namespace {

// Most work that fits at makespan T: fill machines in efficiency order, each for at most T,
// spending at most E - Gamma T of marginal energy.
Rational max_work_at(const Fleet& fleet, std::span<const MachineId> order, const Rational& budget,
                     const Rational& t) {
    Rational left = budget - t * fleet.gamma_total();
    if (left < 0) {
        return Rational(0);
    }
    Rational work(0);
    for (MachineId id : order) {
        const Machine& c = fleet[id];
        const Rational full = t * c.marginal_power();
        if (left >= full) {
            work += t * c.speed;
            left -= full;
        } else {
            work += left * c.speed / c.marginal_power();
            break;
        }
    }
    return work;
}

// Fills W in efficiency order with per-machine cap T.
Schedule fill_in_order(const Fleet& fleet, std::span<const MachineId> order, const Rational& w, const Rational& t) {
    std::vector<Rational> times(fleet.size(), Rational(0));
    Rational remaining = w;
    for (MachineId id : order) {
        if (remaining <= 0) {
            break;
        }
        const Rational run = std::min(t, remaining / fleet[id].speed);
        times[id] = run;
        remaining -= run * fleet[id].speed;
    }
    return schedule_from_times(fleet, times);
}

}  // namespace

GridResult grid_min_T_divisible(const EnergyBudgetProblem& problem, std::int64_t resolution) {
    if (resolution < 1) {
        throw ModelError("grid resolution must be positive");
    }
    const Fleet& fleet = problem.fleet;
    const Rational w = problem.jobs.total_work();
    const std::vector<MachineId> order = fleet.by_efficiency();
    std::int64_t v_min = fleet[0].speed;
    for (const Machine& c : fleet.machines()) {
        v_min = std::min(v_min, c.speed);
    }
    const Rational lo = w / fleet.total_speed();
    // Past E / (Gamma + d_first) the reachable work only shrinks, so the sweep never needs to go further.
    const Machine& first = fleet[order.front()];
    const Rational last_peak = first.marginal_power() + fleet.gamma_total() > 0
                                   ? problem.energy_budget / (first.marginal_power() + fleet.gamma_total())
                                   : Rational(0);
    const Rational hi = std::max(w / v_min, last_peak) * Rational(101, 100);

    GridResult g;
    g.result.method = Method::GridT;
    g.step = (hi - lo) / resolution;
    g.peak_work = Rational(0);
    for (std::int64_t k = 0; k <= resolution; ++k) {
        const Rational t = lo + g.step * k;
        const Rational work = max_work_at(fleet, order, problem.energy_budget, t);
        ++g.result.search_space_size;
        g.peak_work = std::max(g.peak_work, work);
        if (work >= w) {
            g.result.feasible = true;
            g.result.witness = fill_in_order(fleet, order, w, t);
            g.result.objective = t;
            break;
        }
    }
    return g;
}

std::optional<Rational> breakpoint_min_T_divisible(const EnergyBudgetProblem& problem) {
    const Fleet& fleet = problem.fleet;
    const Rational w = problem.jobs.total_work();
    const Rational& e = problem.energy_budget;
    const std::vector<MachineId> order = fleet.by_efficiency();

    // Breakpoints (T_k, W_k): the first k machines run exactly T_k = E / (Gamma + S_d(k)) and use up
    // the budget, so W_k = S_v(k) T_k. Between neighbours the curve is linear; for T <= T_m it is S_v(m) T.
    struct Point {
        Rational t;
        Rational work;
    };
    std::vector<Point> points;
    std::int64_t sum_v = 0;
    std::int64_t sum_d = 0;
    for (MachineId id : order) {
        sum_v += fleet[id].speed;
        sum_d += fleet[id].marginal_power();
        const std::int64_t draw = fleet.gamma_total() + sum_d;
        if (draw == 0) {
            continue;
        }
        const Rational t = e / draw;
        points.push_back({t, t * sum_v});
    }
    const Rational t_floor = w / fleet.total_speed();
    if (points.empty() || t_floor <= points.back().t) {
        // Speed-limited: all machines together finish W before the budget binds.
        if (points.empty() || Rational(fleet.total_speed()) * t_floor <= points.back().work) {
            return t_floor;
        }
    }
    // Walk breakpoints by increasing T (reverse of prefix order).
    for (std::size_t i = points.size(); i-- > 1;) {
        const Point& a = points[i];      // smaller T
        const Point& b = points[i - 1];  // larger T
        if (a.work >= w) {
            return a.t;
        }
        if (b.work >= w) {
            return a.t + (w - a.work) * (b.t - a.t) / (b.work - a.work);
        }
    }
    if (!points.empty() && points.front().work >= w) {
        return points.front().t;
    }
    return std::nullopt;
}

namespace {

struct VertexBest {
    bool found = false;
    Rational linear;  // sum d t
    Rational total;   // with Gamma * makespan
    std::vector<Rational> times;
};

void vertex_search(const Fleet& fleet, const Rational& w, const Rational& t_cap, VertexBest& best,
                   std::uint64_t& visited) {
    const std::size_t m = fleet.size();
    if (m > kMaxSubsetMachines) {
        throw SearchSpaceTooLarge("vertex enumeration refused: too many machines");
    }
    const Rational gamma(fleet.gamma_total());
    for (std::uint64_t full = 0; full < (std::uint64_t{1} << m); ++full) {
        Rational full_work(0);
        for (std::size_t i = 0; i < m; ++i) {
            if ((full >> i) & 1U) {
                full_work += t_cap * fleet[i].speed;
            }
        }
        if (full_work > w) {
            continue;
        }
        // partial == m means no fractional coordinate.
        for (std::size_t partial = 0; partial <= m; ++partial) {
            if (partial < m && ((full >> partial) & 1U)) {
                continue;
            }
            ++visited;
            std::vector<Rational> times(m, Rational(0));
            for (std::size_t i = 0; i < m; ++i) {
                if ((full >> i) & 1U) {
                    times[i] = t_cap;
                }
            }
            if (partial == m) {
                if (full_work != w) {
                    continue;
                }
            } else {
                const Rational t = (w - full_work) / fleet[partial].speed;
                if (t < 0 || t > t_cap) {
                    continue;
                }
                times[partial] = t;
            }
            Rational linear(0);
            Rational t_max(0);
            for (std::size_t i = 0; i < m; ++i) {
                linear += times[i] * fleet[i].marginal_power();
                t_max = std::max(t_max, times[i]);
            }
            const Rational total = linear + gamma * t_max;
            if (!best.found || linear < best.linear || (linear == best.linear && total < best.total)) {
                best = VertexBest{true, linear, total, std::move(times)};
            }
        }
    }
}

}  // namespace

OracleResult fixed_T_min_energy_divisible(const MakespanBudgetProblem& problem) {
    OracleResult out;
    out.method = Method::FractionalKnapsack;
    VertexBest best;
    vertex_search(problem.fleet, problem.jobs.total_work(), problem.makespan_budget, best, out.search_space_size);
    if (!best.found) {
        return out;
    }
    out.feasible = true;
    out.witness = schedule_from_times(problem.fleet, best.times);
    out.objective = energy(out.witness, problem.fleet);
    return out;
}

OracleResult continuous_min_energy_divisible(const MakespanBudgetProblem& problem) {
    const Fleet& fleet = problem.fleet;
    const Rational w = problem.jobs.total_work();
    std::vector<Rational> caps{problem.makespan_budget};
    std::int64_t sum_v = 0;
    for (MachineId id : fleet.by_efficiency()) {
        sum_v += fleet[id].speed;
        const Rational t = w / sum_v;
        if (t <= problem.makespan_budget) {
            caps.push_back(t);
        }
    }
    OracleResult out;
    out.method = Method::FractionalKnapsack;
    for (const Rational& cap : caps) {
        VertexBest best;
        vertex_search(fleet, w, cap, best, out.search_space_size);
        if (!best.found) {
            continue;
        }
        Schedule s = schedule_from_times(fleet, best.times);
        const Rational e = energy(s, fleet);
        if (!out.feasible || e < out.objective) {
            out.feasible = true;
            out.objective = e;
            out.witness = std::move(s);
        }
    }
    return out;
}

Rational step_simulation_energy(const Schedule& schedule, const Fleet& fleet, std::int64_t steps) {
    if (steps < 1) {
        throw ModelError("step count must be positive");
    }
    const Rational horizon = makespan(schedule);
    if (horizon == 0) {
        return Rational(0);
    }
    std::vector<Rational> busy(fleet.size(), Rational(0));
    for (const auto& a : schedule.assignments) {
        if (a.machine >= fleet.size()) {
            throw ModelError("schedule references unknown machine id " + std::to_string(a.machine));
        }
        busy[a.machine] = a.time;
    }
    const Rational h = horizon / steps;
    Rational total(0);
    for (std::int64_t s = 0; s < steps; ++s) {
        const Rational start = h * s;
        std::int64_t draw = 0;
        for (const Machine& c : fleet.machines()) {
            draw += busy[c.id] > start ? c.working_power : c.idle_power;
        }
        total += h * draw;
    }
    return total;
}

}  // namespace schedcon::oracle
