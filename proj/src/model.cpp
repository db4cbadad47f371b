#include "schedcon/model.hpp"

#include <algorithm>
#include <numeric>

namespace schedcon {

Rational Machine::efficiency() const {
    if (marginal_power() <= 0) {
        throw ModelError("efficiency undefined for machine " + std::to_string(id) + " with zero marginal power");
    }
    return make_rational(speed, marginal_power());
}

Rational Machine::power_ratio() const {
    return make_rational(idle_power, working_power);
}

Fleet::Fleet(std::vector<Machine> machines, bool allow_mu_eq_gamma)
    : machines_(std::move(machines)), allow_mu_eq_gamma_(allow_mu_eq_gamma) {
    std::sort(machines_.begin(), machines_.end(),
              [](const Machine& a, const Machine& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < machines_.size(); ++i) {
        const Machine& c = machines_[i];
        const std::string name = "machine " + std::to_string(c.id);
        if (c.id != i) {
            throw ModelError("machine ids must be unique and dense 0..m-1; found id " + std::to_string(c.id) +
                             " at position " + std::to_string(i));
        }
        if (c.speed < 1) {
            throw ModelError(name + ": speed must be >= 1");
        }
        if (c.working_power < 1) {
            throw ModelError(name + ": working_power must be >= 1");
        }
        if (c.idle_power < 0) {
            throw ModelError(name + ": idle_power must be >= 0");
        }
        if (c.idle_power > c.working_power || (c.idle_power == c.working_power && !allow_mu_eq_gamma_)) {
            throw ModelError(name + ": idle_power must be below working_power");
        }
        gamma_total_ += c.idle_power;
        total_working_power_ += c.working_power;
        total_speed_ += c.speed;
        max_speed_ = std::max(max_speed_, c.speed);
        min_marginal_ = i == 0 ? c.marginal_power() : std::min(min_marginal_, c.marginal_power());
    }
}

std::vector<MachineId> Fleet::by_efficiency() const {
    std::vector<MachineId> order(machines_.size());
    std::iota(order.begin(), order.end(), MachineId{0});
    // a more efficient than b  <=>  v_a * d_b > v_b * d_a   (d > 0)
    std::stable_sort(order.begin(), order.end(), [this](MachineId a, MachineId b) {
        const Machine& x = machines_[a];
        const Machine& y = machines_[b];
        return static_cast<__int128>(x.speed) * y.marginal_power() >
               static_cast<__int128>(y.speed) * x.marginal_power();
    });
    return order;
}

JobSpec JobSpec::divisible(Rational total) {
    return JobSpec(DivisibleWork{std::move(total)});
}

JobSpec JobSpec::discrete(std::vector<std::int64_t> weights) {
    return JobSpec(DiscreteJobs{std::move(weights)});
}

Rational JobSpec::total_work() const {
    if (const auto* d = std::get_if<DivisibleWork>(&value_)) {
        return d->total;
    }
    const auto& w = std::get<DiscreteJobs>(value_).weights;
    return Rational(std::accumulate(w.begin(), w.end(), std::int64_t{0}));
}

std::span<const std::int64_t> JobSpec::weights() const {
    if (const auto* d = std::get_if<DiscreteJobs>(&value_)) {
        return d->weights;
    }
    return {};
}

bool JobSpec::operator==(const JobSpec& other) const {
    if (is_divisible() != other.is_divisible()) {
        return false;
    }
    if (is_divisible()) {
        return total_work() == other.total_work();
    }
    const auto a = weights();
    const auto b = other.weights();
    return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

std::string to_string(ConstraintKind kind) {
    switch (kind) {
        case ConstraintKind::PowerCap:
            return "power";
        case ConstraintKind::EnergyBudget:
            return "energy";
        case ConstraintKind::MakespanBudget:
            return "makespan";
    }
    return "unknown";
}

std::string to_string(ObjectiveKind kind) {
    return kind == ObjectiveKind::Makespan ? "makespan" : "energy";
}

std::vector<MachineId> Schedule::working_set() const {
    std::vector<MachineId> ids;
    for (const auto& a : assignments) {
        if (a.time > 0) {
            ids.push_back(a.machine);
        }
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

const Assignment* Schedule::find(MachineId id) const {
    for (const auto& a : assignments) {
        if (a.machine == id) {
            return &a;
        }
    }
    return nullptr;
}

Schedule idle_schedule(const Fleet& fleet, bool discrete) {
    Schedule s;
    s.discrete = discrete;
    s.assignments.reserve(fleet.size());
    for (const Machine& c : fleet.machines()) {
        s.assignments.push_back(Assignment{c.id, Rational(0), Rational(0), {}});
    }
    return s;
}

Schedule schedule_from_times(const Fleet& fleet, std::span<const Rational> times) {
    if (times.size() != fleet.size()) {
        throw ModelError("schedule_from_times: expected one time per machine");
    }
    Schedule s = idle_schedule(fleet);
    for (std::size_t i = 0; i < times.size(); ++i) {
        s.assignments[i].time = times[i];
        s.assignments[i].work = times[i] * fleet[i].speed;
    }
    return s;
}

Schedule schedule_from_placement(const Fleet& fleet, std::span<const std::int64_t> weights,
                                 std::span<const MachineId> machine_of_job) {
    if (weights.size() != machine_of_job.size()) {
        throw ModelError("schedule_from_placement: one machine per job required");
    }
    Schedule s = idle_schedule(fleet, true);
    std::vector<std::int64_t> load(fleet.size(), 0);
    for (std::size_t j = 0; j < weights.size(); ++j) {
        const MachineId id = machine_of_job[j];
        if (id >= fleet.size()) {
            throw ModelError("unknown machine id " + std::to_string(id));
        }
        load[id] += weights[j];
        s.assignments[id].jobs.push_back(j);
    }
    for (std::size_t i = 0; i < fleet.size(); ++i) {
        s.assignments[i].work = Rational(load[i]);
        s.assignments[i].time = make_rational(load[i], fleet[i].speed);
    }
    return s;
}

Schedule complete_schedule(Schedule schedule, const Fleet& fleet) {
    for (const Machine& c : fleet.machines()) {
        if (schedule.find(c.id) == nullptr) {
            schedule.assignments.push_back(Assignment{c.id, Rational(0), Rational(0), {}});
        }
    }
    std::sort(schedule.assignments.begin(), schedule.assignments.end(),
              [](const Assignment& a, const Assignment& b) { return a.machine < b.machine; });
    return schedule;
}

SolveOutcome infeasible_outcome(std::string problem, ObjectiveKind kind, Certificate certificate) {
    SolveOutcome out;
    out.status = SolveStatus::Infeasible;
    out.problem = std::move(problem);
    out.objective_kind = kind;
    out.certificate = std::move(certificate);
    return out;
}

Rational makespan(const Schedule& schedule) {
    Rational t(0);
    for (const auto& a : schedule.assignments) {
        if (a.time > t) {
            t = a.time;
        }
    }
    return t;
}

Rational energy(const Schedule& schedule, const Fleet& fleet) {
    Rational e(0);
    for (const auto& a : schedule.assignments) {
        if (a.machine >= fleet.size()) {
            throw ModelError("schedule references unknown machine id " + std::to_string(a.machine));
        }
        e += a.time * fleet[a.machine].marginal_power();
    }
    e += makespan(schedule) * fleet.gamma_total();
    return e;
}

std::int64_t power_draw(std::span<const MachineId> working_set, const Fleet& fleet) {
    std::int64_t draw = fleet.gamma_total();
    std::set<MachineId> seen;
    for (MachineId id : working_set) {
        if (id >= fleet.size()) {
            throw ModelError("unknown machine id " + std::to_string(id));
        }
        if (seen.insert(id).second) {
            draw += fleet[id].marginal_power();
        }
    }
    return draw;
}

bool ValidationReport::ok() const {
    return worst() != Severity::Error;
}

bool ValidationReport::has(const std::string& code) const {
    return std::any_of(findings.begin(), findings.end(), [&](const Finding& f) { return f.code == code; });
}

Severity ValidationReport::worst() const {
    Severity s = Severity::Ok;
    for (const auto& f : findings) {
        s = std::max(s, f.severity);
    }
    return s;
}

bool FeasibilityReport::has(const std::string& code) const {
    return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.code == code; });
}

FeasibilityReport verify_schedule(const Schedule& schedule, const Fleet& fleet, const JobSpec& jobs,
                                  const Constraint& constraint) {
    FeasibilityReport report;
    auto fail = [&](std::string code, std::string message) {
        report.violations.push_back(Violation{std::move(code), std::move(message)});
    };

    std::set<MachineId> seen;
    Rational total(0);
    bool structural_ok = true;
    for (const auto& a : schedule.assignments) {
        const std::string name = "machine " + std::to_string(a.machine);
        if (a.machine >= fleet.size()) {
            fail("unknown-machine", name + " is not in the fleet");
            structural_ok = false;
            continue;
        }
        if (!seen.insert(a.machine).second) {
            fail("duplicate-machine", name + " appears twice");
            structural_ok = false;
        }
        if (a.work < 0 || a.time < 0) {
            fail("negative", name + " has negative work or time");
        }
        if (a.work != a.time * fleet[a.machine].speed) {
            fail("work-time", name + ": work " + to_string(a.work) + " != time * speed " +
                                  to_string(a.time * fleet[a.machine].speed));
        }
        total += a.work;
    }
    if (total != jobs.total_work()) {
        fail("work-conservation", "assigned work " + to_string(total) + " != total work " + to_string(jobs.total_work()));
    }

    if (jobs.is_discrete()) {
        const auto weights = jobs.weights();
        std::vector<int> count(weights.size(), 0);
        for (const auto& a : schedule.assignments) {
            std::int64_t sum = 0;
            for (JobIndex j : a.jobs) {
                if (j >= weights.size()) {
                    fail("job-partition", "job index " + std::to_string(j) + " out of range");
                    continue;
                }
                ++count[j];
                sum += weights[j];
            }
            if (a.work != Rational(sum)) {
                fail("job-partition", "machine " + std::to_string(a.machine) + ": work " + to_string(a.work) +
                                          " != assigned job weight " + std::to_string(sum));
            }
        }
        for (std::size_t j = 0; j < count.size(); ++j) {
            if (count[j] != 1) {
                fail("job-partition", "job " + std::to_string(j) + " assigned " + std::to_string(count[j]) + " times");
            }
        }
    } else {
        for (const auto& a : schedule.assignments) {
            if (!a.jobs.empty()) {
                fail("job-partition", "divisible schedule lists job indices");
                break;
            }
        }
    }

    if (!structural_ok) {
        return report;
    }
    switch (constraint.kind) {
        case ConstraintKind::PowerCap: {
            const auto ws = schedule.working_set();
            const std::int64_t draw = power_draw(ws, fleet);
            if (Rational(draw) > constraint.value) {
                fail("power-cap", "power draw " + std::to_string(draw) + " W exceeds cap " + to_string(constraint.value));
            }
            break;
        }
        case ConstraintKind::EnergyBudget: {
            const Rational e = energy(schedule, fleet);
            if (e > constraint.value) {
                fail("energy-budget", "energy " + to_string(e) + " J exceeds budget " + to_string(constraint.value));
            }
            break;
        }
        case ConstraintKind::MakespanBudget: {
            const Rational t = makespan(schedule);
            if (t > constraint.value) {
                fail("makespan-budget", "makespan " + to_string(t) + " s exceeds budget " + to_string(constraint.value));
            }
            break;
        }
    }
    return report;
}

}  // namespace schedcon
