#include "schedcon/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <iomanip>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "schedcon/energy_budget.hpp"
#include "schedcon/makespan_budget.hpp"
#include "schedcon/oracle.hpp"

namespace schedcon::bench {

std::string to_string(Problem problem) {
    switch (problem) {
        case Problem::PowerMakespan:
            return "power-makespan";
        case Problem::PowerEnergy:
            return "power-energy";
        case Problem::EnergyMakespanDivisible:
            return "energy-makespan-divisible";
        case Problem::EnergyMakespanDiscrete:
            return "energy-makespan-discrete";
        case Problem::MakespanEnergyDivisible:
            return "makespan-energy-divisible";
        case Problem::MakespanEnergyDiscrete:
            return "makespan-energy-discrete";
    }
    return "?";
}

bool uses_epsilon(Problem problem) {
    return problem == Problem::PowerMakespan || problem == Problem::EnergyMakespanDiscrete;
}

unsigned thread_count(unsigned requested) {
    if (requested > 0) {
        return requested;
    }
    if (const char* env = std::getenv("SCHEDCON_THREADS")) {
        char* end = nullptr;
        const unsigned long n = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && n > 0) {
            return static_cast<unsigned>(std::min<unsigned long>(n, 256));
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

enum class Verdict { Verified, Unverified, BothInfeasible, Missed, GenFailed };

struct Sample {
    Verdict verdict = Verdict::GenFailed;
    Rational ratio;
    Rational bound;
    bool violation = false;
    bool tight_violation = false;
    bool working_set_violation = false;
};

struct Task {
    Problem problem;
    std::optional<Rational> epsilon;
};

io::GenSpec spec_for(const Config& config, Problem problem, std::size_t i) {
    io::GenSpec spec = config.base;
    spec.seed = config.base.seed + i;
    switch (problem) {
        case Problem::PowerMakespan:
        case Problem::PowerEnergy:
            spec.kind = ConstraintKind::PowerCap;
            spec.discrete = false;
            break;
        case Problem::EnergyMakespanDivisible:
            spec.kind = ConstraintKind::EnergyBudget;
            spec.discrete = false;
            break;
        case Problem::EnergyMakespanDiscrete:
            spec.kind = ConstraintKind::EnergyBudget;
            spec.discrete = true;
            break;
        case Problem::MakespanEnergyDivisible:
            spec.kind = ConstraintKind::MakespanBudget;
            spec.discrete = false;
            break;
        case Problem::MakespanEnergyDiscrete:
            spec.kind = ConstraintKind::MakespanBudget;
            spec.discrete = true;
            break;
    }
    return spec;
}

// Fills verdict and ratio from a solver outcome and an oracle optimum of the same objective.
void compare(Sample& s, const SolveOutcome& out, bool oracle_feasible, const Rational& opt) {
    if (!oracle_feasible) {
        s.verdict = out.ok() ? Verdict::Verified : Verdict::BothInfeasible;
        s.ratio = 1;
        // A solver answer the oracle deems impossible is itself a violation.
        s.violation = out.ok();
        return;
    }
    if (!out.ok()) {
        s.verdict = Verdict::Missed;
        return;
    }
    s.verdict = Verdict::Verified;
    s.ratio = opt == 0 ? Rational(out.objective == 0 ? 1 : 0) : out.objective / opt;
    s.violation = s.ratio > s.bound;
}

Sample evaluate(const Config& config, const Task& task, std::size_t i) {
    Sample s;
    io::Instance inst;
    try {
        inst = io::generate(spec_for(config, task.problem, i)).instance;
    } catch (const io::GenError&) {
        return s;
    }
    const Fleet& fleet = inst.fleet;
    const Rational& value = inst.constraint.value;

    switch (task.problem) {
        case Problem::PowerMakespan:
        case Problem::PowerEnergy: {
            const PowerProblem p{fleet, inst.jobs.total_work(), value};
            if (fleet.size() > oracle::kMaxSubsetMachines) {
                s.verdict = Verdict::Unverified;
                return s;
            }
            const bool mk = task.problem == Problem::PowerMakespan;
            const SolveOutcome out = mk ? min_makespan_under_power(p, *task.epsilon) : min_energy_under_power(p, config.mode);
            const auto opt = oracle::exact_power_subset(p, mk ? ObjectiveKind::Makespan : ObjectiveKind::Energy);
            s.bound = mk ? 1 / (1 - *task.epsilon) : Rational(2);
            compare(s, out, opt.feasible, opt.objective);
            if (s.verdict == Verdict::Verified && power_draw(out.schedule.working_set(), fleet) > value) {
                s.violation = true;
            }
            return s;
        }
        case Problem::EnergyMakespanDivisible: {
            const EnergyBudgetProblem p{fleet, inst.jobs, value};
            const SolveOutcome out = min_makespan_divisible(p);
            const auto opt = oracle::breakpoint_min_T_divisible(p);
            s.bound = 1;
            compare(s, out, opt.has_value(), opt.value_or(Rational(0)));
            return s;
        }
        case Problem::EnergyMakespanDiscrete: {
            const auto w = inst.jobs.weights();
            if (oracle::assignment_space(fleet.size(), w.size()) > oracle::kMaxAssignments) {
                s.verdict = Verdict::Unverified;
                return s;
            }
            const EnergyBudgetProblem p{fleet, inst.jobs, value};
            const SolveOutcome out = min_makespan_nondivisible(p, *task.epsilon);
            const auto opt = oracle::exact_assignment_enum(fleet, w, inst.constraint);
            s.bound = Rational(19, 12) + *task.epsilon;
            compare(s, out, opt.feasible, opt.objective);
            return s;
        }
        case Problem::MakespanEnergyDivisible: {
            const MakespanBudgetProblem p{fleet, inst.jobs, value};
            const SolveOutcome out = min_energy_divisible(p);
            const auto opt = oracle::fixed_T_min_energy_divisible(p);
            s.bound = 1;
            compare(s, out, opt.feasible, opt.objective);
            return s;
        }
        case Problem::MakespanEnergyDiscrete: {
            const auto w = inst.jobs.weights();
            if (oracle::assignment_space(fleet.size(), w.size()) > oracle::kMaxAssignments) {
                s.verdict = Verdict::Unverified;
                return s;
            }
            const MakespanBudgetProblem p{fleet, inst.jobs, value};
            const SolveOutcome out = min_energy_nondivisible(p);
            const auto opt = oracle::exact_assignment_enum(fleet, w, inst.constraint);
            s.bound = efficiency_spread_bound(fleet);
            compare(s, out, opt.feasible, opt.objective);
            if (s.verdict == Verdict::Verified && opt.feasible) {
                s.tight_violation = s.ratio > efficiency_spread_bound_tight(fleet);
                const auto count = oracle::min_machine_count(fleet, w, value);
                s.working_set_violation = !count || out.schedule.working_set().size() > 2 * *count;
            }
            return s;
        }
    }
    return s;
}

std::string bound_label(Problem problem, const std::optional<Rational>& eps) {
    switch (problem) {
        case Problem::PowerMakespan:
            return "1/(1-eps)";
        case Problem::PowerEnergy:
            return "2";
        case Problem::EnergyMakespanDiscrete:
            return "19/12+" + schedcon::to_string(*eps);
        case Problem::MakespanEnergyDiscrete:
            return "1+eta_max/eta_min";
        default:
            return "1 (exact)";
    }
}

Row aggregate(const Task& task, const std::vector<Sample>& samples) {
    Row row;
    row.problem = task.problem;
    row.epsilon = task.epsilon;
    row.instances = samples.size();
    row.bound_label = bound_label(task.problem, task.epsilon);
    if (task.problem == Problem::MakespanEnergyDiscrete) {
        row.tight_violations = 0;
        row.working_set_violations = 0;
    }
    double sum = 0;
    for (const Sample& s : samples) {
        switch (s.verdict) {
            case Verdict::GenFailed:
                ++row.gen_failures;
                continue;
            case Verdict::Unverified:
                ++row.unverified;
                continue;
            case Verdict::BothInfeasible:
                ++row.infeasible;
                continue;
            case Verdict::Missed:
                ++row.missed;
                continue;
            case Verdict::Verified:
                break;
        }
        ++row.verified;
        sum += to_double(s.ratio);
        row.max_ratio = std::max(row.max_ratio, s.ratio);
        row.bound = std::max(row.bound, s.bound);
        row.violations += s.violation ? 1 : 0;
        if (row.tight_violations) {
            *row.tight_violations += s.tight_violation ? 1 : 0;
            *row.working_set_violations += s.working_set_violation ? 1 : 0;
        }
    }
    row.mean_ratio = row.verified > 0 ? sum / static_cast<double>(row.verified) : 0;
    return row;
}

}  // namespace

std::vector<Row> run(const Config& config) {
    std::vector<Problem> problems = config.problems;
    if (problems.empty()) {
        problems = {Problem::PowerMakespan,           Problem::PowerEnergy,
                    Problem::EnergyMakespanDivisible, Problem::EnergyMakespanDiscrete,
                    Problem::MakespanEnergyDivisible, Problem::MakespanEnergyDiscrete};
    }
    std::vector<Task> tasks;
    for (Problem p : problems) {
        if (uses_epsilon(p)) {
            for (const Rational& eps : config.epsilons) {
                tasks.push_back({p, eps});
            }
        } else {
            tasks.push_back({p, std::nullopt});
        }
    }

    // Every (task, instance) pair writes its own slot, so the result is independent of scheduling.
    const std::size_t total = tasks.size() * config.count;
    std::vector<Sample> samples(total);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < total; k = next++) {
            samples[k] = evaluate(config, tasks[k / config.count], k % config.count);
        }
    };
    const unsigned n = std::min<std::size_t>(thread_count(config.threads), std::max<std::size_t>(total, 1));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& t : pool) {
        t.join();
    }

    std::vector<Row> rows;
    for (std::size_t t = 0; t < tasks.size(); ++t) {
        const auto first = samples.begin() + static_cast<std::ptrdiff_t>(t * config.count);
        rows.push_back(aggregate(tasks[t], std::vector<Sample>(first, first + static_cast<std::ptrdiff_t>(config.count))));
    }
    return rows;
}

std::string format_table(const std::vector<Row>& rows) {
    std::ostringstream os;
    os << std::left << std::setw(27) << "problem" << std::setw(7) << "eps" << std::right << std::setw(6) << "n"
       << std::setw(6) << "ok" << std::setw(7) << "unver" << std::setw(7) << "infeas" << std::setw(7) << "missed"
       << std::setw(10) << "mean" << std::setw(10) << "max" << "  " << std::left << std::setw(20) << "bound"
       << std::right << std::setw(6) << "viol" << "\n";
    os << std::fixed << std::setprecision(4);
    for (const Row& r : rows) {
        os << std::left << std::setw(27) << to_string(r.problem) << std::setw(7)
           << (r.epsilon ? schedcon::to_string(*r.epsilon) : "-") << std::right << std::setw(6) << r.instances << std::setw(6)
           << r.verified << std::setw(7) << r.unverified << std::setw(7) << r.infeasible << std::setw(7) << r.missed
           << std::setw(10) << r.mean_ratio << std::setw(10) << to_double(r.max_ratio) << "  " << std::left
           << std::setw(20) << r.bound_label << std::right << std::setw(6) << r.violations << "\n";
    }
    for (const Row& r : rows) {
        if (r.tight_violations) {
            os << to_string(r.problem) << ": tighter spread bound 1+eta_max/(2 eta_min) exceeded on "
               << *r.tight_violations << " of " << r.verified << " (informational); working set > 2x fewest machines on "
               << *r.working_set_violations << "\n";
        }
        if (r.gen_failures > 0) {
            os << to_string(r.problem) << ": " << r.gen_failures << " seeds produced no valid instance\n";
        }
    }
    return os.str();
}

std::string format_json(const std::vector<Row>& rows) {
    nlohmann::json out = nlohmann::json::array();
    for (const Row& r : rows) {
        nlohmann::json j = {{"problem", to_string(r.problem)},
                            {"epsilon", r.epsilon ? nlohmann::json(schedcon::to_string(*r.epsilon)) : nlohmann::json(nullptr)},
                            {"instances", r.instances},
                            {"verified", r.verified},
                            {"unverified", r.unverified},
                            {"infeasible", r.infeasible},
                            {"missed", r.missed},
                            {"gen_failures", r.gen_failures},
                            {"mean_ratio", r.mean_ratio},
                            {"max_ratio", schedcon::to_string(r.max_ratio)},
                            {"bound", schedcon::to_string(r.bound)},
                            {"bound_label", r.bound_label},
                            {"violations", r.violations}};
        if (r.tight_violations) {
            j["tight_bound_violations"] = *r.tight_violations;
            j["working_set_violations"] = *r.working_set_violations;
        }
        out.push_back(std::move(j));
    }
    return out.dump(2) + "\n";
}

}  // namespace schedcon::bench
