// schedcon: solve, verify, oracle, gen and bench over JSON instance files.
//
// Exit codes: 0 success, 2 infeasible instance, 1 bad input or a failed verification.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "schedcon/bench.hpp"
#include "schedcon/energy_budget.hpp"
#include "schedcon/instance_io.hpp"
#include "schedcon/makespan_budget.hpp"
#include "schedcon/oracle.hpp"
#include "schedcon/power_solvers.hpp"

namespace {

using namespace schedcon;

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kInfeasible = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) {
        throw UsageError("cannot write '" + path + "'");
    }
}

io::IntRange parse_range(const std::string& text) {
    // "a" or "a:b"
    const auto colon = text.find(':');
    try {
        if (colon == std::string::npos) {
            const std::int64_t v = std::stoll(text);
            return {v, v};
        }
        return {std::stoll(text.substr(0, colon)), std::stoll(text.substr(colon + 1))};
    } catch (const std::exception&) {
        throw UsageError("bad range '" + text + "' (expected N or LO:HI)");
    }
}

ConstraintKind parse_kind(const std::string& s) {
    if (s == "power") {
        return ConstraintKind::PowerCap;
    }
    if (s == "energy") {
        return ConstraintKind::EnergyBudget;
    }
    if (s == "makespan") {
        return ConstraintKind::MakespanBudget;
    }
    throw UsageError("unknown constraint '" + s + "'");
}

Rational parse_epsilon(const std::string& s) {
    const Rational eps = parse_rational(s);
    if (!(eps > 0 && eps < 1)) {
        throw UsageError("epsilon must lie strictly between 0 and 1");
    }
    return eps;
}

io::Instance load_instance(const std::string& path) {
    const io::Instance inst = io::parse_instance(read_file(path));
    const ValidationReport report = validate_instance(inst.fleet, inst.jobs, inst.constraint);
    for (const Finding& f : report.findings) {
        std::cerr << (f.severity == Severity::Error ? "error" : "warning") << " [" << f.code << "]: " << f.message
                  << "\n";
    }
    return inst;
}

struct GenFlags {
    std::string constraint = "power";
    bool discrete = false;
    std::string machines = "2:6";
    std::string jobs = "1:7";
    std::string speed = "1:50";
    std::string marginal_power = "1:50";
    std::string idle_power = "0:50";
    std::string weight = "1:100";
    std::string work = "1:100";
    std::string tightness = "1/2";
    std::uint64_t seed = 42;

    void attach(CLI::App* app, bool with_constraint) {
        if (with_constraint) {
            app->add_option("--constraint", constraint, "power | energy | makespan");
            app->add_flag("--discrete", discrete, "non-divisible jobs");
        }
        app->add_option("--seed", seed, "generator seed");
        app->add_option("--machines", machines, "machine count range LO:HI");
        app->add_option("--jobs", jobs, "job count range");
        app->add_option("--speed", speed, "speed range");
        app->add_option("--marginal-power", marginal_power, "working minus idle power range");
        app->add_option("--idle-power", idle_power, "idle power range");
        app->add_option("--weight", weight, "job weight range");
        app->add_option("--work", work, "divisible total work range");
        app->add_option("--tightness", tightness, "budget position in (0,1], 1 = vacuous");
    }

    io::GenSpec spec() const {
        io::GenSpec s;
        s.seed = seed;
        s.kind = parse_kind(constraint);
        s.discrete = discrete;
        s.machines = parse_range(machines);
        s.jobs = parse_range(jobs);
        s.speed = parse_range(speed);
        s.marginal_power = parse_range(marginal_power);
        s.idle_power = parse_range(idle_power);
        s.weight = parse_range(weight);
        s.total_work = parse_range(work);
        s.tightness = parse_rational(tightness);
        return s;
    }
};

int cmd_solve(const std::string& instance_path, const std::string& output, const std::string& objective,
              const std::string& epsilon_text, const std::string& mode_text) {
    const io::Instance inst = load_instance(instance_path);
    const Rational eps = parse_epsilon(epsilon_text);
    SolveOutcome out;
    switch (inst.constraint.kind) {
        case ConstraintKind::PowerCap: {
            if (inst.jobs.is_discrete()) {
                throw UsageError("non-divisible jobs under a power cap are not supported");
            }
            const PowerProblem p{inst.fleet, inst.jobs.total_work(), inst.constraint.value};
            if (objective == "makespan") {
                out = min_makespan_under_power(p, eps);
            } else if (objective == "energy") {
                out = min_energy_under_power(p, mode_text == "paper-verbatim" ? GreedyMode::PaperVerbatim
                                                                                : GreedyMode::Corrected);
            } else {
                throw UsageError("a power-capped instance needs --objective makespan or energy");
            }
            break;
        }
        case ConstraintKind::EnergyBudget: {
            const EnergyBudgetProblem p{inst.fleet, inst.jobs, inst.constraint.value};
            out = inst.jobs.is_divisible() ? min_makespan_divisible(p) : min_makespan_nondivisible(p, eps);
            break;
        }
        case ConstraintKind::MakespanBudget: {
            const MakespanBudgetProblem p{inst.fleet, inst.jobs, inst.constraint.value};
            out = inst.jobs.is_divisible() ? min_energy_divisible(p) : min_energy_nondivisible(p);
            break;
        }
    }
    write_output(output, io::emit_outcome(out, &inst.fleet));
    return out.ok() ? kOk : kInfeasible;
}

int cmd_verify(const std::string& instance_path, const std::string& schedule_path) {
    const io::Instance inst = io::parse_instance(read_file(instance_path));
    const Schedule schedule = io::parse_schedule(read_file(schedule_path));
    const FeasibilityReport report = verify_schedule(schedule, inst.fleet, inst.jobs, inst.constraint);
    if (report.pass()) {
        std::cout << "PASS\n";
        return kOk;
    }
    std::cout << "FAIL\n";
    for (const Violation& v : report.violations) {
        std::cout << "  [" << v.code << "] " << v.message << "\n";
    }
    return kError;
}

int cmd_oracle(const std::string& instance_path, const std::string& output, const std::string& objective) {
    const io::Instance inst = load_instance(instance_path);
    oracle::OracleResult result;
    ObjectiveKind kind = ObjectiveKind::Makespan;
    switch (inst.constraint.kind) {
        case ConstraintKind::PowerCap: {
            if (objective != "makespan" && objective != "energy") {
                throw UsageError("a power-capped instance needs --objective makespan or energy");
            }
            kind = objective == "energy" ? ObjectiveKind::Energy : ObjectiveKind::Makespan;
            result = oracle::exact_power_subset(PowerProblem{inst.fleet, inst.jobs.total_work(), inst.constraint.value},
                                                kind);
            break;
        }
        case ConstraintKind::EnergyBudget:
            kind = ObjectiveKind::Makespan;
            result = inst.jobs.is_divisible()
                         ? oracle::grid_min_T_divisible(EnergyBudgetProblem{inst.fleet, inst.jobs, inst.constraint.value})
                               .result
                         : oracle::exact_assignment_enum(inst.fleet, inst.jobs.weights(), inst.constraint);
            break;
        case ConstraintKind::MakespanBudget:
            kind = ObjectiveKind::Energy;
            result = inst.jobs.is_divisible()
                         ? oracle::fixed_T_min_energy_divisible(
                               MakespanBudgetProblem{inst.fleet, inst.jobs, inst.constraint.value})
                         : oracle::exact_assignment_enum(inst.fleet, inst.jobs.weights(), inst.constraint);
            break;
    }
    write_output(output, io::emit_oracle(result, kind));
    return result.feasible ? kOk : kInfeasible;
}

std::vector<bench::Problem> bench_problems(const std::string& constraint, const std::string& objective,
                                           bool discrete_only, bool divisible_only) {
    using bench::Problem;
    const std::vector<Problem> all = {Problem::PowerMakespan,           Problem::PowerEnergy,
                                      Problem::EnergyMakespanDivisible, Problem::EnergyMakespanDiscrete,
                                      Problem::MakespanEnergyDivisible, Problem::MakespanEnergyDiscrete};
    std::vector<Problem> picked;
    for (Problem p : all) {
        const std::string name = bench::to_string(p);
        if (!constraint.empty() && name.rfind(constraint + "-", 0) != 0) {
            continue;
        }
        if (constraint == "power" && !objective.empty() && name != "power-" + objective) {
            continue;
        }
        const bool discrete = name.ends_with("-discrete");
        const bool divisible = name.ends_with("-divisible") || constraint == "power" || name.rfind("power-", 0) == 0;
        if ((discrete_only && !discrete) || (divisible_only && !divisible)) {
            continue;
        }
        picked.push_back(p);
    }
    return picked;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Constrained scheduling solvers for machines with speed, working and idle power ratings"};
    app.require_subcommand(1);

    std::string instance_path;
    std::string output;
    std::string objective;
    std::string epsilon = "1/4";
    std::string mode = "corrected";

    auto* solve = app.add_subcommand("solve", "solve an instance; the problem follows from its constraint and jobs");
    solve->add_option("--instance", instance_path, "instance JSON")->required();
    solve->add_option("--output", output, "write the outcome here instead of stdout");
    solve->add_option("--objective", objective, "makespan | energy (power-capped instances)")
        ->check(CLI::IsMember({"makespan", "energy"}));
    solve->add_option("--epsilon", epsilon, "approximation parameter p/q in (0,1)");
    solve->add_option("--mode", mode, "energy greedy variant")->check(CLI::IsMember({"corrected", "paper-verbatim"}));

    std::string schedule_path;
    auto* verify = app.add_subcommand("verify", "check a schedule (or an outcome file) against an instance");
    verify->add_option("--instance", instance_path, "instance JSON")->required();
    verify->add_option("--schedule", schedule_path, "schedule or outcome JSON")->required();

    auto* orc = app.add_subcommand("oracle", "brute-force or reference optimum");
    orc->add_option("--instance", instance_path, "instance JSON")->required();
    orc->add_option("--output", output, "write the result here instead of stdout");
    orc->add_option("--objective", objective, "makespan | energy (power-capped instances)")
        ->check(CLI::IsMember({"makespan", "energy"}));

    GenFlags gen_flags;
    auto* gen = app.add_subcommand("gen", "generate a seeded instance");
    gen_flags.attach(gen, true);
    gen->add_option("--output", output, "write the instance here instead of stdout");

    GenFlags bench_flags;
    bench_flags.machines = "2:4";
    bench_flags.jobs = "1:6";
    std::string bench_constraint;
    std::string bench_objective;
    bool bench_discrete = false;
    bool bench_divisible = false;
    std::size_t count = 100;
    std::vector<std::string> bench_eps;
    std::string report_path;
    bool report_json = false;
    auto* bnch = app.add_subcommand("bench", "algorithm / oracle ratio table per problem");
    bench_flags.attach(bnch, false);
    bnch->add_option("--constraint", bench_constraint, "restrict to power | energy | makespan")
        ->check(CLI::IsMember({"power", "energy", "makespan"}));
    bnch->add_option("--objective", bench_objective, "with --constraint power: makespan | energy")
        ->check(CLI::IsMember({"makespan", "energy"}));
    bnch->add_flag("--discrete", bench_discrete, "only non-divisible problems");
    bnch->add_flag("--divisible", bench_divisible, "only divisible problems");
    bnch->add_option("--count", count, "instances per row");
    bnch->add_option("--epsilon", bench_eps, "epsilon values (repeatable)");
    bnch->add_option("--mode", mode, "energy greedy variant")->check(CLI::IsMember({"corrected", "paper-verbatim"}));
    bnch->add_option("--report", report_path, "also write the report as JSON here");
    bnch->add_flag("--json", report_json, "print JSON instead of the table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kError;
    }

    try {
        if (*solve) {
            return cmd_solve(instance_path, output, objective, epsilon, mode);
        }
        if (*verify) {
            return cmd_verify(instance_path, schedule_path);
        }
        if (*orc) {
            return cmd_oracle(instance_path, output, objective);
        }
        if (*gen) {
            const io::Generated g = io::generate(gen_flags.spec());
            write_output(output, io::emit_instance(g.instance));
            return kOk;
        }
        if (*bnch) {
            bench::Config config;
            config.base = bench_flags.spec();
            config.problems = bench_problems(bench_constraint, bench_objective, bench_discrete, bench_divisible);
            if (config.problems.empty()) {
                throw UsageError("no problem matches the given filters");
            }
            if (!bench_eps.empty()) {
                config.epsilons.clear();
                for (const auto& e : bench_eps) {
                    config.epsilons.push_back(parse_epsilon(e));
                }
            }
            config.count = count;
            config.mode = mode == "paper-verbatim" ? GreedyMode::PaperVerbatim : GreedyMode::Corrected;
            const auto rows = bench::run(config);
            std::cout << (report_json ? bench::format_json(rows) : bench::format_table(rows));
            if (!report_path.empty()) {
                write_output(report_path, bench::format_json(rows));
            }
            return kOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
    return kError;
}
