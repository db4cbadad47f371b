// Acceptance run: one PASS/FAIL line per criterion, with the measured numbers behind it.
//
// usage: acceptance <path-to-schedcon-cli> <fixtures-dir>
//
// Criteria that are known not to hold for the algorithms as specified are still evaluated and
// still print FAIL; they are tagged "known" and do not change the exit status. If one of them
// starts passing it prints XPASS and the run fails, so the tag cannot go stale silently.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <unistd.h>

#include <json.hpp>

#include "schedcon/bench.hpp"
#include "schedcon/energy_budget.hpp"
#include "schedcon/instance_io.hpp"
#include "schedcon/kernels.hpp"
#include "schedcon/makespan_budget.hpp"
#include "schedcon/oracle.hpp"
#include "schedcon/power_solvers.hpp"

using namespace schedcon;
namespace fs = std::filesystem;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    std::string id;
    std::string title;
    double time_limit_s;
    bool known_failure;
    std::function<Verdict()> run;
};

std::string cli_path;
fs::path fixtures;

Rational q(std::int64_t n, std::int64_t d = 1) {
    return make_rational(n, d);
}

std::string fmt(const Rational& r) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(4);
    os << to_double(r);
    return os.str();
}

// ---- 1 -------------------------------------------------------------------------------------

Verdict knapsack_dp_exactness() {
    std::mt19937_64 rng(1001);
    std::size_t fleets = 0;
    std::size_t margins = 0;
    std::size_t mismatches = 0;
    for (; fleets < 200; ++fleets) {
        const std::size_t m = 1 + rng() % 12;
        std::vector<kernels::SpeedPower> items(m);
        std::int64_t total_d = 0;
        for (auto& it : items) {
            it.speed = 1 + static_cast<std::int64_t>(rng() % 50);
            it.marginal_power = 1 + static_cast<std::int64_t>(rng() % 50);
            total_d += it.marginal_power;
        }
        // Enumeration: best speed with power exactly p, then a running max over p.
        std::vector<std::int64_t> best(static_cast<std::size_t>(total_d) + 1, -1);
        for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
            std::int64_t v = 0;
            std::int64_t d = 0;
            for (std::size_t i = 0; i < m; ++i) {
                if (mask & (1u << i)) {
                    v += items[i].speed;
                    d += items[i].marginal_power;
                }
            }
            best[static_cast<std::size_t>(d)] = std::max(best[static_cast<std::size_t>(d)], v);
        }
        for (std::size_t p = 1; p < best.size(); ++p) {
            best[p] = std::max(best[p], best[p - 1]);
        }
        const kernels::DpTable table = kernels::dp_min_power(items);
        for (std::int64_t z = 0; z <= total_d; ++z, ++margins) {
            const auto pick = kernels::best_subset_under_power(table, z);
            std::int64_t v = 0;
            std::int64_t d = 0;
            for (std::size_t i : pick.subset) {
                v += items[i].speed;
                d += items[i].marginal_power;
            }
            if (pick.speed != best[static_cast<std::size_t>(z)] || v != pick.speed || d > z) {
                ++mismatches;
            }
        }
    }
    return {mismatches == 0, std::to_string(fleets) + " fleets, " + std::to_string(margins) +
                                 " margins, mismatches " + std::to_string(mismatches)};
}

// ---- 2 -------------------------------------------------------------------------------------

Verdict fptas_guarantee() {
    std::size_t runs = 0;
    std::size_t speed_viol = 0;
    std::size_t makespan_viol = 0;
    std::size_t size_viol = 0;
    std::size_t one_plus_eps_misses = 0;
    Rational worst(0);
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
        io::GenSpec spec;
        spec.seed = 20000 + seed;
        spec.machines = {1, 10};
        spec.tightness = q(1 + static_cast<std::int64_t>(seed % 10), 10);
        const io::Instance inst = io::generate(spec).instance;
        const PowerProblem p{inst.fleet, inst.jobs.total_work(), inst.constraint.value};
        const auto opt = oracle::exact_power_subset(p, ObjectiveKind::Makespan);
        const Rational opt_speed = p.total_work / opt.objective;
        const auto m = static_cast<std::int64_t>(inst.fleet.size());
        std::vector<kernels::SpeedPower> items;
        for (const Machine& c : inst.fleet.machines()) {
            items.push_back({c.speed, c.marginal_power()});
        }
        for (const Rational eps : {q(1, 2), q(1, 4), q(1, 10)}) {
            ++runs;
            const auto out = min_makespan_under_power(p, eps);
            const auto kernel = kernels::fptas_max_speed(items, p.margin(), eps);
            if (!out.ok() || Rational(kernel.achieved_speed) < (1 - eps) * opt_speed) {
                ++speed_viol;
            }
            if (!out.ok() || out.objective > opt.objective / (1 - eps)) {
                ++makespan_viol;
                continue;
            }
            const auto cap = static_cast<std::size_t>(m) * ceil(Rational(m * m) / eps).convert_to<std::size_t>();
            if (kernel.rounded_table_size > cap) {
                ++size_viol;
            }
            if (out.objective > (1 + eps) * opt.objective) {
                ++one_plus_eps_misses;
            }
            worst = std::max(worst, out.objective / opt.objective);
        }
    }
    return {speed_viol == 0 && makespan_viol == 0 && size_viol == 0,
            std::to_string(runs) + " runs; speed violations " + std::to_string(speed_viol) +
                ", makespan > OPT/(1-eps) " + std::to_string(makespan_viol) + ", table over m*ceil(m^2/eps) " +
                std::to_string(size_viol) + "; worst T/OPT " + fmt(worst) + "; (1+eps) form missed " +
                std::to_string(one_plus_eps_misses) + " (informational)"};
}

// ---- 3 -------------------------------------------------------------------------------------

Verdict energy_factor_two() {
    std::size_t n = 0;
    std::size_t viol = 0;
    std::size_t over_cap = 0;
    Rational worst(0);
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
        io::GenSpec spec;
        spec.seed = 30000 + seed;
        spec.machines = {1, 12};
        spec.tightness = q(1 + static_cast<std::int64_t>(seed % 10), 10);
        const io::Instance inst = io::generate(spec).instance;
        const PowerProblem p{inst.fleet, inst.jobs.total_work(), inst.constraint.value};
        const auto out = min_energy_under_power(p, GreedyMode::Corrected);
        const auto opt = oracle::exact_power_subset(p, ObjectiveKind::Energy);
        ++n;
        if (!out.ok() || !opt.feasible) {
            ++viol;
            continue;
        }
        if (Rational(power_draw(out.schedule.working_set(), p.fleet)) > p.power_cap) {
            ++over_cap;
        }
        const Rational r = out.objective / opt.objective;
        worst = std::max(worst, r);
        viol += r > 2 ? 1 : 0;
    }
    return {viol == 0 && over_cap == 0, std::to_string(n) + " instances (m<=12), max E/OPT " + fmt(worst) +
                                            ", violations " + std::to_string(viol) + ", cap breaches " +
                                            std::to_string(over_cap)};
}

// Ratio of the greedy's energy to running both machines of the worst-case pair.
Rational worst_case_ratio(std::int64_t k, std::int64_t idle) {
    const io::Instance inst = io::two_machine_worst_case(k, idle);
    const PowerProblem p{inst.fleet, inst.jobs.total_work(), inst.constraint.value};
    const auto out = min_energy_under_power(p);
    const std::vector<MachineId> both{0, 1};
    return out.objective / set_energy(inst.fleet, both, p.total_work);
}

Verdict worst_case_tightness() {
    std::ostringstream os;
    bool all_at_least = true;
    bool all_at_most_two = true;
    bool rising = true;
    for (const std::int64_t k : {2, 4, 8}) {
        Rational prev(0);
        for (const std::int64_t idle : {10, 100, 1000}) {
            const Rational r = worst_case_ratio(k, idle);
            os << " k=" << k << ",G=" << idle << ":" << fmt(r);
            all_at_least = all_at_least && r >= q(3, 2);
            all_at_most_two = all_at_most_two && r <= 2;
            rising = rising && r > prev;
            prev = r;
        }
    }
    return {all_at_least && all_at_most_two && rising,
            std::string("ratios vs. running both machines:") + os.str() + "; all<=2 " +
                (all_at_most_two ? "yes" : "no") + ", rising in G " + (rising ? "yes" : "no") + ", all>=1.5 " +
                (all_at_least ? "yes" : "no") + " (2(G+k)/(G+2k) < 1.5 at k=8,G=10)"};
}

// ---- 4 -------------------------------------------------------------------------------------

Verdict divisible_energy_exactness() {
    std::size_t n = 0;
    std::size_t closed_mismatch = 0;
    std::size_t grid_mismatch = 0;
    std::size_t infeasible = 0;
    for (std::uint64_t seed = 1; seed <= 500; ++seed) {
        io::GenSpec spec;
        spec.seed = 40000 + seed;
        spec.kind = ConstraintKind::EnergyBudget;
        spec.machines = {1, 6};
        spec.speed = {1, 20};
        spec.marginal_power = {1, 20};
        spec.idle_power = {0, 20};
        spec.total_work = {1, 50};
        spec.tightness = q(1 + static_cast<std::int64_t>(seed % 10), 10);
        io::Instance inst = io::generate(spec).instance;
        // Every other instance gets a budget cut to straddle feasibility.
        if (seed % 2 == 0) {
            inst.constraint.value *= q(9, 10);
        }
        const EnergyBudgetProblem p{inst.fleet, inst.jobs, inst.constraint.value};
        const auto out = min_makespan_divisible(p);
        const auto closed = oracle::breakpoint_min_T_divisible(p);
        const auto grid = oracle::grid_min_T_divisible(p, 10000);
        ++n;
        if (out.ok() != closed.has_value() || (out.ok() && out.objective != *closed)) {
            ++closed_mismatch;
        }
        if (!out.ok()) {
            ++infeasible;
            grid_mismatch += grid.result.feasible ? 1 : 0;
            continue;
        }
        const Rational gap = grid.result.objective - out.objective;
        if (!grid.result.feasible || gap < 0 || gap > grid.step) {
            ++grid_mismatch;
        }
    }

    const Fleet f3({Machine{0, 10, 2, 5}, Machine{1, 8, 3, 4}, Machine{2, 6, 1, 2}});
    const auto e28 = min_makespan_divisible(EnergyBudgetProblem{f3, JobSpec::divisible(12), 28});
    const auto e24 = min_makespan_divisible(EnergyBudgetProblem{f3, JobSpec::divisible(12), 24});
    const auto g24 = oracle::grid_min_T_divisible(EnergyBudgetProblem{f3, JobSpec::divisible(12), 24});
    const bool f3_28 = e28.ok() && e28.objective == q(12, 11);
    Rational peak(0);
    bool f3_24 = !e24.ok() && e24.certificate && !g24.result.feasible;
    if (f3_24) {
        peak = parse_rational(e24.certificate->values.at("max_work"));
        f3_24 = peak >= q(113, 10) && peak <= q(114, 10) && g24.peak_work >= q(113, 10) && g24.peak_work <= q(114, 10);
    }
    return {closed_mismatch == 0 && grid_mismatch == 0 && f3_28 && f3_24,
            std::to_string(n) + " instances (" + std::to_string(infeasible) + " infeasible); closed-form mismatches " +
                std::to_string(closed_mismatch) + ", beyond one grid step " + std::to_string(grid_mismatch) +
                "; F3 E=28 T=" + (e28.ok() ? to_string(e28.objective) : "INFEASIBLE") + "; F3 E=24 " +
                (e24.ok() ? "feasible" : "INFEASIBLE") + " peak work " + fmt(peak) + " (grid " + fmt(g24.peak_work) + ")"};
}

// ---- 5 -------------------------------------------------------------------------------------

Verdict nondivisible_energy_bound() {
    const Rational eps = q(1, 10);
    const Rational bound = q(19, 12) + eps;
    std::size_t n = 0;
    std::size_t viol = 0;
    std::size_t missed = 0;
    Rational worst(0);
    for (std::uint64_t seed = 1; seed <= 500; ++seed) {
        io::GenSpec spec;
        spec.seed = 50000 + seed;
        spec.kind = ConstraintKind::EnergyBudget;
        spec.discrete = true;
        spec.machines = {1, 3};
        spec.jobs = {1, 7};
        spec.tightness = q(1 + static_cast<std::int64_t>(seed % 10), 10);
        const io::Instance inst = io::generate(spec).instance;
        const EnergyBudgetProblem p{inst.fleet, inst.jobs, inst.constraint.value};
        const auto out = min_makespan_nondivisible(p, eps);
        const auto opt = oracle::exact_assignment_enum(inst.fleet, inst.jobs.weights(), inst.constraint);
        ++n;
        if (!out.ok()) {
            missed += opt.feasible ? 1 : 0;
            continue;
        }
        const Rational r = out.objective / opt.objective;
        worst = std::max(worst, r);
        viol += r > bound ? 1 : 0;
    }
    const Fleet f3({Machine{0, 10, 2, 5}, Machine{1, 8, 3, 4}, Machine{2, 6, 1, 2}});
    const std::vector<std::int64_t> w{6, 4, 2};
    const auto ref = min_makespan_nondivisible(EnergyBudgetProblem{f3, JobSpec::discrete(w), 34}, eps);
    const auto ref_opt = oracle::exact_assignment_enum(f3, w, Constraint{ConstraintKind::EnergyBudget, 34});
    const bool ref_ok = ref.ok() && ref.objective == q(3, 2) && ref_opt.objective == q(6, 5);
    return {viol == 0 && missed == 0 && ref_ok,
            std::to_string(n) + " instances (m<=3, n<=7), eps=1/10: violations of 19/12+eps " + std::to_string(viol) +
                ", max T/OPT " + fmt(worst) + ", solver infeasible but oracle feasible " + std::to_string(missed) +
                "; F3 [6,4,2] E=34: T=" + (ref.ok() ? to_string(ref.objective) : "INFEASIBLE") +
                " vs OPT " + to_string(ref_opt.objective)};
}

// ---- 6 -------------------------------------------------------------------------------------

Verdict divisible_makespan_exactness() {
    std::size_t n = 0;
    std::size_t mismatches = 0;
    std::size_t continuous_gaps = 0;
    Rational largest_gap(0);
    for (std::uint64_t seed = 1; seed <= 500; ++seed) {
        io::GenSpec spec;
        spec.seed = 60000 + seed;
        spec.kind = ConstraintKind::MakespanBudget;
        spec.machines = {1, 6};
        spec.tightness = q(1 + static_cast<std::int64_t>(seed % 10), 10);
        const io::Instance inst = io::generate(spec).instance;
        const MakespanBudgetProblem p{inst.fleet, inst.jobs, inst.constraint.value};
        const auto out = min_energy_divisible(p);
        const auto opt = oracle::fixed_T_min_energy_divisible(p);
        ++n;
        if (out.ok() != opt.feasible || (out.ok() && out.objective != opt.objective)) {
            ++mismatches;
            continue;
        }
        const auto cont = oracle::continuous_min_energy_divisible(p);
        if (cont.feasible && cont.objective < out.objective) {
            ++continuous_gaps;
            largest_gap = std::max(largest_gap, out.objective / cont.objective);
        }
    }
    const Fleet f3({Machine{0, 10, 2, 5}, Machine{1, 8, 3, 4}, Machine{2, 6, 1, 2}});
    const auto ref = min_energy_divisible(MakespanBudgetProblem{f3, JobSpec::divisible(12), 2});
    const bool ref_ok = ref.ok() && ref.objective == q(142, 5);
    return {mismatches == 0 && ref_ok,
            std::to_string(n) + " instances; mismatches vs fixed-T oracle " + std::to_string(mismatches) +
                "; F3 T=2 E=" + (ref.ok() ? to_string(ref.objective) : "INFEASIBLE") +
                "; finishing-early gaps found by the continuous oracle " + std::to_string(continuous_gaps) +
                " (recorded, max ratio " + fmt(largest_gap) + ")"};
}

// ---- 7 -------------------------------------------------------------------------------------

Verdict nondivisible_makespan_bounds() {
    std::size_t n = 0;
    std::size_t count_viol = 0;
    std::size_t energy_viol = 0;
    std::size_t tight_viol = 0;
    std::size_t infeasible = 0;
    Rational worst(0);
    for (std::uint64_t seed = 1; seed <= 500; ++seed) {
        io::GenSpec spec;
        spec.seed = 70000 + seed;
        spec.kind = ConstraintKind::MakespanBudget;
        spec.discrete = true;
        spec.machines = {1, 4};
        spec.jobs = {1, 7};
        spec.tightness = q(1 + static_cast<std::int64_t>(seed % 10), 10);
        const io::Instance inst = io::generate(spec).instance;
        const MakespanBudgetProblem p{inst.fleet, inst.jobs, inst.constraint.value};
        const auto out = min_energy_nondivisible(p);
        ++n;
        if (!out.ok()) {
            ++infeasible;
            continue;
        }
        const auto opt = oracle::exact_assignment_enum(inst.fleet, inst.jobs.weights(), inst.constraint);
        const auto fewest = oracle::min_machine_count(inst.fleet, inst.jobs.weights(), p.makespan_budget);
        if (!fewest || out.schedule.working_set().size() > 2 * *fewest) {
            ++count_viol;
        }
        const Rational r = out.objective / opt.objective;
        worst = std::max(worst, r);
        energy_viol += r > efficiency_spread_bound(inst.fleet) ? 1 : 0;
        tight_viol += r > efficiency_spread_bound_tight(inst.fleet) ? 1 : 0;
    }
    const Fleet f3({Machine{0, 10, 2, 5}, Machine{1, 8, 3, 4}, Machine{2, 6, 1, 2}});
    const std::vector<std::int64_t> w{6, 4, 2};
    const auto ref = min_energy_nondivisible(MakespanBudgetProblem{f3, JobSpec::discrete(w), 2});
    const auto ref_opt = oracle::exact_assignment_enum(f3, w, Constraint{ConstraintKind::MakespanBudget, 2});
    const bool ref_ok = ref.ok() && ref.objective == q(142, 5) && ref_opt.objective == q(261, 10);
    std::ostringstream rate;
    rate.setf(std::ios::fixed);
    rate.precision(1);
    rate << 100.0 * static_cast<double>(tight_viol) / static_cast<double>(std::max<std::size_t>(1, n - infeasible));
    return {count_viol == 0 && energy_viol == 0 && infeasible == 0 && ref_ok,
            std::to_string(n) + " instances (m<=4, n<=7); working set > 2*fewest " + std::to_string(count_viol) +
                ", E > (1+eta_max/eta_min) OPT " + std::to_string(energy_viol) + ", max E/OPT " + fmt(worst) +
                "; tighter 1+eta_max/(2 eta_min) exceeded " + std::to_string(tight_viol) + " (" + rate.str() +
                "%, informational); F3 [6,4,2] T=2: E=" + (ref.ok() ? to_string(ref.objective) : "INFEASIBLE") +
                " vs OPT " + to_string(ref_opt.objective)};
}

// ---- 8 -------------------------------------------------------------------------------------

Verdict model_cross_check() {
    std::mt19937_64 rng(8008);
    std::size_t energy_mismatch = 0;
    for (int trial = 0; trial < 200; ++trial) {
        io::GenSpec spec;
        spec.seed = 80000 + static_cast<std::uint64_t>(trial);
        spec.machines = {1, 8};
        const Fleet fleet = io::generate(spec).instance.fleet;
        const std::int64_t den = 1 + static_cast<std::int64_t>(rng() % 20);
        std::vector<Rational> t(fleet.size());
        for (auto& x : t) {
            x = make_rational(static_cast<std::int64_t>(rng() % 50), den);
        }
        t[rng() % t.size()] += make_rational(1, den);  // at least one busy machine
        const Schedule s = schedule_from_times(fleet, t);
        const auto slices = (makespan(s) * den).convert_to<std::int64_t>();
        if (oracle::step_simulation_energy(s, fleet, slices) != energy(s, fleet)) {
            ++energy_mismatch;
        }
    }
    std::size_t outcomes = 0;
    std::size_t over = 0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        io::GenSpec spec;
        spec.seed = 81000 + seed;
        spec.machines = {1, 12};
        spec.tightness = q(1 + static_cast<std::int64_t>(seed % 10), 10);
        const io::Instance inst = io::generate(spec).instance;
        const PowerProblem p{inst.fleet, inst.jobs.total_work(), inst.constraint.value};
        for (const SolveOutcome& out : {min_makespan_under_power(p, q(1, 4)), min_energy_under_power(p)}) {
            if (out.ok()) {
                ++outcomes;
                over += Rational(power_draw(out.schedule.working_set(), inst.fleet)) > p.power_cap ? 1 : 0;
            }
        }
    }
    return {energy_mismatch == 0 && over == 0,
            "200 schedules: energy vs aligned step simulation mismatches " + std::to_string(energy_mismatch) + "; " +
                std::to_string(outcomes) + " power-capped outcomes over the cap " + std::to_string(over)};
}

// ---- 9 -------------------------------------------------------------------------------------

int run_cli(const std::string& args) {
    const std::string cmd = "\"" + cli_path + "\" " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / ("schedcon-acceptance-" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return dir;
}

Verdict cli_pipeline() {
    const fs::path dir = scratch_dir();
    struct Variant {
        const char* gen;
        const char* solve;
    };
    const Variant variants[] = {
        {"--constraint power", "--objective makespan"},
        {"--constraint power", "--objective energy"},
        {"--constraint energy", ""},
        {"--constraint energy --discrete", ""},
        {"--constraint makespan", ""},
        {"--constraint makespan --discrete", ""},
    };
    std::size_t runs = 0;
    std::size_t failures = 0;
    std::string first_failure;
    for (std::size_t i = 0; i < 100; ++i) {
        // Power instances alternate between both objectives; the other four variants get 20 each.
        const std::size_t group = i / 20;
        const Variant& v = group == 0 ? variants[i % 2] : variants[group + 1];
        const fs::path inst = dir / ("i" + std::to_string(i) + ".json");
        const fs::path out = dir / ("o" + std::to_string(i) + ".json");
        const std::string seed = std::to_string(90000 + i);
        ++runs;
        const int g = run_cli("gen --seed " + seed + " " + v.gen + " --output \"" + inst.string() + "\"");
        const int s = g == 0 ? run_cli("solve --instance \"" + inst.string() + "\" " + v.solve + " --output \"" +
                                       out.string() + "\"")
                             : -1;
        const int c = s == 0 ? run_cli("verify --instance \"" + inst.string() + "\" --schedule \"" + out.string() + "\"")
                             : -1;
        if (g != 0 || s != 0 || c != 0) {
            ++failures;
            if (first_failure.empty()) {
                first_failure = " first failure: seed " + seed + " " + v.gen + " (gen " + std::to_string(g) +
                                ", solve " + std::to_string(s) + ", verify " + std::to_string(c) + ")";
            }
        }
    }
    // Fixed reference checks on exit codes.
    const int ref = run_cli("solve --instance \"" + (fixtures / "f3_power16.json").string() +
                            "\" --objective makespan --epsilon 1/4");
    const int overrun = run_cli("verify --instance \"" + (fixtures / "f3_jobs_makespan2.json").string() +
                                "\" --schedule \"" + (fixtures / "f3_jobs_bad_schedule.json").string() + "\"");
    const int infeasible = run_cli("solve --instance \"" + (fixtures / "f3_energy24.json").string() + "\"");
    fs::remove_all(dir);
    return {failures == 0 && ref == 0 && overrun == 1 && infeasible == 2,
            std::to_string(runs) + " gen->solve->verify runs over five problem variants, failures " +
                std::to_string(failures) + first_failure + "; exit codes: reference solve " + std::to_string(ref) +
                ", overrun verify " + std::to_string(overrun) + ", infeasible solve " + std::to_string(infeasible)};
}

Verdict cli_bench_zero_violations() {
    const fs::path dir = scratch_dir();
    const fs::path report = dir / "bench.json";
    const int rc = run_cli("bench --count 100 --epsilon 1/2 --epsilon 1/4 --epsilon 1/10 --report \"" +
                           report.string() + "\"");
    std::ifstream in(report);
    Verdict v;
    if (rc != 0 || !in) {
        fs::remove_all(dir);
        return {false, "bench exited " + std::to_string(rc)};
    }
    const auto rows = nlohmann::json::parse(in);
    bool all_zero = true;
    std::ostringstream os;
    for (const auto& r : rows) {
        const auto viol = r.at("violations").get<std::size_t>();
        all_zero = all_zero && viol == 0;
        os << " " << r.at("problem").get<std::string>();
        if (!r.at("epsilon").is_null()) {
            os << "(" << r.at("epsilon").get<std::string>() << ")";
        }
        os << "=" << viol;
    }
    fs::remove_all(dir);
    return {all_zero, "violations per row:" + os.str()};
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 3) {
        std::cerr << "usage: acceptance <schedcon-cli> <fixtures-dir>\n";
        return 2;
    }
    cli_path = argv[1];
    fixtures = argv[2];

    const std::vector<Criterion> criteria = {
        {"1", "knapsack DP exactness", 60, false, knapsack_dp_exactness},
        {"2", "FPTAS speed and makespan guarantee", 120, false, fptas_guarantee},
        {"3a", "energy under power cap within factor 2", 60, true, energy_factor_two},
        {"3b", "worst-case pair ratios >= 1.5", 60, true, worst_case_tightness},
        {"4", "divisible energy-budget exactness", 60, false, divisible_energy_exactness},
        {"5", "non-divisible energy-budget 19/12+eps bound", 600, true, nondivisible_energy_bound},
        {"6", "divisible makespan-budget exactness", 30, false, divisible_makespan_exactness},
        {"7", "non-divisible makespan-budget bounds", 600, true, nondivisible_makespan_bounds},
        {"8", "model cross-check", 10, false, model_cross_check},
        {"9a", "CLI gen -> solve -> verify pipeline", 300, false, cli_pipeline},
        {"9b", "CLI bench zero-violation columns", 300, true, cli_bench_zero_violations},
    };

    int unexpected = 0;
    int passed = 0;
    int known = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs < c.time_limit_s;
        const bool ok = v.pass && in_time;
        std::string tag;
        if (ok) {
            tag = c.known_failure ? "XPASS" : "PASS";
            unexpected += c.known_failure ? 1 : 0;
            passed += c.known_failure ? 0 : 1;
        } else {
            tag = c.known_failure ? "FAIL (known)" : "FAIL";
            unexpected += c.known_failure ? 0 : 1;
            known += c.known_failure ? 1 : 0;
        }
        char timing[64];
        std::snprintf(timing, sizeof timing, "%.1fs / %.0fs", secs, c.time_limit_s);
        std::cout << tag << "  [" << c.id << "] " << c.title << ": " << v.detail << " (" << timing
                  << (in_time ? "" : ", over time limit") << ")\n"
                  << std::flush;
    }
    std::cout << "summary: " << passed << " pass, " << known << " known failures, " << unexpected << " unexpected\n";
    return unexpected == 0 ? 0 : 1;
}
