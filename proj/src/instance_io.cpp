#include "schedcon/instance_io.hpp"

#include <algorithm>
#include <random>
#include <set>

#include <json.hpp>

#include "schedcon/energy_budget.hpp"
#include "schedcon/kernels.hpp"
#include "schedcon/makespan_budget.hpp"

namespace schedcon::io {

using nlohmann::json;

bool Instance::operator==(const Instance& other) const {
    if (fleet.size() != other.fleet.size() || fleet.allows_mu_eq_gamma() != other.fleet.allows_mu_eq_gamma()) {
        return false;
    }
    for (std::size_t i = 0; i < fleet.size(); ++i) {
        const Machine& a = fleet[i];
        const Machine& b = other.fleet[i];
        if (a.working_power != b.working_power || a.idle_power != b.idle_power || a.speed != b.speed) {
            return false;
        }
    }
    return jobs == other.jobs && constraint == other.constraint;
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw IoError((where.empty() ? std::string("/") : where) + ": " + what);
}

const json& member(const json& obj, const std::string& where, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
        fail(where, std::string("missing field '") + key + "'");
    }
    return *it;
}

void only_fields(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) {
        fail(where, "expected an object");
    }
    for (const auto& [key, value] : obj.items()) {
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
            fail(where, "unknown field '" + key + "'");
        }
    }
}

std::int64_t as_int(const json& v, const std::string& where) {
    if (!v.is_number_integer()) {
        fail(where, "expected an integer");
    }
    return v.get<std::int64_t>();
}

Rational as_rational(const json& v, const std::string& where) {
    if (!v.is_string()) {
        fail(where, "expected a rational string such as \"3\" or \"7/2\"");
    }
    try {
        return parse_rational(v.get<std::string>());
    } catch (const RationalParseError& e) {
        fail(where, e.what());
    }
}

ConstraintKind parse_kind(const json& v, const std::string& where) {
    if (!v.is_string()) {
        fail(where, "expected a string");
    }
    const std::string s = v.get<std::string>();
    if (s == "power") {
        return ConstraintKind::PowerCap;
    }
    if (s == "energy") {
        return ConstraintKind::EnergyBudget;
    }
    if (s == "makespan") {
        return ConstraintKind::MakespanBudget;
    }
    fail(where, "unknown constraint kind '" + s + "'");
}

json parse_json(std::string_view bytes) {
    try {
        return json::parse(bytes.begin(), bytes.end());
    } catch (const json::parse_error& e) {
        throw IoError(std::string("malformed JSON: ") + e.what());
    }
}

std::string dump(const json& j) {
    return j.dump(2) + "\n";
}

json schedule_json(const Schedule& s) {
    json machines = json::array();
    for (const auto& a : s.assignments) {
        json m = {{"id", a.machine}, {"work", to_string(a.work)}, {"time", to_string(a.time)}};
        if (s.discrete) {
            m["jobs"] = a.jobs;
        }
        machines.push_back(std::move(m));
    }
    return json{{"discrete", s.discrete},
                {"machines", std::move(machines)},
                {"working_set", s.working_set()},
                {"makespan", to_string(makespan(s))}};
}

json optional_rational(const std::optional<Rational>& r) {
    return r ? json(to_string(*r)) : json(nullptr);
}

}  // namespace

Instance parse_instance(std::string_view bytes) {
    const json root = parse_json(bytes);
    only_fields(root, "", {"version", "machines", "jobs", "constraint", "allow_mu_eq_gamma"});
    if (as_int(member(root, "", "version"), "/version") != kFormatVersion) {
        fail("/version", "unsupported version (expected " + std::to_string(kFormatVersion) + ")");
    }
    bool allow_eq = false;
    if (root.contains("allow_mu_eq_gamma")) {
        if (!root["allow_mu_eq_gamma"].is_boolean()) {
            fail("/allow_mu_eq_gamma", "expected a boolean");
        }
        allow_eq = root["allow_mu_eq_gamma"].get<bool>();
    }

    const json& machines = member(root, "", "machines");
    if (!machines.is_array()) {
        fail("/machines", "expected an array");
    }
    std::vector<Machine> fleet;
    std::set<std::int64_t> ids;
    for (std::size_t i = 0; i < machines.size(); ++i) {
        const std::string where = "/machines/" + std::to_string(i);
        const json& m = machines[i];
        only_fields(m, where, {"id", "working_power", "idle_power", "speed"});
        Machine c;
        const std::int64_t id = as_int(member(m, where, "id"), where + "/id");
        if (id < 0 || !ids.insert(id).second) {
            fail(where + "/id", "machine id " + std::to_string(id) + " is negative or duplicated");
        }
        c.id = static_cast<MachineId>(id);
        c.working_power = as_int(member(m, where, "working_power"), where + "/working_power");
        c.idle_power = as_int(member(m, where, "idle_power"), where + "/idle_power");
        c.speed = as_int(member(m, where, "speed"), where + "/speed");
        // Per-machine checks here so the message carries the position as well as the id.
        try {
            Fleet probe({Machine{0, c.working_power, c.idle_power, c.speed}}, allow_eq);
        } catch (const ModelError& e) {
            std::string msg = e.what();
            msg.replace(0, std::string("machine 0").size(), "machine " + std::to_string(id));
            fail(where, msg);
        }
        fleet.push_back(c);
    }

    Instance inst;
    try {
        inst.fleet = Fleet(std::move(fleet), allow_eq);
    } catch (const ModelError& e) {
        fail("/machines", e.what());
    }

    const json& jobs = member(root, "", "jobs");
    only_fields(jobs, "/jobs", {"divisible", "discrete"});
    if (jobs.size() != 1) {
        fail("/jobs", "exactly one of 'divisible' or 'discrete' is required");
    }
    if (jobs.contains("divisible")) {
        const json& d = jobs["divisible"];
        only_fields(d, "/jobs/divisible", {"total_work"});
        const Rational w = as_rational(member(d, "/jobs/divisible", "total_work"), "/jobs/divisible/total_work");
        if (w <= 0) {
            fail("/jobs/divisible/total_work", "total work must be positive");
        }
        inst.jobs = JobSpec::divisible(w);
    } else {
        const json& d = jobs["discrete"];
        only_fields(d, "/jobs/discrete", {"weights"});
        const json& ws = member(d, "/jobs/discrete", "weights");
        if (!ws.is_array() || ws.empty()) {
            fail("/jobs/discrete/weights", "expected a non-empty array");
        }
        std::vector<std::int64_t> weights;
        for (std::size_t j = 0; j < ws.size(); ++j) {
            const std::string where = "/jobs/discrete/weights/" + std::to_string(j);
            const std::int64_t w = as_int(ws[j], where);
            if (w < 1) {
                fail(where, "job weight must be >= 1");
            }
            weights.push_back(w);
        }
        inst.jobs = JobSpec::discrete(std::move(weights));
    }

    const json& c = member(root, "", "constraint");
    only_fields(c, "/constraint", {"kind", "value"});
    inst.constraint.kind = parse_kind(member(c, "/constraint", "kind"), "/constraint/kind");
    inst.constraint.value = as_rational(member(c, "/constraint", "value"), "/constraint/value");
    if (inst.constraint.value <= 0) {
        fail("/constraint/value", "constraint value must be positive");
    }
    return inst;
}

std::string emit_instance(const Instance& instance) {
    json machines = json::array();
    for (const Machine& c : instance.fleet.machines()) {
        machines.push_back(
            {{"id", c.id}, {"working_power", c.working_power}, {"idle_power", c.idle_power}, {"speed", c.speed}});
    }
    json jobs;
    if (instance.jobs.is_divisible()) {
        jobs["divisible"] = {{"total_work", to_string(instance.jobs.total_work())}};
    } else {
        const auto w = instance.jobs.weights();
        jobs["discrete"] = {{"weights", std::vector<std::int64_t>(w.begin(), w.end())}};
    }
    json root = {{"version", kFormatVersion},
                 {"machines", std::move(machines)},
                 {"jobs", std::move(jobs)},
                 {"constraint", {{"kind", to_string(instance.constraint.kind)},
                                 {"value", to_string(instance.constraint.value)}}}};
    if (instance.fleet.allows_mu_eq_gamma()) {
        root["allow_mu_eq_gamma"] = true;
    }
    return dump(root);
}

Schedule parse_schedule(std::string_view bytes) {
    const json root = parse_json(bytes);
    if (!root.is_object()) {
        fail("", "expected an object");
    }
    std::string base;
    const json* node = &root;
    if (root.contains("schedule")) {
        node = &root["schedule"];
        base = "/schedule";
    }
    if (!node->is_object()) {
        fail(base, "expected a schedule object");
    }
    Schedule s;
    if (node->contains("discrete")) {
        if (!(*node)["discrete"].is_boolean()) {
            fail(base + "/discrete", "expected a boolean");
        }
        s.discrete = (*node)["discrete"].get<bool>();
    }
    const json& machines = member(*node, base, "machines");
    if (!machines.is_array()) {
        fail(base + "/machines", "expected an array");
    }
    for (std::size_t i = 0; i < machines.size(); ++i) {
        const std::string where = base + "/machines/" + std::to_string(i);
        const json& m = machines[i];
        only_fields(m, where, {"id", "work", "time", "jobs"});
        Assignment a;
        const std::int64_t id = as_int(member(m, where, "id"), where + "/id");
        if (id < 0) {
            fail(where + "/id", "negative machine id");
        }
        a.machine = static_cast<MachineId>(id);
        a.work = as_rational(member(m, where, "work"), where + "/work");
        a.time = as_rational(member(m, where, "time"), where + "/time");
        if (m.contains("jobs")) {
            const json& js = m["jobs"];
            if (!js.is_array()) {
                fail(where + "/jobs", "expected an array");
            }
            for (std::size_t k = 0; k < js.size(); ++k) {
                const std::int64_t j = as_int(js[k], where + "/jobs/" + std::to_string(k));
                if (j < 0) {
                    fail(where + "/jobs/" + std::to_string(k), "negative job index");
                }
                a.jobs.push_back(static_cast<JobIndex>(j));
            }
        }
        s.assignments.push_back(std::move(a));
    }
    return s;
}

std::string emit_schedule(const Schedule& schedule) {
    return dump(schedule_json(schedule));
}

std::string emit_outcome(const SolveOutcome& outcome, const Fleet* fleet) {
    json root = {{"status", outcome.ok() ? "ok" : "infeasible"},
                 {"problem", outcome.problem},
                 {"objective_kind", to_string(outcome.objective_kind)}};
    if (!outcome.ok()) {
        json cert = {{"reason", outcome.certificate ? outcome.certificate->reason : std::string("unspecified")}};
        if (outcome.certificate) {
            for (const auto& [k, v] : outcome.certificate->values) {
                cert[k] = v;
            }
        }
        root["certificate"] = std::move(cert);
        return dump(root);
    }
    json sched = schedule_json(outcome.schedule);
    if (fleet != nullptr) {
        sched["energy"] = to_string(energy(outcome.schedule, *fleet));
    }
    root["schedule"] = std::move(sched);
    root["objective"] = to_string(outcome.objective);
    root["guarantee"] = {{"bound_ratio", optional_rational(outcome.guarantee.bound_ratio)},
                         {"epsilon", optional_rational(outcome.guarantee.epsilon)},
                         {"exact", outcome.guarantee.exact}};
    root["diagnostics"] = outcome.diagnostics;
    return dump(root);
}

std::string emit_oracle(const oracle::OracleResult& result, ObjectiveKind objective) {
    json root = {{"status", result.feasible ? "ok" : "infeasible"},
                 {"method", oracle::to_string(result.method)},
                 {"objective_kind", to_string(objective)},
                 {"search_space_size", result.search_space_size}};
    if (result.feasible) {
        root["objective"] = to_string(result.objective);
        root["witness"] = schedule_json(result.witness);
    }
    return dump(root);
}

namespace {

class Draw {
public:
    explicit Draw(std::uint64_t seed) : rng_(seed) {}

    // Modulo reduction keeps the stream identical across standard libraries.
    std::int64_t operator()(IntRange r) {
        const auto span = static_cast<std::uint64_t>(r.hi - r.lo) + 1;
        return r.lo + static_cast<std::int64_t>(rng_() % span);
    }

private:
    std::mt19937_64 rng_;
};

void check_range(IntRange r, const char* name, std::int64_t min_lo) {
    if (r.lo > r.hi || r.lo < min_lo) {
        throw GenError(std::string("invalid range for ") + name + ": [" + std::to_string(r.lo) + ", " +
                       std::to_string(r.hi) + "]");
    }
}

std::optional<Rational> budget_window(const Fleet& fleet, const JobSpec& jobs, ConstraintKind kind,
                                      const Rational& tau) {
    const Rational w = jobs.total_work();
    Rational lo;
    Rational hi;
    switch (kind) {
        case ConstraintKind::PowerCap: {
            const Rational floor_draw(fleet.gamma_total() + fleet.min_marginal_power());
            const Rational top(fleet.total_working_power());
            if (top <= floor_draw + 1) {
                return std::nullopt;
            }
            // Integer cap strictly inside (floor_draw, top), so tightness 1 lands one watt below vacuous.
            Rational p(ceil(floor_draw + tau * (top - floor_draw)));
            p = std::clamp(p, floor_draw + 1, top - 1);
            return p;
        }
        case ConstraintKind::EnergyBudget: {
            if (jobs.is_divisible()) {
                // Cheapest energy for W is W divided by the best work-per-joule of any efficiency prefix.
                const Rational per_joule = max_work_within_budget(fleet, Rational(1));
                lo = w / per_joule;
                hi = Rational(fleet.gamma_total() + [&] {
                         std::int64_t d = 0;
                         for (const Machine& c : fleet.machines()) {
                             d += c.marginal_power();
                         }
                         return d;
                     }()) *
                     w / fleet.total_speed();
            } else {
                std::vector<Machine> sorted;
                for (MachineId id : fleet.by_efficiency()) {
                    sorted.push_back(fleet[id]);
                }
                for (std::size_t r = 1; r <= sorted.size(); ++r) {
                    const Schedule s =
                        complete_schedule(kernels::lpt_assign(jobs.weights(), std::span(sorted).first(r)), fleet);
                    const Rational e = energy(s, fleet);
                    lo = r == 1 ? e : std::min(lo, e);
                    hi = r == 1 ? e : std::max(hi, e);
                }
            }
            break;
        }
        case ConstraintKind::MakespanBudget: {
            std::int64_t v_min = fleet[0].speed;
            for (const Machine& c : fleet.machines()) {
                v_min = std::min(v_min, c.speed);
            }
            hi = w / v_min;
            if (jobs.is_divisible()) {
                lo = w / fleet.total_speed();
            } else {
                // Smallest point on a ladder above the all-machine LPT makespan where first-fit succeeds.
                std::vector<Machine> by_speed(fleet.machines().begin(), fleet.machines().end());
                std::stable_sort(by_speed.begin(), by_speed.end(),
                                 [](const Machine& a, const Machine& b) { return a.speed > b.speed; });
                const Rational lpt = makespan(kernels::lpt_assign(jobs.weights(), by_speed));
                lo = hi;
                for (int k = 0; k <= 40; ++k) {
                    const Rational t = lpt * Rational(20 + k, 20);
                    if (t >= hi) {
                        break;
                    }
                    if (min_energy_nondivisible(MakespanBudgetProblem{fleet, jobs, t}).ok()) {
                        lo = t;
                        break;
                    }
                }
            }
            break;
        }
    }
    if (hi < lo) {
        hi = lo;
    }
    return lo + tau * (hi - lo);
}

}  // namespace

Generated generate(const GenSpec& spec) {
    check_range(spec.machines, "machines", 1);
    check_range(spec.jobs, "jobs", 1);
    check_range(spec.speed, "speed", 1);
    check_range(spec.marginal_power, "marginal_power", 1);
    check_range(spec.idle_power, "idle_power", 0);
    check_range(spec.weight, "weight", 1);
    check_range(spec.total_work, "total_work", 1);
    if (!(spec.tightness > 0 && spec.tightness <= 1)) {
        throw GenError("tightness must lie in (0, 1]");
    }
    if (spec.discrete && spec.kind == ConstraintKind::PowerCap) {
        throw GenError("non-divisible jobs under a power cap are not supported");
    }

    Draw draw(spec.seed);
    for (int attempt = 1; attempt <= spec.max_attempts; ++attempt) {
        const auto m = static_cast<std::size_t>(draw(spec.machines));
        std::vector<Machine> machines;
        for (std::size_t i = 0; i < m; ++i) {
            Machine c;
            c.id = i;
            c.speed = draw(spec.speed);
            const std::int64_t d = draw(spec.marginal_power);
            c.idle_power = draw(spec.idle_power);
            c.working_power = c.idle_power + d;
            machines.push_back(c);
        }
        Instance inst;
        inst.fleet = Fleet(std::move(machines));
        if (spec.discrete) {
            std::vector<std::int64_t> weights(static_cast<std::size_t>(draw(spec.jobs)));
            for (auto& w : weights) {
                w = draw(spec.weight);
            }
            inst.jobs = JobSpec::discrete(std::move(weights));
        } else {
            inst.jobs = JobSpec::divisible(Rational(draw(spec.total_work)));
        }
        const auto value = budget_window(inst.fleet, inst.jobs, spec.kind, spec.tightness);
        if (!value || *value <= 0) {
            continue;
        }
        inst.constraint = Constraint{spec.kind, *value};
        if (validate_instance(inst.fleet, inst.jobs, inst.constraint).ok()) {
            return Generated{std::move(inst), attempt};
        }
    }
    throw GenError("no valid instance after " + std::to_string(spec.max_attempts) + " attempts (seed " +
                   std::to_string(spec.seed) + ")");
}

Instance two_machine_worst_case(std::int64_t k, std::int64_t idle_total) {
    if (k < 1 || idle_total < 0) {
        throw GenError("worst-case family needs k >= 1 and non-negative idle power");
    }
    const std::int64_t g0 = idle_total / 2;
    const std::int64_t g1 = idle_total - g0;
    Instance inst;
    inst.fleet = Fleet({Machine{0, g0 + k, g0, k * k}, Machine{1, g1 + k, g1, k * k}});
    inst.jobs = JobSpec::divisible(Rational(k * k));
    inst.constraint = Constraint{ConstraintKind::PowerCap, Rational(idle_total + 2 * k - 1)};
    return inst;
}

}  // namespace schedcon::io
