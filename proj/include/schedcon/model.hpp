#pragma once

// Machines, fleets, jobs, constraints and schedules, with exact evaluation of
// makespan (max busy time) and system energy (marginal work energy plus the
// fleet-wide idle draw over the whole makespan).

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "schedcon/rational.hpp"

namespace schedcon {

using MachineId = std::size_t;
using JobIndex = std::size_t;

/// Raised for malformed inputs: invariant violations, unknown ids, bad arguments.
class ModelError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Machine {
    MachineId id = 0;
    std::int64_t working_power = 1;  // watts
    std::int64_t idle_power = 0;     // watts
    std::int64_t speed = 1;          // work units per second

    /// Extra draw incurred by running instead of idling.
    std::int64_t marginal_power() const { return working_power - idle_power; }
    /// Work per joule of marginal energy. Requires marginal_power() > 0.
    Rational efficiency() const;
    /// idle_power / working_power.
    Rational power_ratio() const;
};

class Fleet {
public:
    Fleet() = default;
    /// Machines may be listed in any order; ids must be exactly 0..m-1.
    /// With allow_mu_eq_gamma, idle_power == working_power is accepted.
    explicit Fleet(std::vector<Machine> machines, bool allow_mu_eq_gamma = false);

    std::size_t size() const { return machines_.size(); }
    bool empty() const { return machines_.empty(); }
    const Machine& operator[](MachineId id) const { return machines_.at(id); }
    std::span<const Machine> machines() const { return machines_; }

    std::int64_t gamma_total() const { return gamma_total_; }
    std::int64_t total_working_power() const { return total_working_power_; }
    std::int64_t max_speed() const { return max_speed_; }
    std::int64_t min_marginal_power() const { return min_marginal_; }
    std::int64_t total_speed() const { return total_speed_; }
    bool allows_mu_eq_gamma() const { return allow_mu_eq_gamma_; }

    /// Machine ids sorted by efficiency, most efficient first; equal efficiency keeps lower id first.
    std::vector<MachineId> by_efficiency() const;

private:
    std::vector<Machine> machines_;
    std::int64_t gamma_total_ = 0;
    std::int64_t total_working_power_ = 0;
    std::int64_t max_speed_ = 0;
    std::int64_t min_marginal_ = 0;
    std::int64_t total_speed_ = 0;
    bool allow_mu_eq_gamma_ = false;
};

struct DivisibleWork {
    Rational total;
};

struct DiscreteJobs {
    std::vector<std::int64_t> weights;
};

class JobSpec {
public:
    static JobSpec divisible(Rational total);
    static JobSpec discrete(std::vector<std::int64_t> weights);

    bool is_divisible() const { return std::holds_alternative<DivisibleWork>(value_); }
    bool is_discrete() const { return !is_divisible(); }
    /// W: the divisible total, or the sum of the discrete weights.
    Rational total_work() const;
    /// Empty for divisible jobs.
    std::span<const std::int64_t> weights() const;

    bool operator==(const JobSpec&) const;

private:
    using Value = std::variant<DivisibleWork, DiscreteJobs>;
    explicit JobSpec(Value v) : value_(std::move(v)) {}
    Value value_;
};

enum class ConstraintKind { PowerCap, EnergyBudget, MakespanBudget };

std::string to_string(ConstraintKind kind);

struct Constraint {
    ConstraintKind kind = ConstraintKind::PowerCap;
    Rational value;  // watts / joules / seconds

    bool operator==(const Constraint&) const = default;
};

struct Assignment {
    MachineId machine = 0;
    Rational work;  // work units
    Rational time;  // seconds of busy time
    std::vector<JobIndex> jobs;

    bool operator==(const Assignment&) const = default;
};

struct Schedule {
    std::vector<Assignment> assignments;
    bool discrete = false;

    /// Machines with positive busy time, ascending.
    std::vector<MachineId> working_set() const;
    /// The assignment for a machine, if present.
    const Assignment* find(MachineId id) const;

    bool operator==(const Schedule&) const = default;
};

/// One record per fleet machine, all idle.
Schedule idle_schedule(const Fleet& fleet, bool discrete = false);

/// Builds a schedule from per-machine busy times (indexed by id, size m), work = time * speed.
Schedule schedule_from_times(const Fleet& fleet, std::span<const Rational> times);

/// Builds a discrete schedule from a job -> machine map.
Schedule schedule_from_placement(const Fleet& fleet, std::span<const std::int64_t> weights,
                                 std::span<const MachineId> machine_of_job);

/// Adds idle records for absent machines and orders records by id.
Schedule complete_schedule(Schedule schedule, const Fleet& fleet);

enum class SolveStatus { Ok, Infeasible };

struct Guarantee {
    std::optional<Rational> bound_ratio;
    std::optional<Rational> epsilon;
    bool exact = false;
};

struct Certificate {
    std::string reason;
    std::map<std::string, std::string> values;
};

enum class ObjectiveKind { Makespan, Energy };

std::string to_string(ObjectiveKind kind);

struct SolveOutcome {
    SolveStatus status = SolveStatus::Ok;
    std::string problem;
    ObjectiveKind objective_kind = ObjectiveKind::Makespan;
    Schedule schedule;
    Rational objective;
    Guarantee guarantee;
    std::map<std::string, std::string> diagnostics;
    std::optional<Certificate> certificate;

    bool ok() const { return status == SolveStatus::Ok; }
};

SolveOutcome infeasible_outcome(std::string problem, ObjectiveKind kind, Certificate certificate);

/// Max busy time over all records; 0 for an all-idle or empty schedule.
Rational makespan(const Schedule& schedule);

/// Sum of marginal_power * time over machines, plus gamma_total * makespan once.
Rational energy(const Schedule& schedule, const Fleet& fleet);

/// Instantaneous draw when exactly `working_set` runs and every other machine idles.
std::int64_t power_draw(std::span<const MachineId> working_set, const Fleet& fleet);

enum class Severity { Ok, Warning, Error };

struct Finding {
    Severity severity = Severity::Ok;
    std::string code;
    std::string message;
};

struct ValidationReport {
    std::vector<Finding> findings;

    bool ok() const;
    bool has(const std::string& code) const;
    Severity worst() const;
};

/// Never throws; all problems are reported as findings.
ValidationReport validate_instance(const Fleet& fleet, const JobSpec& jobs, const Constraint& constraint);

struct Violation {
    std::string code;
    std::string message;
};

struct FeasibilityReport {
    std::vector<Violation> violations;

    bool pass() const { return violations.empty(); }
    bool has(const std::string& code) const;
};

/// Independent checker: work/time consistency, conservation, job partition, and the constraint.
FeasibilityReport verify_schedule(const Schedule& schedule, const Fleet& fleet, const JobSpec& jobs,
                                  const Constraint& constraint);

}  // namespace schedcon
