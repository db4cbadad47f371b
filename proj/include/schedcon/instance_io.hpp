#pragma once

// JSON formats for instances, schedules and outcomes, and seeded instance generation.
//
// Rationals are always strings ("p" or "p/q", lowest terms). Emission is canonical: keys are
// sorted and the same value always produces the same bytes.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "schedcon/model.hpp"
#include "schedcon/oracle.hpp"

namespace schedcon::io {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Instance {
    Fleet fleet;
    JobSpec jobs = JobSpec::divisible(Rational(1));
    Constraint constraint;

    bool operator==(const Instance& other) const;
};

inline constexpr int kFormatVersion = 1;

/// Strict parse: unknown fields, wrong types and model invariant violations are errors whose
/// message starts with the JSON pointer of the offending value.
Instance parse_instance(std::string_view bytes);
std::string emit_instance(const Instance& instance);

/// Accepts a bare schedule object or any object with a "schedule" member (e.g. an outcome).
Schedule parse_schedule(std::string_view bytes);
std::string emit_schedule(const Schedule& schedule);

/// With a fleet, the schedule block also carries its energy.
std::string emit_outcome(const SolveOutcome& outcome, const Fleet* fleet = nullptr);

std::string emit_oracle(const oracle::OracleResult& result, ObjectiveKind objective);

struct IntRange {
    std::int64_t lo = 1;
    std::int64_t hi = 1;
};

struct GenSpec {
    std::uint64_t seed = 42;
    IntRange machines{2, 6};
    bool discrete = false;
    IntRange jobs{1, 7};
    IntRange speed{1, 50};
    IntRange marginal_power{1, 50};
    IntRange idle_power{0, 50};
    IntRange weight{1, 100};
    IntRange total_work{1, 100};
    ConstraintKind kind = ConstraintKind::PowerCap;
    /// In (0, 1]: 1 gives a vacuous budget, values near 0 sit on the feasibility edge.
    Rational tightness{1, 2};
    int max_attempts = 100;
};

struct Generated {
    Instance instance;
    int attempts = 0;
};

class GenError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Deterministic for a given spec. Instances that fail validation are redrawn up to max_attempts.
Generated generate(const GenSpec& spec);

/// Two machines with marginal power k and speed k^2 each, total idle power `idle_total`, and a
/// cap one watt short of running both. Work W = k^2.
Instance two_machine_worst_case(std::int64_t k, std::int64_t idle_total);

}  // namespace schedcon::io
