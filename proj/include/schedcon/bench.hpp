#pragma once

// Solver-vs-oracle ratio tables over seeded instance families.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "schedcon/instance_io.hpp"
#include "schedcon/power_solvers.hpp"

namespace schedcon::bench {

enum class Problem {
    PowerMakespan,
    PowerEnergy,
    EnergyMakespanDivisible,
    EnergyMakespanDiscrete,
    MakespanEnergyDivisible,
    MakespanEnergyDiscrete,
};

std::string to_string(Problem problem);
bool uses_epsilon(Problem problem);

struct Config {
    /// Instance i of every row is generated from seed base.seed + i. kind and discrete are
    /// overwritten per problem; the ranges are used as given.
    io::GenSpec base;
    std::vector<Problem> problems;
    std::vector<Rational> epsilons{Rational(1) / 4};
    std::size_t count = 100;
    GreedyMode mode = GreedyMode::Corrected;
    /// 0 means SCHEDCON_THREADS, falling back to the hardware concurrency.
    unsigned threads = 0;
};

struct Row {
    Problem problem = Problem::PowerMakespan;
    std::optional<Rational> epsilon;
    std::size_t instances = 0;
    std::size_t verified = 0;
    std::size_t unverified = 0;     // oracle search space beyond its limit
    std::size_t infeasible = 0;     // solver and oracle both infeasible
    std::size_t missed = 0;         // solver infeasible, oracle feasible
    std::size_t gen_failures = 0;
    double mean_ratio = 0;
    Rational max_ratio;
    /// Largest proven bound seen in the row (it depends on the fleet for the spread bound).
    Rational bound;
    std::string bound_label;
    std::size_t violations = 0;
    /// Makespan-budget discrete only: the tighter spread bound and the working-set count check.
    std::optional<std::size_t> tight_violations;
    std::optional<std::size_t> working_set_violations;
};

/// Problems default to all six when the list is empty. Rows come out in problem order, then
/// epsilon order, regardless of thread count.
std::vector<Row> run(const Config& config);

std::string format_table(const std::vector<Row>& rows);
std::string format_json(const std::vector<Row>& rows);

unsigned thread_count(unsigned requested);

}  // namespace schedcon::bench
