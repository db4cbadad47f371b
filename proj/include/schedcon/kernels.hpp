#pragma once

// Combinatorial building blocks shared by the solvers:
//   - min-power-for-exact-speed knapsack table and its rounded (FPTAS) variant,
//   - trimmed-list subset-sum approximation,
//   - LPT list scheduling on machines of unequal speed.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "schedcon/model.hpp"

namespace schedcon::kernels {

/// A knapsack item: machine speed (profit) and marginal power (weight).
struct SpeedPower {
    std::int64_t speed = 0;
    std::int64_t marginal_power = 0;
};

/// A(i, v): minimum total marginal power of a subset of items 0..i whose speeds sum to exactly v.
class DpTable {
public:
    static constexpr std::int64_t kInfeasible = std::numeric_limits<std::int64_t>::max();

    DpTable(std::vector<SpeedPower> items, std::int64_t max_total_speed);

    std::size_t rows() const { return items_.size(); }
    /// Largest representable total speed (m * V).
    std::int64_t max_speed() const { return max_total_speed_; }
    /// Cells in the m x mV extent.
    std::size_t extent() const { return rows() * static_cast<std::size_t>(max_total_speed_); }

    std::int64_t power(std::size_t row, std::int64_t speed) const { return values_[index(row, speed)]; }
    bool taken(std::size_t row, std::int64_t speed) const { return choice_[index(row, speed)] != 0; }
    std::span<const SpeedPower> items() const { return items_; }

private:
    friend DpTable dp_min_power(std::span<const SpeedPower> items);

    std::size_t index(std::size_t row, std::int64_t speed) const {
        return row * static_cast<std::size_t>(max_total_speed_ + 1) + static_cast<std::size_t>(speed);
    }

    std::vector<SpeedPower> items_;
    std::int64_t max_total_speed_ = 0;
    std::vector<std::int64_t> values_;
    std::vector<unsigned char> choice_;
};

/// Fills the table in O(m * mV). Items with speed 0 are allowed and never improve a cell.
DpTable dp_min_power(std::span<const SpeedPower> items);

struct SubsetChoice {
    std::int64_t speed = 0;            // total (table) speed of the subset
    std::vector<std::size_t> subset;   // item indices, ascending
};

/// Largest speed v with A(m, v) <= margin and a witness subset; {0, {}} when none qualifies.
SubsetChoice best_subset_under_power(const DpTable& table, std::int64_t margin);

struct RoundedSpeeds {
    Rational scale;                     // K = eps * V / m
    std::vector<std::int64_t> rounded;  // floor(v / K)
};

RoundedSpeeds round_speeds(std::span<const SpeedPower> items, const Rational& epsilon);

struct FptasResult {
    std::vector<std::size_t> subset;
    std::int64_t achieved_speed = 0;  // true (unrounded) total speed
    std::size_t rounded_table_size = 0;
    RoundedSpeeds rounding;  // over the fitting items only, in input order
    std::vector<std::size_t> fitting;
};

/// Speed-maximizing subset under a marginal-power budget, within (1 - eps) of optimal. Requires 0 < eps < 1.
FptasResult fptas_max_speed(std::span<const SpeedPower> items, std::int64_t margin, const Rational& epsilon);

struct SubsetSumResult {
    std::vector<JobIndex> subset;  // ascending
    std::int64_t total = 0;
};

/// Subset of weights with total <= capacity and total >= (1 - eps) * best. Requires 0 < eps < 1.
SubsetSumResult subset_sum_max_work(std::span<const std::int64_t> weights, const Rational& capacity,
                                    const Rational& epsilon);

/// LPT list scheduling. Jobs in non-increasing weight order (ties by index) go to the machine with the
/// smallest current completion time (ties by position in `machines`). Returns one record per given machine.
Schedule lpt_assign(std::span<const std::int64_t> weights, std::span<const Machine> machines);

/// As above, for a subset of jobs: job_ids[k] is the index recorded for weights[k].
Schedule lpt_assign(std::span<const std::int64_t> weights, std::span<const JobIndex> job_ids,
                    std::span<const Machine> machines);

}  // namespace schedcon::kernels
