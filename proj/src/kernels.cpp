#include "schedcon/kernels.hpp"

#include <algorithm>
#include <numeric>

namespace schedcon::kernels {

DpTable::DpTable(std::vector<SpeedPower> items, std::int64_t max_total_speed)
    : items_(std::move(items)), max_total_speed_(max_total_speed) {
    const std::size_t cells = items_.size() * static_cast<std::size_t>(max_total_speed_ + 1);
    values_.assign(cells, kInfeasible);
    choice_.assign(cells, 0);
}

DpTable dp_min_power(std::span<const SpeedPower> items) {
    if (items.empty()) {
        throw ModelError("dp_min_power: at least one machine required");
    }
    std::int64_t v_max = 0;
    for (const auto& it : items) {
        if (it.speed < 0 || it.marginal_power < 0) {
            throw ModelError("dp_min_power: speeds and powers must be non-negative");
        }
        v_max = std::max(v_max, it.speed);
    }
    const auto m = static_cast<std::int64_t>(items.size());
    DpTable t(std::vector<SpeedPower>(items.begin(), items.end()), m * v_max);
    const std::int64_t width = t.max_speed();

    // Column 0 is the empty subset. A lone machine realizes its own speed.
    t.values_[t.index(0, 0)] = 0;
    if (items[0].speed > 0) {
        t.values_[t.index(0, items[0].speed)] = items[0].marginal_power;
        t.choice_[t.index(0, items[0].speed)] = 1;
    }
    for (std::size_t i = 1; i < items.size(); ++i) {
        const std::int64_t s = items[i].speed;
        const std::int64_t d = items[i].marginal_power;
        for (std::int64_t v = 0; v <= width; ++v) {
            std::int64_t best = t.values_[t.index(i - 1, v)];
            unsigned char took = 0;
            if (s > 0 && s <= v) {
                const std::int64_t prev = t.values_[t.index(i - 1, v - s)];
                if (prev != DpTable::kInfeasible && prev + d < best) {
                    best = prev + d;
                    took = 1;
                }
            }
            t.values_[t.index(i, v)] = best;
            t.choice_[t.index(i, v)] = took;
        }
    }
    return t;
}

SubsetChoice best_subset_under_power(const DpTable& table, std::int64_t margin) {
    SubsetChoice out;
    const std::size_t last = table.rows() - 1;
    std::int64_t v = table.max_speed();
    for (; v > 0; --v) {
        const std::int64_t p = table.power(last, v);
        if (p != DpTable::kInfeasible && p <= margin) {
            break;
        }
    }
    if (v == 0) {
        return out;
    }
    out.speed = v;
    for (std::size_t i = table.rows(); i-- > 0 && v > 0;) {
        if (table.taken(i, v)) {
            out.subset.push_back(i);
            v -= table.items()[i].speed;
        }
    }
    std::reverse(out.subset.begin(), out.subset.end());
    return out;
}

RoundedSpeeds round_speeds(std::span<const SpeedPower> items, const Rational& epsilon) {
    if (!(epsilon > 0 && epsilon < 1)) {
        throw ModelError("epsilon must lie strictly between 0 and 1, got " + to_string(epsilon));
    }
    if (items.empty()) {
        throw ModelError("round_speeds: at least one machine required");
    }
    std::int64_t v_max = 0;
    for (const auto& it : items) {
        v_max = std::max(v_max, it.speed);
    }
    const auto m = static_cast<std::int64_t>(items.size());
    RoundedSpeeds r;
    r.scale = epsilon * v_max / m;
    r.rounded.reserve(items.size());
    for (const auto& it : items) {
        // floor(v / K) = floor(v * m / (eps * V)), exact.
        r.rounded.push_back(floor_to_int64(Rational(it.speed) / r.scale));
    }
    return r;
}

FptasResult fptas_max_speed(std::span<const SpeedPower> items, std::int64_t margin, const Rational& epsilon) {
    FptasResult out;
    // Items heavier than the margin can never be chosen. Leaving them out of V keeps one fast but
    // unusable machine from rounding every usable one down to zero.
    std::vector<std::size_t>& fitting = out.fitting;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (items[i].marginal_power <= margin) {
            fitting.push_back(i);
        }
    }
    if (fitting.empty()) {
        if (!(epsilon > 0 && epsilon < 1)) {
            throw ModelError("epsilon must lie strictly between 0 and 1, got " + to_string(epsilon));
        }
        return out;
    }
    std::vector<SpeedPower> scaled;
    for (std::size_t i : fitting) {
        scaled.push_back(items[i]);
    }
    out.rounding = round_speeds(scaled, epsilon);
    for (std::size_t k = 0; k < scaled.size(); ++k) {
        scaled[k].speed = out.rounding.rounded[k];
    }
    const DpTable table = dp_min_power(scaled);
    out.rounded_table_size = table.extent();
    const SubsetChoice pick = best_subset_under_power(table, margin);
    for (std::size_t k : pick.subset) {
        out.subset.push_back(fitting[k]);
        out.achieved_speed += items[fitting[k]].speed;
    }
    std::sort(out.subset.begin(), out.subset.end());
    return out;
}

namespace {

struct SumNode {
    std::int64_t sum;
    std::int32_t parent;  // -1 for the empty subset
    std::int32_t item;
};

}  // namespace

SubsetSumResult subset_sum_max_work(std::span<const std::int64_t> weights, const Rational& capacity,
                                    const Rational& epsilon) {
    if (!(epsilon > 0 && epsilon < 1)) {
        throw ModelError("epsilon must lie strictly between 0 and 1, got " + to_string(epsilon));
    }
    SubsetSumResult out;
    if (weights.empty() || capacity < 1) {
        return out;
    }
    const std::int64_t cap = floor_to_int64(capacity);
    const auto two_n = static_cast<std::int64_t>(2 * weights.size());
    // Keep y only if y > z * (1 + eps / 2n) for the last kept z.
    const Rational factor = 1 + epsilon / two_n;

    std::vector<SumNode> arena{{0, -1, -1}};
    std::vector<std::int32_t> list{0};
    std::vector<std::int32_t> merged;
    for (std::size_t j = 0; j < weights.size(); ++j) {
        merged.clear();
        std::size_t a = 0;
        std::vector<std::int32_t> shifted;
        for (std::int32_t id : list) {
            const std::int64_t s = arena[static_cast<std::size_t>(id)].sum + weights[j];
            if (s <= cap) {
                arena.push_back({s, id, static_cast<std::int32_t>(j)});
                shifted.push_back(static_cast<std::int32_t>(arena.size() - 1));
            }
        }
        std::size_t b = 0;
        while (a < list.size() || b < shifted.size()) {
            const bool from_list =
                b == shifted.size() ||
                (a < list.size() && arena[static_cast<std::size_t>(list[a])].sum <= arena[static_cast<std::size_t>(shifted[b])].sum);
            merged.push_back(from_list ? list[a++] : shifted[b++]);
        }
        list.clear();
        std::int64_t last = -1;
        for (std::int32_t id : merged) {
            const std::int64_t y = arena[static_cast<std::size_t>(id)].sum;
            if (last < 0 || Rational(y) > factor * last) {
                list.push_back(id);
                last = y;
            }
        }
    }
    std::int32_t best = list.back();
    out.total = arena[static_cast<std::size_t>(best)].sum;
    for (std::int32_t id = best; arena[static_cast<std::size_t>(id)].parent >= 0;
         id = arena[static_cast<std::size_t>(id)].parent) {
        out.subset.push_back(static_cast<JobIndex>(arena[static_cast<std::size_t>(id)].item));
    }
    std::sort(out.subset.begin(), out.subset.end());
    return out;
}

Schedule lpt_assign(std::span<const std::int64_t> weights, std::span<const Machine> machines) {
    std::vector<JobIndex> ids(weights.size());
    std::iota(ids.begin(), ids.end(), JobIndex{0});
    return lpt_assign(weights, ids, machines);
}

Schedule lpt_assign(std::span<const std::int64_t> weights, std::span<const JobIndex> job_ids,
                    std::span<const Machine> machines) {
    if (machines.empty()) {
        throw ModelError("lpt_assign: at least one machine required");
    }
    if (job_ids.size() != weights.size()) {
        throw ModelError("lpt_assign: one id per job required");
    }
    std::vector<std::size_t> order(weights.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return weights[a] > weights[b] || (weights[a] == weights[b] && job_ids[a] < job_ids[b]);
    });

    Schedule s;
    s.discrete = true;
    std::vector<std::int64_t> load(machines.size(), 0);
    for (const Machine& c : machines) {
        s.assignments.push_back(Assignment{c.id, Rational(0), Rational(0), {}});
    }
    for (std::size_t k : order) {
        std::size_t target = 0;
        for (std::size_t l = 1; l < machines.size(); ++l) {
            if (s.assignments[l].time < s.assignments[target].time) {
                target = l;
            }
        }
        load[target] += weights[k];
        s.assignments[target].jobs.push_back(job_ids[k]);
        s.assignments[target].time = make_rational(load[target], machines[target].speed);
        s.assignments[target].work = Rational(load[target]);
    }
    for (auto& a : s.assignments) {
        std::sort(a.jobs.begin(), a.jobs.end());
    }
    return s;
}

}  // namespace schedcon::kernels
