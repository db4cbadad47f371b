#include <exception>

#include "schedcon/energy_budget.hpp"
#include "schedcon/makespan_budget.hpp"
#include "schedcon/model.hpp"

namespace schedcon {

ValidationReport validate_instance(const Fleet& fleet, const JobSpec& jobs, const Constraint& constraint) {
    ValidationReport report;
    auto add = [&](Severity s, std::string code, std::string message) {
        report.findings.push_back(Finding{s, std::move(code), std::move(message)});
    };

    if (fleet.empty()) {
        add(Severity::Error, "empty-fleet", "fleet has no machines");
    }
    if (constraint.value <= 0) {
        add(Severity::Error, "non-positive-constraint", "constraint value must be positive");
    }
    if (jobs.is_divisible()) {
        if (jobs.total_work() <= 0) {
            add(Severity::Error, "non-positive-work", "divisible total work must be positive");
        }
    } else {
        const auto w = jobs.weights();
        if (w.empty()) {
            add(Severity::Error, "no-jobs", "discrete job list is empty");
        }
        for (std::size_t j = 0; j < w.size(); ++j) {
            if (w[j] < 1) {
                add(Severity::Error, "non-positive-weight", "job " + std::to_string(j) + " has weight < 1");
            }
        }
    }
    if (!report.ok()) {
        return report;
    }

    try {
        switch (constraint.kind) {
            case ConstraintKind::PowerCap: {
                if (jobs.is_discrete()) {
                    add(Severity::Error, "unsupported", "non-divisible jobs under a power cap are not supported");
                    break;
                }
                const Rational floor_draw(fleet.gamma_total() + fleet.min_marginal_power());
                if (constraint.value <= floor_draw) {
                    add(Severity::Error, "power-cap-too-low",
                        "power cap " + to_string(constraint.value) + " <= idle draw + smallest marginal power " +
                            to_string(floor_draw) + "; no machine can run");
                } else if (constraint.value >= Rational(fleet.total_working_power())) {
                    add(Severity::Warning, "unconstrained",
                        "power cap " + to_string(constraint.value) + " >= total working power " +
                            std::to_string(fleet.total_working_power()));
                }
                break;
            }
            case ConstraintKind::EnergyBudget: {
                const EnergyBudgetProblem p{fleet, jobs, constraint.value};
                const SolveOutcome out =
                    jobs.is_divisible() ? min_makespan_divisible(p) : min_makespan_nondivisible(p, Rational(1, 4));
                if (!out.ok()) {
                    add(Severity::Error, "energy-budget-infeasible", out.certificate->reason);
                }
                break;
            }
            case ConstraintKind::MakespanBudget: {
                const MakespanBudgetProblem p{fleet, jobs, constraint.value};
                const SolveOutcome out = jobs.is_divisible() ? min_energy_divisible(p) : min_energy_nondivisible(p);
                if (!out.ok()) {
                    add(Severity::Error, "makespan-budget-infeasible", out.certificate->reason);
                }
                break;
            }
        }
    } catch (const std::exception& e) {
        add(Severity::Error, "structural", e.what());
    }
    return report;
}

}  // namespace schedcon
