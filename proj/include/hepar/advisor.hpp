#ifndef HEPAR_ADVISOR_HPP
#define HEPAR_ADVISOR_HPP

#include <optional>
#include <string>
#include <utility>

#include "hepar/circuit.hpp"
#include "hepar/coefficients.hpp"
#include "hepar/hestd.hpp"
#include "hepar/lp.hpp"
#include "hepar/model.hpp"

namespace hepar {

struct AdviceRequest {
    Priorities priorities;
    CircuitDocument circuit;
    BudgetTable budgets;
    double epsilon = 0.05;
    SolveOptions solver;
};

enum class AdviceStatus { ok, infeasible };

struct AdviceResult {
    AdviceStatus status = AdviceStatus::infeasible;
    Parametrization params;
    ValidationReport report;
    CircuitProfile profile;
    GlobalParams gp;
    ChoiceCost costs;
    MilpModel model;
};

/// End-to-end advice: profile the circuit per candidate degree, run the
/// fuzzy pipeline at the extreme depths, assemble and solve the program,
/// and re-validate the extracted parametrization against the standard.
/// An infeasible program is a legitimate outcome (the priorities and the
/// circuit admit no standard-compliant chain), never an exception.
inline AdviceResult advise(const AdviceRequest& request) {
    AdviceResult res;
    res.profile = profile_of(request.circuit);
    res.gp = global_params(request.priorities, res.profile);
    res.costs = choice_cost(res.profile, request.budgets, res.gp.k_log_n, res.gp.k_log_q, request.epsilon);
    res.model = build_model(res.profile, res.costs, res.gp, request.budgets);

    const Solution sol = solve(res.model.lp, request.solver);
    if (sol.status == SolveStatus::node_limit) throw std::runtime_error("solver node limit exceeded");
    if (sol.status != SolveStatus::optimal) {
        res.status = AdviceStatus::infeasible;
        return res;
    }
    res.params = extract(sol, res.model);
    res.report = validate(res.params, res.profile, request.budgets);
    if (!res.report.pass())
        throw std::logic_error("internal error: extracted parametrization failed validation:\n" +
                               res.report.to_text());
    res.status = AdviceStatus::ok;
    return res;
}

}  // namespace hepar

#endif  // HEPAR_ADVISOR_HPP
