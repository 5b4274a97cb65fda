#include "riskched/approx.hpp"

#include <cmath>

#include "riskched/error.hpp"
#include "riskched/lp.hpp"
#include "riskched/reductions.hpp"

namespace riskched {

namespace {

constexpr double kTieTol = 1e-9;

SolveResult finish(const Instance& inst, Schedule schedule, const RiskCriterion& criterion, Certificate cert) {
    SolveResult r;
    r.value = evaluate(cost_distribution(schedule, inst), criterion);
    r.schedule = std::move(schedule);
    r.criterion = criterion;
    r.certificate = std::move(cert);
    return r;
}

void require_sumwc(const Instance& inst) {
    require_valid(inst);
    if (inst.objective != Objective::SumWC && inst.objective != Objective::SumC)
        throw Error(ErrorCode::WrongObjective, "LP rounding needs sumWC or sumC");
}

// Per-scenario sum_j w_j(xi_k) C_j with the C_j coefficients placed in a row.
std::vector<double> scenario_cost_row(const Instance& inst, const lp::VcRelaxation& vc, std::size_t k,
                                      std::size_t width) {
    std::vector<double> row(width, 0.0);
    for (std::size_t j = 0; j < inst.n; ++j) {
        const Rational w = inst.objective == Objective::SumWC ? inst.weight(k, j) : Rational(1);
        row[vc.completion(j)] = w.to_double();
    }
    return row;
}

// Lists jobs by LP completion time, taking only jobs whose predecessors are
// already listed; near-ties go to the smaller index.
Schedule list_by_completion(const Instance& inst, const std::vector<double>& c) {
    std::vector<std::size_t> open_preds(inst.n, 0);
    std::vector<std::vector<std::size_t>> succ(inst.n);
    for (auto [i, j] : inst.precedence) {
        ++open_preds[j];
        succ[i].push_back(j);
    }
    std::vector<char> done(inst.n, 0);
    Schedule s;
    while (s.order.size() < inst.n) {
        double lo = lp::kInfinity;
        for (std::size_t j = 0; j < inst.n; ++j)
            if (!done[j] && open_preds[j] == 0) lo = std::min(lo, c[j]);
        std::size_t pick = inst.n;
        for (std::size_t j = 0; j < inst.n && pick == inst.n; ++j)
            if (!done[j] && open_preds[j] == 0 && c[j] <= lo + kTieTol) pick = j;
        done[pick] = 1;
        s.order.push_back(pick);
        for (std::size_t j : succ[pick]) --open_preds[j];
    }
    return s;
}

// The instance the relaxation is solved on.
Instance relaxation_instance(const Instance& inst) {
    if (!needs_inversion(inst)) return inst;
    return invert_flowtime(inst);
}

std::vector<double> completion_values(const lp::VcRelaxation& vc, const lp::Solution& sol) {
    std::vector<double> c(vc.n);
    for (std::size_t j = 0; j < vc.n; ++j) c[j] = sol.values[vc.completion(j)];
    return c;
}

}  // namespace

bool needs_inversion(const Instance& inst) {
    if (has_deterministic_processing_times(inst)) return false;
    for (const auto& s : inst.scenarios)
        if (s.w && inst.objective == Objective::SumWC)
            throw Error(ErrorCode::UnsupportedData, "LP rounding needs deterministic processing times or weights");
    return true;
}

SolveResult lift_expectation_cvar(const Instance& inst, const Rational& alpha, const ExpSolver& solver) {
    const auto criterion = RiskCriterion::conditional_value_at_risk(alpha);
    require_valid(inst);
    SolveResult base = solver(inst);
    Rational pr_min = inst.scenarios.front().prob;
    for (const auto& s : inst.scenarios) pr_min = min(pr_min, s.prob);
    const Rational rho = min(Rational(1) / pr_min, Rational(1) / (Rational(1) - alpha));
    return finish(inst, std::move(base.schedule), criterion,
                  Certificate::approx(base.certificate.guarantee() * rho, ApproxBasis::LiftExpectation));
}

SolveResult lp_round_cvar_sumwc(const Instance& inst, const Rational& alpha) {
    const auto criterion = RiskCriterion::conditional_value_at_risk(alpha);
    require_sumwc(inst);
    const bool inverted = needs_inversion(inst);
    const Instance work = relaxation_instance(inst);

    auto vc = lp::build_vc_relaxation(work);
    auto& problem = vc.problem;
    const double scale = 1.0 / (Rational(1) - alpha).to_double();
    const std::size_t gamma = problem.add_variable(1.0, -lp::kInfinity, lp::kInfinity);
    std::vector<std::size_t> u;
    for (const auto& s : work.scenarios) u.push_back(problem.add_variable(s.prob.to_double() * scale));
    for (std::size_t k = 0; k < work.num_scenarios(); ++k) {
        auto row = scenario_cost_row(work, vc, k, problem.num_variables());
        for (double& x : row) x = -x;
        row[gamma] = 1.0;
        row[u[k]] = 1.0;
        problem.add_row(std::move(row), lp::Relation::GreaterEqual, 0.0);
    }
    const auto sol = lp::solve(problem);
    if (sol.status != lp::Status::Optimal)
        throw Error(ErrorCode::LpFailure, "CVaR relaxation reported " + std::string(lp::to_string(sol.status)));

    const auto c = completion_values(vc, sol);
    Schedule schedule = list_by_completion(work, c);
    if (inverted) schedule = reverse_schedule(schedule);
    auto r = finish(inst, std::move(schedule), criterion, Certificate::approx(2, ApproxBasis::LpRound2));
    r.lower_bound = sol.objective;
    r.lp_completion = c;
    return r;
}

SolveResult lp_round_var_sumwc(const Instance& inst, const Rational& alpha, std::uint64_t cap) {
    const auto criterion = RiskCriterion::value_at_risk(alpha);
    require_sumwc(inst);
    const std::size_t K = inst.num_scenarios();
    if (K >= 63 || (std::uint64_t{1} << K) > cap)
        throw Error(ErrorCode::TooLarge, "2^K scenario subsets exceed cap of " + std::to_string(cap));
    const bool inverted = needs_inversion(inst);
    const Instance work = relaxation_instance(inst);
    const auto base = lp::build_vc_relaxation(work);

    const Rational budget = Rational(1) - alpha;
    auto ignorable = [&](std::uint64_t mask) {
        Rational mass;
        for (std::size_t k = 0; k < K; ++k)
            if (mask >> k & 1) mass += work.scenarios[k].prob;
        return mass <= budget;
    };

    std::optional<double> best;
    std::vector<double> best_c;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << K); ++mask) {
        if (!ignorable(mask)) continue;
        // Ignoring more scenarios only lowers the bound, so maximal sets suffice.
        bool maximal = true;
        for (std::size_t k = 0; k < K && maximal; ++k)
            if (!(mask >> k & 1) && ignorable(mask | std::uint64_t{1} << k)) maximal = false;
        if (!maximal) continue;

        lp::VcRelaxation vc = base;
        auto& problem = vc.problem;
        const std::size_t theta = problem.add_variable(1.0);
        for (std::size_t k = 0; k < K; ++k) {
            if (mask >> k & 1) continue;
            auto row = scenario_cost_row(work, vc, k, problem.num_variables());
            for (double& x : row) x = -x;
            row[theta] = 1.0;
            problem.add_row(std::move(row), lp::Relation::GreaterEqual, 0.0);
        }
        const auto sol = lp::solve(problem);
        if (sol.status != lp::Status::Optimal)
            throw Error(ErrorCode::LpFailure, "VaR relaxation reported " + std::string(lp::to_string(sol.status)));
        if (!best || sol.objective < *best) {
            best = sol.objective;
            best_c = completion_values(vc, sol);
        }
    }

    Schedule schedule = list_by_completion(work, best_c);
    if (inverted) schedule = reverse_schedule(schedule);
    auto r = finish(inst, std::move(schedule), criterion, Certificate::approx(2, ApproxBasis::VarSubsetLp));
    r.lower_bound = best;
    r.lp_completion = std::move(best_c);
    return r;
}

SolveResult minmax_assignment_k_approx(const Instance& inst) {
    require_valid(inst);
    const std::size_t K = inst.num_scenarios();
    const std::vector<Rational> factor(K, Rational(1, static_cast<std::int64_t>(K)));
    Schedule schedule{hungarian(unit_time_cost_matrix(inst, factor)).column_of_row};
    return finish(inst, std::move(schedule), RiskCriterion::maximum(),
                  Certificate::approx(Rational(static_cast<std::int64_t>(K)), ApproxBasis::MeanAssignmentK));
}

}  // namespace riskched
