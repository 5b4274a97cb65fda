#include "riskched/risk.hpp"

#include "riskched/error.hpp"
#include "riskched/lp.hpp"

namespace riskched {

namespace {

void check_var_alpha(const Rational& alpha) {
    if (alpha.sign() <= 0 || alpha > Rational(1))
        throw Error(ErrorCode::AlphaOutOfRange, "VaR needs alpha in (0,1], got " + alpha.str());
}

void check_cvar_alpha(const Rational& alpha) {
    if (alpha.sign() < 0 || alpha >= Rational(1))
        throw Error(ErrorCode::AlphaOutOfRange, "CVaR needs alpha in [0,1), got " + alpha.str());
}

}  // namespace

RiskCriterion RiskCriterion::value_at_risk(const Rational& alpha) {
    check_var_alpha(alpha);
    return RiskCriterion(Kind::VaR, alpha);
}

RiskCriterion RiskCriterion::conditional_value_at_risk(const Rational& alpha) {
    check_cvar_alpha(alpha);
    return RiskCriterion(Kind::CVaR, alpha);
}

std::string RiskCriterion::str() const {
    switch (kind_) {
        case Kind::Expectation: return "exp";
        case Kind::Max: return "max";
        case Kind::VaR: return "var(" + alpha_.str() + ")";
        case Kind::CVaR: return "cvar(" + alpha_.str() + ")";
    }
    return "?";
}

Rational expectation(const Distribution& dist) {
    Rational sum;
    for (const auto& a : dist.atoms()) sum += a.value * a.prob;
    return sum;
}

Rational maximum(const Distribution& dist) { return dist.atoms().back().value; }

Rational value_at_risk(const Distribution& dist, const Rational& alpha) {
    check_var_alpha(alpha);
    Rational cumulative;
    for (const auto& a : dist.atoms()) {
        cumulative += a.prob;
        if (cumulative >= alpha) return a.value;
    }
    return dist.atoms().back().value;
}

Rational cvar_greedy(const Distribution& dist, const Rational& alpha) {
    check_cvar_alpha(alpha);
    const Rational mass = Rational(1) - alpha;
    Rational remaining = mass;
    Rational sum;
    const auto atoms = dist.atoms();
    for (auto it = atoms.rbegin(); it != atoms.rend() && remaining.sign() > 0; ++it) {
        const Rational& q = min(it->prob, remaining);
        sum += it->value * q;
        remaining -= q;
    }
    return sum / mass;
}

double cvar_lp(const Distribution& dist, const Rational& alpha) {
    check_cvar_alpha(alpha);
    const double scale = 1.0 / (Rational(1) - alpha).to_double();
    lp::Problem problem;
    const std::size_t gamma = problem.add_variable(1.0, -lp::kInfinity, lp::kInfinity);
    std::vector<std::size_t> u;
    for (const auto& a : dist.atoms()) u.push_back(problem.add_variable(a.prob.to_double() * scale));
    for (std::size_t k = 0; k < dist.size(); ++k) {
        std::vector<double> row(problem.num_variables(), 0.0);
        row[gamma] = 1.0;
        row[u[k]] = 1.0;
        problem.add_row(std::move(row), lp::Relation::GreaterEqual, dist[k].value.to_double());
    }
    const auto sol = lp::solve(problem);
    if (sol.status != lp::Status::Optimal)
        throw Error(ErrorCode::LpFailure, "CVaR program reported " + std::string(lp::to_string(sol.status)));
    return sol.objective;
}

Rational evaluate(const Distribution& dist, const RiskCriterion& criterion) {
    switch (criterion.kind()) {
        case RiskCriterion::Kind::Expectation: return expectation(dist);
        case RiskCriterion::Kind::Max: return maximum(dist);
        case RiskCriterion::Kind::VaR: return value_at_risk(dist, criterion.alpha());
        case RiskCriterion::Kind::CVaR: return cvar_greedy(dist, criterion.alpha());
    }
    return {};
}

Rational evaluate_costs(const std::vector<Rational>& costs, const Instance& inst, const RiskCriterion& criterion) {
    std::vector<Atom> atoms;
    atoms.reserve(costs.size());
    for (std::size_t k = 0; k < costs.size(); ++k) atoms.push_back({costs[k], inst.scenarios[k].prob});
    return evaluate(Distribution(std::move(atoms)), criterion);
}

}  // namespace riskched
