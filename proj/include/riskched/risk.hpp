#pragma once

#include <string>

#include "riskched/model.hpp"

namespace riskched {

/// Expectation | Max | VaR(alpha) | CVaR(alpha). Construct through the named
/// factories, which enforce alpha in (0,1] for VaR and [0,1) for CVaR.
class RiskCriterion {
public:
    enum class Kind { Expectation, Max, VaR, CVaR };

    static RiskCriterion expectation() { return RiskCriterion(Kind::Expectation, Rational{}); }
    static RiskCriterion maximum() { return RiskCriterion(Kind::Max, Rational{}); }
    static RiskCriterion value_at_risk(const Rational& alpha);
    static RiskCriterion conditional_value_at_risk(const Rational& alpha);

    Kind kind() const { return kind_; }
    /// Zero for Expectation and Max.
    const Rational& alpha() const { return alpha_; }

    /// "exp", "max", "var(1/2)", "cvar(1/4)".
    std::string str() const;

    friend bool operator==(const RiskCriterion&, const RiskCriterion&) = default;

private:
    RiskCriterion(Kind kind, Rational alpha) : kind_(kind), alpha_(std::move(alpha)) {}

    Kind kind_;
    Rational alpha_;
};

Rational expectation(const Distribution& dist);
Rational maximum(const Distribution& dist);

/// Smallest atom value whose cumulative probability reaches alpha.
Rational value_at_risk(const Distribution& dist, const Rational& alpha);

/// Mass-distribution form: fill 1-alpha from the largest values down.
Rational cvar_greedy(const Distribution& dist, const Rational& alpha);

/// Optimal value of min gamma + 1/(1-alpha) sum Pr_k u_k subject to
/// gamma + u_k >= b_k, u_k >= 0, solved with the floating-point simplex.
double cvar_lp(const Distribution& dist, const Rational& alpha);

Rational evaluate(const Distribution& dist, const RiskCriterion& criterion);

/// Risk of the cost distribution a vector of per-scenario costs induces under
/// the instance's probabilities.
Rational evaluate_costs(const std::vector<Rational>& costs, const Instance& inst, const RiskCriterion& criterion);

}  // namespace riskched
