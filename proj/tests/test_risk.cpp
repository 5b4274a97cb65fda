#include <doctest.h>

#include "riskched/error.hpp"
#include "riskched/generate.hpp"
#include "riskched/risk.hpp"
#include "support.hpp"

using namespace riskched;
using testing_support::R;

namespace {

const Distribution kFig = testing_support::worked_distribution();

// VaR as the exhaustive optimum of min theta s.t. b_k - theta <= M beta_k,
// sum Pr_k beta_k <= 1 - alpha over binary beta.
Rational var_by_subsets(const Distribution& d, const Rational& alpha) {
    std::optional<Rational> best;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d.size()); ++mask) {
        Rational ignored;
        std::optional<Rational> theta;
        for (std::size_t k = 0; k < d.size(); ++k) {
            if (mask >> k & 1)
                ignored += d[k].prob;
            else if (!theta || d[k].value > *theta)
                theta = d[k].value;
        }
        if (ignored > Rational(1) - alpha || !theta) continue;
        if (!best || *theta < *best) best = theta;
    }
    return *best;
}

std::vector<std::pair<Rational, Rational>> pairs(const Distribution& d) {
    std::vector<std::pair<Rational, Rational>> out;
    for (const auto& a : d.atoms()) out.emplace_back(a.value, a.prob);
    return out;
}

}  // namespace

TEST_CASE("expectation and maximum") {
    CHECK(expectation(kFig) == 26);
    CHECK(maximum(kFig) == 36);
    const auto seven = testing_support::make_distribution({{7, 1}});
    CHECK(expectation(seven) == 7);
    CHECK(maximum(seven) == 7);
    CHECK(expectation(testing_support::make_distribution({{0, R("1/2")}, {10, R("1/2")}})) == 5);
    CHECK(maximum(testing_support::make_distribution({{3, R("1/3")}, {3, R("2/3")}})) == 3);
}

TEST_CASE("value at risk") {
    CHECK(value_at_risk(kFig, R("1/2")) == 29);
    CHECK(value_at_risk(kFig, 1) == maximum(kFig));
    CHECK(value_at_risk(kFig, R("3/10")) == 13);
    CHECK(var_by_subsets(kFig, R("3/10")) == 13);
    CHECK(value_at_risk(testing_support::make_distribution({{5, 1}}), R("1/4")) == 5);
    CHECK_THROWS_AS(value_at_risk(kFig, 0), Error);
    CHECK_THROWS_AS(value_at_risk(kFig, R("3/2")), Error);
}

TEST_CASE("conditional value at risk") {
    CHECK(cvar_greedy(kFig, R("1/2")) == 34);
    CHECK(cvar_greedy(kFig, 0) == expectation(kFig));
    CHECK(cvar_greedy(kFig, R("4/5")) == 36);
    CHECK(cvar_lp(kFig, R("4/5")) == doctest::Approx(36).epsilon(1e-9));
    CHECK(cvar_lp(kFig, R("1/2")) == doctest::Approx(34).epsilon(1e-9));
    CHECK(cvar_lp(kFig, 0) == doctest::Approx(26).epsilon(1e-9));
    const auto seven = testing_support::make_distribution({{7, 1}});
    for (const char* a : {"0", "1/3", "9/10"}) CHECK(cvar_lp(seven, R(a)) == doctest::Approx(7));
    CHECK_THROWS_AS(cvar_greedy(kFig, 1), Error);
    CHECK_THROWS_AS(cvar_greedy(kFig, -1), Error);
}

TEST_CASE("criterion dispatch") {
    CHECK(evaluate(kFig, RiskCriterion::conditional_value_at_risk(R("1/2"))) == 34);
    CHECK(evaluate(kFig, RiskCriterion::maximum()) == 36);
    CHECK(evaluate(kFig, RiskCriterion::expectation()) == 26);
    CHECK(evaluate(kFig, RiskCriterion::value_at_risk(R("1/2"))) == 29);
    CHECK(RiskCriterion::conditional_value_at_risk(R("1/2")).str() == "cvar(1/2)");
    CHECK(RiskCriterion::value_at_risk(R("1/4")).str() == "var(1/4)");
    CHECK(RiskCriterion::expectation().str() == "exp");
    CHECK(RiskCriterion::maximum().str() == "max");
    CHECK_THROWS_AS(RiskCriterion::value_at_risk(0), Error);
    CHECK_THROWS_AS(RiskCriterion::conditional_value_at_risk(1), Error);
}

TEST_CASE("evaluators agree with independent formulas") {
    Rng rng(2024);
    for (int i = 0; i < 300; ++i) {
        const auto d = random_distribution(rng, 8, 50);
        for (const char* a : {"1/10", "1/3", "1/2", "4/5", "1"}) {
            const Rational alpha = R(a);
            CHECK(value_at_risk(d, alpha) == var_by_subsets(d, alpha));
            CHECK(value_at_risk(d, alpha) ==
                  testing_support::naive_criterion(pairs(d), RiskCriterion::value_at_risk(alpha)));
            if (alpha < 1)
                CHECK(cvar_greedy(d, alpha) ==
                      testing_support::naive_criterion(pairs(d), RiskCriterion::conditional_value_at_risk(alpha)));
        }
    }
}

TEST_CASE("cvar is nondecreasing in alpha and lies between var and the maximum") {
    Rng rng(8);
    for (int i = 0; i < 100; ++i) {
        const auto d = random_distribution(rng, 6, 30);
        Rational prev = expectation(d);
        for (int s = 0; s < 10; ++s) {
            const Rational c = cvar_greedy(d, Rational(s, 10));
            CHECK(c >= prev);
            CHECK(c <= maximum(d));
            if (s > 0) CHECK(c >= value_at_risk(d, Rational(s, 10)));
            prev = c;
        }
    }
}

TEST_CASE("evaluate_costs builds the distribution from scenario costs") {
    const auto inst = testing_support::worked_instance();
    const std::vector<Rational> costs = {13, 22, 29, 33, 36};
    CHECK(evaluate_costs(costs, inst, RiskCriterion::conditional_value_at_risk(R("1/2"))) == 34);
}
