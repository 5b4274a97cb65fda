#include <doctest.h>

#include "riskched/approx.hpp"
#include "riskched/error.hpp"
#include "riskched/generate.hpp"
#include "support.hpp"

using namespace riskched;
using testing_support::naive_optimum;
using testing_support::R;
using testing_support::Rs;

namespace {

ExpSolver brute_exp() {
    return [](const Instance& i) { return brute_force(i, RiskCriterion::expectation()); };
}

Instance deterministic_sumwc(std::vector<long long> p, std::vector<long long> w, std::vector<Edge> edges = {}) {
    Instance inst;
    inst.n = p.size();
    inst.objective = Objective::SumWC;
    for (auto x : w) inst.weights.emplace_back(x);
    inst.precedence = std::move(edges);
    Scenario s;
    s.prob = 1;
    for (auto x : p) s.p.emplace_back(x);
    s.d.assign(inst.n, Rational(0));
    inst.scenarios.push_back(s);
    return inst;
}

}  // namespace

TEST_CASE("lifting ratio") {
    const auto k1 = deterministic_sumwc({2, 1}, {1, 1});
    const auto r = lift_expectation_cvar(k1, R("1/2"), wspt_min_exp_sumwc);
    CHECK(r.certificate.parameter == 1);
    CHECK(r.certificate.basis == ApproxBasis::LiftExpectation);

    Rng rng(3);
    GeneratorOptions g;
    g.n = 4;
    g.K = 4;
    g.uniform_probabilities = true;
    const Instance inst = random_instance(rng, g);
    const auto u = lift_expectation_cvar(inst, R("1/2"), brute_exp());
    CHECK(u.certificate.parameter == 2);
    const auto v = lift_expectation_cvar(inst, R("9/10"), brute_exp());
    CHECK(v.certificate.parameter == 4);
}

TEST_CASE("lifting bound on unit-time instances") {
    Rng rng(5);
    GeneratorOptions g;
    g.n = 6;
    g.K = 3;
    g.unit_time = true;
    g.d_max = 6;
    for (int i = 0; i < 20; ++i) {
        const Instance inst = random_instance(rng, g);
        const auto c = RiskCriterion::conditional_value_at_risk(R("1/2"));
        const auto r = lift_expectation_cvar(inst, R("1/2"), assignment_min_exp_unit);
        const Rational opt = naive_optimum(inst, c);
        CHECK(r.value <= 2 * opt);
        CHECK(r.value <= r.certificate.guarantee() * opt);
    }
}

TEST_CASE("cvar rounding") {
    const auto one = deterministic_sumwc({4}, {3});
    const auto r1 = lp_round_cvar_sumwc(one, R("1/2"));
    CHECK(r1.schedule == Schedule{{0}});
    CHECK(r1.value == 12);

    Rng rng(7);
    GeneratorOptions g;
    g.objective = Objective::SumWC;
    g.deterministic_p = true;
    g.edge_prob = 0.2;
    for (int i = 0; i < 25; ++i) {
        g.n = 3 + i % 5;
        g.K = 1 + i % 4;
        g.scenario_weights = i % 3 != 0;
        const Instance inst = random_instance(rng, g);
        for (const char* a : {"0", "1/4", "1/2"}) {
            const Rational alpha = R(a);
            const auto r = lp_round_cvar_sumwc(inst, alpha);
            const Rational opt = naive_optimum(inst, RiskCriterion::conditional_value_at_risk(alpha));
            CHECK(r.value <= 2 * opt);
            REQUIRE(r.lower_bound);
            CHECK(*r.lower_bound <= opt.to_double() + 1e-6);
            CHECK(r.value.to_double() <= 2 * *r.lower_bound + 1e-6);
            const auto c = completion_times(r.schedule, inst.scenarios[0]);
            for (std::size_t j = 0; j < inst.n; ++j) CHECK(c[j].to_double() <= 2 * r.lp_completion[j] + 1e-6);
        }
    }
}

TEST_CASE("cvar rounding with uncertain processing times") {
    const auto inst = testing_support::worked_instance();
    const auto r = lp_round_cvar_sumwc(inst, R("1/2"));
    const Rational opt = naive_optimum(inst, RiskCriterion::conditional_value_at_risk(R("1/2")));
    CHECK(r.value <= 2 * opt);
    CHECK(needs_inversion(inst));
    auto both = inst;
    both.objective = Objective::SumWC;
    both.scenarios[0].w = Rs({1, 2, 3, 4});
    CHECK_THROWS_AS(lp_round_cvar_sumwc(both, R("1/2")), Error);
}

TEST_CASE("var rounding") {
    const auto k1 = deterministic_sumwc({2, 1, 3}, {1, 4, 2});
    const auto r = lp_round_var_sumwc(k1, R("1/2"));
    CHECK(r.value <= 2 * naive_optimum(k1, RiskCriterion::value_at_risk(R("1/2"))));

    Rng rng(9);
    GeneratorOptions g;
    g.objective = Objective::SumWC;
    g.deterministic_p = true;
    g.scenario_weights = true;
    g.edge_prob = 0.2;
    for (int i = 0; i < 20; ++i) {
        g.n = 3 + i % 5;
        g.K = 1 + i % 3;
        const Instance inst = random_instance(rng, g);
        for (const char* a : {"1/4", "1/2", "1"}) {
            const auto c = RiskCriterion::value_at_risk(R(a));
            CHECK(lp_round_var_sumwc(inst, R(a)).value <= 2 * naive_optimum(inst, c));
        }
        // At alpha = 1 every scenario stays active, as in minmax rounding.
        const auto full = lp_round_var_sumwc(inst, 1);
        CHECK(full.value == evaluate(cost_distribution(full.schedule, inst), RiskCriterion::maximum()));
    }
    CHECK_THROWS_AS(lp_round_var_sumwc(k1, R("1/2"), 1), Error);
}

TEST_CASE("mean assignment for minmax") {
    Instance k1;
    k1.n = 3;
    k1.objective = Objective::SumWT;
    k1.weights = Rs({1, 2, 1});
    k1.scenarios.push_back({1, Rs({1, 1, 1}), Rs({1, 0, 2}), std::nullopt});
    const auto r = minmax_assignment_k_approx(k1);
    CHECK(r.certificate.parameter == 1);
    CHECK(r.value == naive_optimum(k1, RiskCriterion::maximum()));

    auto same = k1;
    same.scenarios[0].prob = R("1/2");
    same.scenarios.push_back({R("1/2"), Rs({1, 1, 1}), Rs({1, 0, 2}), std::nullopt});
    CHECK(minmax_assignment_k_approx(same).value == naive_optimum(same, RiskCriterion::maximum()));

    Rng rng(11);
    GeneratorOptions g;
    g.n = 6;
    g.K = 3;
    g.unit_time = true;
    g.d_max = 6;
    for (int i = 0; i < 15; ++i) {
        const Instance inst = random_instance(rng, g);
        CHECK(minmax_assignment_k_approx(inst).value <= 3 * naive_optimum(inst, RiskCriterion::maximum()));
    }
}
