#include <doctest.h>

#include "riskched/error.hpp"
#include "riskched/exact.hpp"
#include "riskched/generate.hpp"
#include "riskched/reductions.hpp"
#include "support.hpp"

using namespace riskched;
using testing_support::naive_optimum;
using testing_support::naive_value;
using testing_support::R;
using testing_support::Rs;

namespace {

// (x1 | ~x2 | ~x3) & (~x2 | ~x3 | x4) & (~x1 | x2 | ~x4) & (x1 | x2 | x3) & (x1 | x3 | ~x4)
const CnfFormula kFour{4, {{1, -2, -3}, {-2, -3, 4}, {-1, 2, -4}, {1, 2, 3}, {1, 3, -4}}};

std::vector<std::size_t> jobs(std::initializer_list<int> literals) {
    std::vector<std::size_t> out;
    for (int l : literals) out.push_back(literal_job(l));
    return out;
}

Rational max_cost(const Instance& inst, const std::vector<std::size_t>& order) {
    return naive_value(inst, order, RiskCriterion::maximum());
}

}  // namespace

TEST_CASE("dimacs round trip and errors") {
    const auto f = parse_dimacs("c sample\np cnf 4 5\n1 -2 -3 0\n-2 -3 4 0\n-1 2 -4 0\n1 2\n3 0\n1 3 -4 0\n");
    CHECK(f == kFour);
    CHECK(parse_dimacs(to_dimacs(kFour)) == kFour);
    CHECK_THROWS_AS(parse_dimacs("1 2 0\n"), Error);
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 5 0\n"), Error);
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 2\n1 2 0\n"), Error);
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 2\n"), Error);
    CHECK_THROWS_AS(parse_dimacs("p cnf 4 1\n1 2 3 4 0\n"), Error);
    try {
        parse_dimacs("p cnf 2 1\n1 x 0\n");
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidFormula);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("formula helpers") {
    CHECK(literal_job(1) == 0);
    CHECK(literal_job(-1) == 1);
    CHECK(literal_job(3) == 4);
    CHECK(literal_job(-4) == 7);
    CHECK(is_satisfiable(kFour));
    CHECK_FALSE(is_satisfiable(CnfFormula{1, {{1}, {-1}}}));
    CHECK(min_satisfied_clauses(CnfFormula{1, {{1}, {-1}}}) == 1);
    CHECK(min_satisfied_clauses(CnfFormula{2, {{1, 2}, {-1}}}) == 1);

    const auto padded = pad_to_three_literals(CnfFormula{1, {{1}, {1, -1}}});
    CHECK(padded.num_vars == 3);
    CHECK(padded.clauses.size() == 4);
    for (const auto& c : padded.clauses) CHECK(c.size() == 3);
    Rng rng(13);
    for (int i = 0; i < 200; ++i) {
        const auto f = random_formula(rng, 1 + i % 3, 1 + i % 4);
        CHECK(is_satisfiable(pad_to_three_literals(f)) == is_satisfiable(f));
    }
}

TEST_CASE("due-date table of the VaR gadget") {
    const auto g = min3sat_to_var(kFour, 2, R("1/2"));
    const std::vector<std::vector<int>> table = {{1, 2, 2, 1, 1}, {2, 2, 1, 2, 2}, {4, 4, 3, 3, 4}, {3, 3, 4, 4, 4},
                                                 {6, 6, 6, 5, 5}, {5, 5, 6, 6, 6}, {8, 7, 8, 8, 8}, {8, 8, 7, 8, 7}};
    REQUIRE(g.instance.n == 8);
    for (std::size_t job = 0; job < 8; ++job)
        for (std::size_t k = 0; k < 5; ++k) CHECK(g.instance.scenarios[k].d[job] == table[job][k]);
    for (std::size_t k = 0; k < g.instance.num_scenarios(); ++k)
        for (const auto& p : g.instance.scenarios[k].p) CHECK(p == 1);
    CHECK(g.threshold == 0);
}

TEST_CASE("VaR gadget probabilities in both branches") {
    // l = m - L = 3, l/m = 3/5 >= 1/2.
    const auto late = min3sat_to_var(kFour, 2, R("1/2"));
    CHECK(late.dummy_case == DummyCase::AllLate);
    CHECK(late.instance.scenarios.back().prob == R("1/6"));
    CHECK(late.instance.scenarios[0].prob == R("1/6"));
    // l = 1 < 4/5 * 5.
    const auto ontime = min3sat_to_var(kFour, 4, R("4/5"));
    CHECK(ontime.dummy_case == DummyCase::AllOnTime);
    CHECK(ontime.instance.scenarios.back().prob == R("3/4"));
    CHECK(ontime.instance.scenarios.back().d == std::vector<Rational>(8, Rational(8)));
    // l = alpha m exactly.
    const auto none = min3sat_to_var(kFour, 3, R("2/5"));
    CHECK(none.dummy_case == DummyCase::Omitted);
    CHECK(none.instance.num_scenarios() == 5);
    CHECK_THROWS_AS(min3sat_to_var(kFour, 5, R("1/2")), Error);
    CHECK_THROWS_AS(min3sat_to_var(kFour, 0, R("1/2")), Error);
    CHECK_THROWS_AS(min3sat_to_var(kFour, 2, 1), Error);
}

TEST_CASE("VaR gadget answers the source question on small formulas") {
    const std::vector<CnfFormula> formulas = {
        CnfFormula{1, {{1}, {-1}}}, CnfFormula{1, {{1}, {1}}}, CnfFormula{2, {{1, 2}, {-1}, {-2}}},
        CnfFormula{2, {{1, -2}, {2}, {-1, 2}}}};
    for (const auto& f : formulas)
        for (std::size_t L = 1; L < f.clauses.size(); ++L)
            for (const char* a : {"1/4", "1/2", "3/4"})
                for (Objective obj : {Objective::MaxT, Objective::SumT, Objective::SumU}) {
                    const auto g = min3sat_to_var(f, L, R(a), obj);
                    const bool yes = min_satisfied_clauses(f) <= L;
                    CHECK((naive_optimum(g.instance, RiskCriterion::value_at_risk(R(a))) <= 0) == yes);
                }
}

TEST_CASE("duplicating clauses keeps the answer") {
    const CnfFormula f{2, {{1, 2}, {-1}, {-2}}};
    CnfFormula twice = f;
    for (const auto& c : f.clauses) twice.clauses.push_back(c);
    for (std::size_t L = 1; L < f.clauses.size(); ++L) {
        const auto a = min3sat_to_var(f, L, R("1/2"));
        const auto b = min3sat_to_var(twice, 2 * L, R("1/2"));
        const auto c = RiskCriterion::value_at_risk(R("1/2"));
        CHECK((naive_optimum(a.instance, c) <= 0) == (naive_optimum(b.instance, c) <= 0));
    }
}

TEST_CASE("minmax total tardiness gadget") {
    const auto g = threesat_to_minmax_unit_sumT(kFour);
    CHECK(g.threshold == 2);
    REQUIRE(g.instance.num_scenarios() == 9);
    CHECK(g.instance.scenarios[5].d[0] == R("1/2"));
    CHECK(g.instance.scenarios[6].d[3] == R("5/2"));
    CHECK(g.instance.scenarios[5].d[2] == 8);
    CHECK(max_cost(g.instance, jobs({1, -1, -2, 2, 3, -3, -4, 4})) <= 2);

    const auto sat = threesat_to_minmax_unit_sumT(CnfFormula{1, {{1}}});
    CHECK(naive_optimum(sat.instance, RiskCriterion::maximum()) <= 2);
    const auto unsat = threesat_to_minmax_unit_sumT(CnfFormula{1, {{1}, {-1}}});
    CHECK(naive_optimum(unsat.instance, RiskCriterion::maximum()) >= R("5/2"));
}

TEST_CASE("minmax late-job count gadget") {
    const auto g = threesat_to_minmax_sumU_proc(kFour);
    CHECK(g.threshold == 4);
    const auto& first = g.instance.scenarios[0];
    CHECK(first.p == Rs({0, 1, 1, 0, 1, 0, 0, 0}));
    CHECK(g.instance.scenarios[5].p == Rs({2, 2, 0, 0, 0, 0, 0, 0}));
    for (const auto& d : first.d) CHECK(d == 2);
    CHECK(max_cost(g.instance, jobs({1, -2, 3, -4, -1, 2, -3, 4})) <= 4);

    const auto sat = threesat_to_minmax_sumU_proc(CnfFormula{1, {{1}}});
    CHECK(naive_optimum(sat.instance, RiskCriterion::maximum()) <= sat.threshold);
    const auto unsat = threesat_to_minmax_sumU_proc(CnfFormula{1, {{1}, {-1}}});
    CHECK(naive_optimum(unsat.instance, RiskCriterion::maximum()) > unsat.threshold);
}

TEST_CASE("selection gadget") {
    CHECK(selection_optimum(SelectionInstance{3, 1, {{0, 0, 0}}}) == 0);
    const SelectionInstance one{3, 1, {{1, 0, 0}}};
    CHECK(selection_optimum(one) == 0);
    CHECK(naive_optimum(selection_to_minmax_unit_sumU(one), RiskCriterion::maximum()) == 0);

    Rng rng(17);
    for (int i = 0; i < 20; ++i) {
        SelectionInstance s{5, 2, std::vector<std::vector<int>>(3, std::vector<int>(5))};
        for (auto& row : s.costs)
            for (auto& c : row) c = uniform_int(rng, 0, 1);
        const auto inst = selection_to_minmax_unit_sumU(s);
        CHECK(naive_optimum(inst, RiskCriterion::maximum()) == static_cast<long long>(selection_optimum(s)));
    }
    CHECK_THROWS_AS(validate_selection(SelectionInstance{2, 3, {{0, 1}}}), Error);
    CHECK_THROWS_AS(validate_selection(SelectionInstance{2, 1, {{0, 2}}}), Error);
}

TEST_CASE("weighted to expectation") {
    Instance one;
    one.n = 1;
    one.objective = Objective::SumWT;
    one.weights = Rs({4});
    one.scenarios.push_back({1, Rs({3}), Rs({1}), std::nullopt});
    const auto e1 = weighted_to_exp(one);
    CHECK(naive_value(e1, {0}, RiskCriterion::expectation()) == 2);

    Instance two;
    two.n = 2;
    two.objective = Objective::SumWT;
    two.weights = Rs({1, 3});
    two.scenarios.push_back({1, Rs({2, 3}), Rs({1, 2}), std::nullopt});
    const auto e2 = weighted_to_exp(two);
    for (const auto& order : testing_support::feasible_orders(two))
        CHECK(4 * naive_value(e2, order, RiskCriterion::expectation()) == testing_support::naive_cost(two, order, 0));
    CHECK_THROWS_AS(weighted_to_exp(testing_support::worked_instance()), Error);
}

TEST_CASE("flow-time inversion") {
    Rng rng(19);
    GeneratorOptions g;
    g.n = 3;
    g.K = 2;
    g.objective = Objective::SumWC;
    g.edge_prob = 0.3;
    for (int i = 0; i < 10; ++i) {
        const Instance inst = random_instance(rng, g);
        const Instance inv = invert_flowtime(inst);
        const Instance back = invert_flowtime(inv);
        for (const auto& order : testing_support::feasible_orders(inst)) {
            const std::vector<std::size_t> rev(order.rbegin(), order.rend());
            CHECK(testing_support::naive_costs(inst, order) == testing_support::naive_costs(inv, rev));
            CHECK(testing_support::naive_costs(back, order) == testing_support::naive_costs(inst, order));
        }
    }
    CHECK(reverse_schedule(Schedule{{2, 0, 1}}) == Schedule{{1, 0, 2}});
}

TEST_CASE("zero scenario turns cvar into expectation") {
    const auto inst = testing_support::worked_instance();
    const auto aug = add_zero_scenario(inst, R("1/2"));
    for (const auto& order : testing_support::feasible_orders(inst)) {
        CHECK(naive_value(aug, order, RiskCriterion::conditional_value_at_risk(R("1/2"))) ==
              naive_value(inst, order, RiskCriterion::expectation()));
    }
    CHECK(naive_value(aug, {0, 1, 2, 3}, RiskCriterion::conditional_value_at_risk(R("1/2"))) == 26);
    CHECK_THROWS_AS(add_zero_scenario(inst, 1), Error);
}

TEST_CASE("max scenario augmentation") {
    const auto inst = testing_support::worked_instance();
    const auto var = add_max_scenario(inst, R("1/3"), MaxScenarioMode::VaR);
    for (const auto& order : testing_support::feasible_orders(inst))
        CHECK(naive_value(var.instance, order, RiskCriterion::value_at_risk(R("1/3"))) ==
              naive_value(inst, order, RiskCriterion::maximum()));

    Instance k2 = inst;
    k2.scenarios.resize(2);
    k2.scenarios[0].prob = R("1/2");
    k2.scenarios[1].prob = R("1/2");
    const auto cv = add_max_scenario(k2, R("1/4"), MaxScenarioMode::CVaR);
    CHECK(cv.scenario_prob == R("1/4"));
    CHECK(cv.dummy_prob == R("1/2"));
    for (const auto& order : testing_support::feasible_orders(k2)) {
        const Rational lhs = naive_value(cv.instance, order, RiskCriterion::conditional_value_at_risk(R("1/4")));
        const Rational rhs =
            (cv.dummy_prob * cv.dummy_cost + cv.scenario_prob * naive_value(k2, order, RiskCriterion::maximum())) /
            R("3/4");
        CHECK(lhs == rhs);
    }
    CHECK_THROWS_AS(add_max_scenario(k2, R("1/2"), MaxScenarioMode::CVaR), Error);
    try {
        add_max_scenario(k2, R("3/5"), MaxScenarioMode::CVaR);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::AlphaOutOfRange);
    }
}
