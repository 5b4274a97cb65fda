#pragma once

// Test helpers and oracles written independently of the library evaluators.

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "riskched/model.hpp"
#include "riskched/rational.hpp"
#include "riskched/risk.hpp"

namespace testing_support {

using riskched::Distribution;
using riskched::Instance;
using riskched::Objective;
using riskched::Rational;
using riskched::RiskCriterion;
using riskched::Scenario;
using riskched::Schedule;

inline Rational R(const char* text) { return Rational::parse(text); }

inline std::vector<Rational> Rs(std::initializer_list<long long> values) {
    std::vector<Rational> out;
    for (auto v : values) out.emplace_back(v);
    return out;
}

inline Distribution make_distribution(const std::vector<std::pair<Rational, Rational>>& atoms) {
    std::vector<riskched::Atom> a;
    for (const auto& [v, p] : atoms) a.push_back({v, p});
    return Distribution(std::move(a));
}

// Atoms of the four-job worked example.
inline Distribution worked_distribution() {
    return make_distribution({{13, R("3/10")}, {22, R("1/10")}, {29, R("2/10")}, {33, R("1/10")}, {36, R("3/10")}});
}

inline Instance worked_instance() {
    Instance inst;
    inst.n = 4;
    inst.objective = Objective::SumC;
    inst.weights = Rs({1, 1, 1, 1});
    const std::vector<std::vector<long long>> p = {{1, 1, 1, 4}, {2, 2, 2, 4}, {3, 3, 3, 2}, {3, 3, 5, 2}, {4, 4, 4, 0}};
    const std::vector<const char*> probs = {"3/10", "1/10", "2/10", "1/10", "3/10"};
    for (std::size_t k = 0; k < p.size(); ++k) {
        Scenario s;
        s.prob = R(probs[k]);
        for (auto x : p[k]) s.p.emplace_back(x);
        s.d = Rs({0, 0, 0, 0});
        inst.scenarios.push_back(s);
    }
    return inst;
}

// Cost of `order` under scenario k, from first principles.
inline Rational naive_cost(const Instance& inst, const std::vector<std::size_t>& order, std::size_t k) {
    const Scenario& s = inst.scenarios[k];
    Rational t, sum, worst;
    for (std::size_t j : order) {
        t += s.p[j];
        const Rational w = s.w ? (*s.w)[j] : inst.weights[j];
        const Rational late = t > s.d[j] ? t - s.d[j] : Rational(0);
        const bool is_late = t > s.d[j];
        switch (inst.objective) {
            case Objective::SumC: sum += t; break;
            case Objective::SumWC: sum += w * t; break;
            case Objective::SumT: sum += late; break;
            case Objective::SumWT: sum += w * late; break;
            case Objective::SumU: sum += is_late ? 1 : 0; break;
            case Objective::SumWU: sum += is_late ? w : Rational(0); break;
            case Objective::MaxT: worst = std::max(worst, late); break;
            case Objective::MaxWT: worst = std::max(worst, w * late); break;
        }
    }
    return inst.objective == Objective::MaxT || inst.objective == Objective::MaxWT ? worst : sum;
}

inline std::vector<Rational> naive_costs(const Instance& inst, const std::vector<std::size_t>& order) {
    std::vector<Rational> out;
    for (std::size_t k = 0; k < inst.scenarios.size(); ++k) out.push_back(naive_cost(inst, order, k));
    return out;
}

// Criterion value from raw (value, probability) pairs. CVaR uses the
// minimization form min_g g + E[(X-g)+]/(1-a), attained at an atom.
inline Rational naive_criterion(std::vector<std::pair<Rational, Rational>> atoms, const RiskCriterion& c) {
    std::sort(atoms.begin(), atoms.end());
    switch (c.kind()) {
        case RiskCriterion::Kind::Expectation: {
            Rational e;
            for (const auto& [v, p] : atoms) e += v * p;
            return e;
        }
        case RiskCriterion::Kind::Max: return atoms.back().first;
        case RiskCriterion::Kind::VaR: {
            Rational cum;
            for (const auto& [v, p] : atoms) {
                cum += p;
                if (cum >= c.alpha()) return v;
            }
            return atoms.back().first;
        }
        case RiskCriterion::Kind::CVaR: {
            std::optional<Rational> best;
            for (const auto& [g, _] : atoms) {
                Rational tail;
                for (const auto& [v, p] : atoms)
                    if (v > g) tail += (v - g) * p;
                const Rational val = g + tail / (Rational(1) - c.alpha());
                if (!best || val < *best) best = val;
            }
            return *best;
        }
    }
    return {};
}

inline Rational naive_value(const Instance& inst, const std::vector<std::size_t>& order, const RiskCriterion& c) {
    std::vector<std::pair<Rational, Rational>> atoms;
    for (std::size_t k = 0; k < inst.scenarios.size(); ++k)
        atoms.emplace_back(naive_cost(inst, order, k), inst.scenarios[k].prob);
    return naive_criterion(std::move(atoms), c);
}

inline bool respects_precedence(const Instance& inst, const std::vector<std::size_t>& order) {
    std::vector<std::size_t> pos(inst.n);
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
    for (auto [a, b] : inst.precedence)
        if (pos[a] > pos[b]) return false;
    return true;
}

// Every precedence-feasible permutation, by plain next_permutation.
inline std::vector<std::vector<std::size_t>> feasible_orders(const Instance& inst) {
    std::vector<std::size_t> perm(inst.n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<std::size_t>> out;
    do {
        if (respects_precedence(inst, perm)) out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

inline Rational naive_optimum(const Instance& inst, const RiskCriterion& c) {
    std::optional<Rational> best;
    for (const auto& order : feasible_orders(inst)) {
        const Rational v = naive_value(inst, order, c);
        if (!best || v < *best) best = v;
    }
    return *best;
}

}  // namespace testing_support
