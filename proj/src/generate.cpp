#include "riskched/generate.hpp"

#include <algorithm>
#include <numeric>

namespace riskched {

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

std::vector<Rational> random_probabilities(Rng& rng, std::size_t K) {
    std::vector<std::int64_t> parts(K);
    for (auto& x : parts) x = uniform_int(rng, 1, 12);
    const std::int64_t total = std::accumulate(parts.begin(), parts.end(), std::int64_t{0});
    std::vector<Rational> probs;
    for (auto x : parts) probs.emplace_back(x, total);
    return probs;
}

Instance random_instance(Rng& rng, const GeneratorOptions& opt) {
    Instance inst;
    inst.n = opt.n;
    inst.objective = opt.objective;
    for (std::size_t j = 0; j < opt.n; ++j) inst.weights.emplace_back(uniform_int(rng, 1, opt.w_max));

    const auto probs = opt.uniform_probabilities
                           ? std::vector<Rational>(opt.K, Rational(1, static_cast<std::int64_t>(opt.K)))
                           : random_probabilities(rng, opt.K);
    const bool fixed_p = opt.deterministic_p || opt.scenario_weights;
    std::vector<Rational> p0, d0;
    for (std::size_t j = 0; j < opt.n; ++j) {
        p0.emplace_back(opt.unit_time ? 1 : uniform_int(rng, opt.p_min, opt.p_max));
        d0.emplace_back(uniform_int(rng, opt.d_min, opt.d_max));
    }
    for (std::size_t k = 0; k < opt.K; ++k) {
        Scenario s{probs[k], p0, d0, std::nullopt};
        for (std::size_t j = 0; j < opt.n; ++j) {
            if (!fixed_p && !opt.unit_time) s.p[j] = Rational(uniform_int(rng, opt.p_min, opt.p_max));
            if (!opt.deterministic_d) s.d[j] = Rational(uniform_int(rng, opt.d_min, opt.d_max));
        }
        if (opt.scenario_weights) {
            s.w.emplace();
            for (std::size_t j = 0; j < opt.n; ++j) s.w->emplace_back(uniform_int(rng, 0, opt.w_max));
        }
        inst.scenarios.push_back(std::move(s));
    }

    if (opt.edge_prob > 0.0) {
        std::vector<std::size_t> hidden(opt.n);
        std::iota(hidden.begin(), hidden.end(), 0);
        std::shuffle(hidden.begin(), hidden.end(), rng);
        std::bernoulli_distribution edge(opt.edge_prob);
        for (std::size_t a = 0; a < opt.n; ++a)
            for (std::size_t b = a + 1; b < opt.n; ++b)
                if (edge(rng)) inst.precedence.emplace_back(hidden[a], hidden[b]);
    }
    return inst;
}

Distribution random_distribution(Rng& rng, std::size_t max_atoms, int max_value) {
    const std::size_t count = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<int>(max_atoms)));
    const auto probs = random_probabilities(rng, count);
    std::vector<Atom> atoms;
    for (std::size_t k = 0; k < count; ++k) atoms.push_back({Rational(uniform_int(rng, 0, max_value)), probs[k]});
    return Distribution(std::move(atoms));
}

CnfFormula random_formula(Rng& rng, std::size_t num_vars, std::size_t m) {
    CnfFormula f;
    f.num_vars = num_vars;
    std::vector<int> vars(num_vars);
    std::iota(vars.begin(), vars.end(), 1);
    for (std::size_t c = 0; c < m; ++c) {
        std::shuffle(vars.begin(), vars.end(), rng);
        const int len = uniform_int(rng, 1, static_cast<int>(std::min<std::size_t>(3, num_vars)));
        std::vector<int> clause;
        for (int i = 0; i < len; ++i) clause.push_back(uniform_int(rng, 0, 1) ? vars[i] : -vars[i]);
        f.clauses.push_back(std::move(clause));
    }
    return f;
}

}  // namespace riskched
