#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "riskched/model.hpp"
#include "riskched/reductions.hpp"

namespace riskched {

using Rng = std::mt19937_64;

/// Knobs for random instances. Integer data is drawn uniformly from the
/// stated closed ranges.
struct GeneratorOptions {
    std::size_t n = 5;
    std::size_t K = 3;
    Objective objective = Objective::SumWT;
    int p_min = 1;
    int p_max = 10;
    int d_min = 0;
    int d_max = 20;
    int w_max = 5;
    bool unit_time = false;
    bool deterministic_p = false;
    bool deterministic_d = false;
    /// Per-scenario weights in [0, w_max]; forces deterministic p.
    bool scenario_weights = false;
    bool uniform_probabilities = false;
    /// Probability of each forward edge of a hidden random order.
    double edge_prob = 0.0;
};

/// K positive probabilities over one common denominator that sum to 1.
std::vector<Rational> random_probabilities(Rng& rng, std::size_t K);

Instance random_instance(Rng& rng, const GeneratorOptions& opt);

/// Between 1 and max_atoms atoms with integer values in [0, max_value].
Distribution random_distribution(Rng& rng, std::size_t max_atoms, int max_value);

/// m clauses of 1 to 3 literals over distinct variables.
CnfFormula random_formula(Rng& rng, std::size_t num_vars, std::size_t m);

int uniform_int(Rng& rng, int lo, int hi);

}  // namespace riskched
