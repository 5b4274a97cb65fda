#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "riskched/model.hpp"
#include "riskched/risk.hpp"

namespace riskched {

enum class ApproxBasis { LiftExpectation, LpRound2, VarSubsetLp, MeanAssignmentK };

std::string_view to_string(ApproxBasis basis);

struct Certificate {
    enum class Kind { Exact, Approx, Fptas };

    Kind kind = Kind::Exact;
    /// Approximation ratio for Approx, epsilon for Fptas, unused for Exact.
    Rational parameter;
    std::optional<ApproxBasis> basis;

    static Certificate exact() { return {}; }
    static Certificate approx(Rational ratio, ApproxBasis basis) { return {Kind::Approx, std::move(ratio), basis}; }
    static Certificate fptas(Rational epsilon) { return {Kind::Fptas, std::move(epsilon), std::nullopt}; }

    /// "exact", "approx(2)", "fptas(1/4)".
    std::string str() const;
    /// Bound on value / optimum implied by the certificate (1, ratio or 1+eps).
    Rational guarantee() const;
};

struct SolveResult {
    Schedule schedule;
    /// Criterion value of `schedule`, recomputed from its cost distribution.
    Rational value;
    RiskCriterion criterion = RiskCriterion::expectation();
    Certificate certificate;
    /// LP relaxation optimum, when the solver computes one.
    std::optional<double> lower_bound;
    /// LP completion times C*_j, when the solver computes them.
    std::vector<double> lp_completion;
};

inline constexpr std::uint64_t kDefaultExtensionCap = 3628800;  // 10!
inline constexpr std::uint64_t kDefaultThresholdCap = 2000000;

/// Optimal schedule over all linear extensions; ties go to the
/// lexicographically smallest order. Throws TooLarge above `cap` extensions.
SolveResult brute_force(const Instance& inst, const RiskCriterion& criterion,
                        std::uint64_t cap = kDefaultExtensionCap);

struct Assignment {
    /// column_of_row[i] is the column matched to row i.
    std::vector<std::size_t> column_of_row;
    Rational total;
};

/// Minimum-cost perfect matching of a square matrix. Among optimal matchings
/// the lexicographically smallest column_of_row is returned.
Assignment hungarian(const std::vector<std::vector<Rational>>& cost);

/// cost[i][j] = sum_k factor[k] * c_ijk, where c_ijk is the cost of job j
/// finishing at time i + 1 under scenario k. Checks the unit-time, no
/// precedence, sumWU/sumWT preconditions.
std::vector<std::vector<Rational>> unit_time_cost_matrix(const Instance& inst, const std::vector<Rational>& factor);

/// Min-Exp for unit-time sumWU/sumWT (and the unweighted forms) without
/// precedence, as an assignment of jobs to positions.
SolveResult assignment_min_exp_unit(const Instance& inst);

/// Min-Exp sumWC/sumC without precedence: ratio rule on expected processing
/// times, or on expected weights when processing times are deterministic.
SolveResult wspt_min_exp_sumwc(const Instance& inst);

/// Minmax maxT/maxWT by backward greedy over successor-free jobs.
SolveResult minmax_bottleneck(const Instance& inst);

/// A schedule with f(pi, xi_i) <= t_i for every scenario, if one exists.
std::optional<Schedule> threshold_feasible(const Instance& inst, const std::vector<Rational>& t);

/// Instance whose unit-weight maxT minmax value is 0 exactly for schedules
/// meeting the thresholds: d'_j(xi_i) = t_i / w_j(xi_i) + d_j(xi_i).
Instance threshold_instance(const Instance& inst, const std::vector<Rational>& t);

/// max over scenarios and jobs of w_j [P(xi) - min_k d_k(xi)]^+.
Rational f_max_bound(const Instance& inst);

/// Exact optimum of a monotone criterion for maxT/maxWT with integer data by
/// enumerating threshold vectors in {0..f_max}^K.
SolveResult pseudo_poly_bottleneck(const Instance& inst, const RiskCriterion& criterion,
                                   std::uint64_t cap = kDefaultThresholdCap);

/// Threshold grid {0, 1, (1+eps)^l : l = 1..eta} with (1+eps)^eta >= f_max.
std::vector<Rational> fptas_grid(const Rational& f_max, const Rational& epsilon);

/// True when every integer 0..f_max is a grid point, in which case the
/// FPTAS is exact on integer data. For eps < 1 this means f_max <= 1.
bool grid_covers_integers(const Rational& f_max, const Rational& epsilon);

/// (1+eps)-approximation over the geometric threshold grid; eps in (0,1).
SolveResult fptas_bottleneck(const Instance& inst, const RiskCriterion& criterion, const Rational& epsilon,
                             std::uint64_t cap = kDefaultThresholdCap);

}  // namespace riskched
