#pragma once

#include <cstddef>
#include <limits>
#include <string_view>
#include <vector>

#include "riskched/model.hpp"

namespace riskched::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Solver tolerances.
inline constexpr double kFeasibilityTol = 1e-7;
inline constexpr double kPivotTol = 1e-12;
inline constexpr double kOptimalityTol = 1e-9;
inline constexpr double kBoundTol = 1e-9;

enum class Relation { LessEqual, Equal, GreaterEqual };

struct Row {
    std::vector<double> coefficients;
    Relation relation = Relation::GreaterEqual;
    double rhs = 0.0;
};

/// Minimization problem in row form with per-variable bounds.
struct Problem {
    std::vector<double> objective;
    std::vector<Row> rows;
    std::vector<double> lower;
    std::vector<double> upper;

    std::size_t num_variables() const { return objective.size(); }

    /// Appends a variable and widens every existing row; returns its index.
    std::size_t add_variable(double cost, double lo = 0.0, double hi = kInfinity);
    /// Adds a row; coefficients shorter than the variable count are zero-padded.
    void add_row(std::vector<double> coefficients, Relation relation, double rhs);
};

enum class Status { Optimal, Infeasible, Unbounded };

std::string_view to_string(Status status);

struct Solution {
    Status status = Status::Infeasible;
    std::vector<double> values;
    double objective = 0.0;
};

/// Two-phase dense tableau simplex with Bland's rule. Infeasible/unbounded
/// problems are reported through the status. Throws Error(NumericalBreakdown)
/// if an optimal basis fails the residual checks or a pivot is too small, and
/// Error(LpFailure) for malformed problems.
Solution solve(const Problem& problem);

/// Largest row residual and bound violation of `values`.
struct Residuals {
    double row = 0.0;
    double bound = 0.0;
};
Residuals residuals(const Problem& problem, const std::vector<double>& values);

/// Linear-ordering relaxation of the feasible completion-time vectors.
struct VcRelaxation {
    Problem problem;
    std::size_t n = 0;
    /// delta_index[i][j] for i != j; unused on the diagonal.
    std::vector<std::vector<std::size_t>> delta_index;
    std::vector<std::size_t> completion_index;
    std::size_t num_delta = 0;
    std::size_t num_pair_rows = 0;
    std::size_t num_triangle_rows = 0;
    std::size_t num_completion_rows = 0;

    std::size_t delta(std::size_t i, std::size_t j) const { return delta_index[i][j]; }
    std::size_t completion(std::size_t j) const { return completion_index[j]; }
};

/// Variables delta_ij (i != j) in [0,1] plus C_j with rows
/// C_j = p_j + sum_i delta_ij p_i, delta_ij + delta_ji = 1, and
/// delta_ij + delta_jk + delta_ki >= 1 for every ordered triple; precedence
/// edges fix delta_ij = 1. Processing times must be deterministic.
VcRelaxation build_vc_relaxation(const Instance& inst);

}  // namespace riskched::lp
