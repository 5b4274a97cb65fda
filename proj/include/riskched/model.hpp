#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "riskched/rational.hpp"

namespace riskched {

enum class Objective { SumC, SumWC, SumT, SumWT, SumU, SumWU, MaxT, MaxWT };

std::string_view to_string(Objective objective);
/// Parses the file spelling ("sumC", "maxWT", ...); returns nullopt when unknown.
std::optional<Objective> parse_objective(std::string_view text);
bool is_weighted(Objective objective);
bool is_bottleneck(Objective objective);

struct Scenario {
    Rational prob;
    std::vector<Rational> p;
    std::vector<Rational> d;
    /// Scenario-dependent weights; when absent the instance weights apply.
    std::optional<std::vector<Rational>> w;
};

using Edge = std::pair<std::size_t, std::size_t>;

struct Instance {
    std::size_t n = 0;
    std::vector<Rational> weights;
    std::vector<Edge> precedence;
    std::vector<Scenario> scenarios;
    Objective objective = Objective::SumC;

    std::size_t num_scenarios() const { return scenarios.size(); }
    const Rational& weight(std::size_t scenario, std::size_t job) const {
        const auto& s = scenarios[scenario];
        return s.w ? (*s.w)[job] : weights[job];
    }
};

/// A job permutation; `order[k]` is the job processed in position k.
struct Schedule {
    std::vector<std::size_t> order;

    friend bool operator==(const Schedule&, const Schedule&) = default;
    friend auto operator<=>(const Schedule&, const Schedule&) = default;
};

std::string to_string(const Schedule& schedule);

struct Atom {
    Rational value;
    Rational prob;

    friend bool operator==(const Atom&, const Atom&) = default;
};

/// Finite distribution in canonical form: atoms sorted ascending by value,
/// values distinct, probabilities positive and summing to one.
class Distribution {
public:
    /// Merges equal values and sorts; throws Error(InvalidDistribution) when a
    /// probability is not positive or the total is not exactly one.
    explicit Distribution(std::vector<Atom> atoms);

    std::span<const Atom> atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    const Atom& operator[](std::size_t i) const { return atoms_[i]; }
    /// Smallest atom probability.
    Rational min_prob() const;

private:
    std::vector<Atom> atoms_;
};

enum class ValidationCode {
    CycleInPrecedence,
    ProbabilityNotOne,
    LengthMismatch,
    NonpositiveProbability,
    NoScenarios,
    EdgeOutOfRange,
    NegativeValue,
    NonpositiveWeight,
};

std::string_view to_string(ValidationCode code);

struct ValidationIssue {
    ValidationCode code;
    std::string message;
    /// JSON pointer of the offending element in the instance file format.
    std::string path;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;

    bool ok() const { return issues.empty(); }
    bool has(ValidationCode code) const;
};

ValidationReport validate_instance(const Instance& inst);
/// Throws Error(InvalidInstance) listing every issue.
void require_valid(const Instance& inst);

bool is_feasible(const Instance& inst, const Schedule& schedule);

std::vector<Rational> completion_times(const Schedule& schedule, const Scenario& scenario);

/// Cost of `schedule` under one scenario; `weights` are used unless the
/// scenario carries its own.
Rational scenario_cost(const Schedule& schedule, const Scenario& scenario, Objective objective,
                       std::span<const Rational> weights);

/// Per-scenario costs in scenario order.
std::vector<Rational> scenario_costs(const Schedule& schedule, const Instance& inst);

Distribution cost_distribution(const Schedule& schedule, const Instance& inst);

/// Visits every linear extension in lexicographic order. The visitor returns
/// false to stop early.
void for_each_linear_extension(const Instance& inst, const std::function<bool(const Schedule&)>& visit);

std::vector<Schedule> linear_extensions(const Instance& inst);

/// Number of linear extensions, saturated at `cap + 1`.
std::uint64_t count_linear_extensions(const Instance& inst, std::uint64_t cap);

/// Lexicographically smallest topological order; the instance must be acyclic.
Schedule topological_order(const Instance& inst);

/// Probability weighted average of each job's processing time.
std::vector<Rational> expected_processing_times(const Instance& inst);
/// True when every scenario has identical processing times.
bool has_deterministic_processing_times(const Instance& inst);
bool is_unit_time(const Instance& inst);

}  // namespace riskched
