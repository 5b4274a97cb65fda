#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "riskched/model.hpp"

namespace riskched {

/// Clauses of signed 1-based literals: v for x_v, -v for its negation.
struct CnfFormula {
    std::size_t num_vars = 0;
    std::vector<std::vector<int>> clauses;

    friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

/// Throws Error(InvalidFormula) unless num_vars >= 1 and every clause holds
/// 1 to 3 nonzero literals over known variables.
void validate_formula(const CnfFormula& f);

/// DIMACS text: optional "c" comment lines, a "p cnf n m" header, then
/// zero-terminated clauses. Throws Error(InvalidFormula) with a line number.
CnfFormula parse_dimacs(std::string_view text);
std::string to_dimacs(const CnfFormula& f);

/// assignment[v] is the value of x_{v+1}.
std::size_t satisfied_clauses(const CnfFormula& f, const std::vector<bool>& assignment);
bool is_satisfiable(const CnfFormula& f);
/// Fewest clauses any assignment satisfies.
std::size_t min_satisfied_clauses(const CnfFormula& f);

/// Equivalent formula whose clauses each have exactly three literals over
/// distinct variables: duplicate literals merged, tautologies dropped, short
/// clauses expanded by resolution over other (possibly fresh) variables.
CnfFormula pad_to_three_literals(const CnfFormula& f);

/// Job index of J_{x_v} (positive) or J_{~x_v} (negative) for a literal.
std::size_t literal_job(int literal);

/// The gadget's dummy-scenario case.
enum class DummyCase {
    /// l/m >= alpha: dummy due dates 0.
    AllLate,
    /// l/m == alpha: the dummy would have probability 0 and is omitted.
    Omitted,
    /// l/m < alpha: dummy due dates 2n.
    AllOnTime,
};

std::string_view to_string(DummyCase c);

struct VarGadget {
    Instance instance;
    /// Some assignment satisfies at most L clauses iff a schedule has
    /// VaR_alpha <= threshold.
    Rational threshold;
    DummyCase dummy_case = DummyCase::AllLate;
    /// l = m - L.
    std::size_t l = 0;
};

/// Unit-time due-date gadget for VaR. The objective must be maxT, sumT or
/// sumU; requires 0 < L < m and alpha in (0,1).
VarGadget min3sat_to_var(const CnfFormula& f, std::size_t L, const Rational& alpha,
                         Objective objective = Objective::MaxT);

struct MinmaxGadget {
    Instance instance;
    /// The formula is satisfiable iff the minmax value is at most threshold.
    Rational threshold;
    /// Variables after padding; the instance has 2 * num_vars jobs.
    std::size_t num_vars = 0;
};

/// Unit-time due-date gadget for minmax sumT with threshold 2; unsatisfiable
/// formulas give minmax value at least 5/2.
MinmaxGadget threesat_to_minmax_unit_sumT(const CnfFormula& f);

/// Processing-time gadget for minmax sumU with common due date 2 and
/// threshold n.
MinmaxGadget threesat_to_minmax_sumU_proc(const CnfFormula& f);

struct SelectionInstance {
    std::size_t num_items = 0;
    std::size_t q = 1;
    /// costs[i][j] in {0,1}: item j under scenario i.
    std::vector<std::vector<int>> costs;
};

void validate_selection(const SelectionInstance& s);
/// Minmax cost over all q-subsets, by enumeration.
std::size_t selection_optimum(const SelectionInstance& s);

/// Unit-time minmax sumU instance with equal optimum.
Instance selection_to_minmax_unit_sumU(const SelectionInstance& s);

/// Deterministic sumWT/sumWU instance to an unweighted sumT/sumU expectation
/// instance with one scenario per job: E[F(pi)] = sum_j w_j cost_j(pi) / W.
Instance weighted_to_exp(const Instance& inst);

/// Swaps processing times and weights of a sumWC instance: p' = w (or 1
/// when the instance's weights are deterministic), scenario weights w' = p,
/// precedence reversed. A schedule maps to its reversal with equal
/// per-scenario cost.
Instance invert_flowtime(const Instance& inst);
Schedule reverse_schedule(const Schedule& s);

/// Adds a zero-cost scenario of probability alpha, scaling the others by
/// 1 - alpha, so that CVaR_alpha of the result equals the original
/// expectation. Requires alpha in (0,1).
Instance add_zero_scenario(const Instance& inst, const Rational& alpha);

enum class MaxScenarioMode { VaR, CVaR };

struct MaxScenarioAugmentation {
    Instance instance;
    /// Probability of each original scenario (alpha/K or beta).
    Rational scenario_prob;
    /// Probability of the dummy scenario (1 - alpha or gamma).
    Rational dummy_prob;
    /// Cost M of every schedule under the dummy scenario.
    Rational dummy_cost;
};

/// Appends a scenario with p = p_max, d = d_min and weights w_max, whose
/// cost dominates every original scenario cost. VaR mode: VaR_alpha equals
/// the original Max. CVaR mode: CVaR_alpha equals
/// (beta * Max + gamma * M) / (1 - alpha), M the dummy cost.
MaxScenarioAugmentation add_max_scenario(const Instance& inst, const Rational& alpha, MaxScenarioMode mode);

}  // namespace riskched
