#include "riskched/model.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <sstream>

#include "riskched/error.hpp"

namespace riskched {

namespace {

constexpr std::array<std::pair<Objective, std::string_view>, 8> kObjectiveNames{{
    {Objective::SumC, "sumC"},
    {Objective::SumWC, "sumWC"},
    {Objective::SumT, "sumT"},
    {Objective::SumWT, "sumWT"},
    {Objective::SumU, "sumU"},
    {Objective::SumWU, "sumWU"},
    {Objective::MaxT, "maxT"},
    {Objective::MaxWT, "maxWT"},
}};

}  // namespace

std::string_view to_string(Objective objective) {
    for (auto [o, name] : kObjectiveNames)
        if (o == objective) return name;
    return "?";
}

std::optional<Objective> parse_objective(std::string_view text) {
    for (auto [o, name] : kObjectiveNames)
        if (name == text) return o;
    return std::nullopt;
}

bool is_weighted(Objective objective) {
    return objective == Objective::SumWC || objective == Objective::SumWT || objective == Objective::SumWU ||
           objective == Objective::MaxWT;
}

bool is_bottleneck(Objective objective) { return objective == Objective::MaxT || objective == Objective::MaxWT; }

std::string to_string(const Schedule& schedule) {
    std::ostringstream os;
    for (std::size_t k = 0; k < schedule.order.size(); ++k) os << (k ? "," : "") << schedule.order[k];
    return os.str();
}

Distribution::Distribution(std::vector<Atom> atoms) {
    if (atoms.empty()) throw Error(ErrorCode::InvalidDistribution, "distribution has no atoms");
    Rational total;
    for (const auto& a : atoms) {
        if (a.prob.sign() <= 0)
            throw Error(ErrorCode::InvalidDistribution, "atom probability " + a.prob.str() + " is not positive");
        total += a.prob;
    }
    if (total != Rational(1))
        throw Error(ErrorCode::InvalidDistribution, "atom probabilities sum to " + total.str() + ", not 1");
    std::stable_sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.value < b.value; });
    for (auto& a : atoms) {
        if (!atoms_.empty() && atoms_.back().value == a.value)
            atoms_.back().prob += a.prob;
        else
            atoms_.push_back(std::move(a));
    }
}

Rational Distribution::min_prob() const {
    Rational m = atoms_.front().prob;
    for (const auto& a : atoms_) m = min(m, a.prob);
    return m;
}

std::string_view to_string(ValidationCode code) {
    switch (code) {
        case ValidationCode::CycleInPrecedence: return "CycleInPrecedence";
        case ValidationCode::ProbabilityNotOne: return "ProbabilityNotOne";
        case ValidationCode::LengthMismatch: return "LengthMismatch";
        case ValidationCode::NonpositiveProbability: return "NonpositiveProbability";
        case ValidationCode::NoScenarios: return "NoScenarios";
        case ValidationCode::EdgeOutOfRange: return "EdgeOutOfRange";
        case ValidationCode::NegativeValue: return "NegativeValue";
        case ValidationCode::NonpositiveWeight: return "NonpositiveWeight";
    }
    return "?";
}

bool ValidationReport::has(ValidationCode code) const {
    return std::any_of(issues.begin(), issues.end(), [code](const auto& i) { return i.code == code; });
}

ValidationReport validate_instance(const Instance& inst) {
    ValidationReport report;
    auto add = [&](ValidationCode code, std::string message, std::string path) {
        report.issues.push_back({code, std::move(message), std::move(path)});
    };

    if (inst.weights.size() != inst.n)
        add(ValidationCode::LengthMismatch,
            "weights has " + std::to_string(inst.weights.size()) + " entries, expected " + std::to_string(inst.n),
            "/weights");
    for (std::size_t j = 0; j < inst.weights.size(); ++j)
        if (inst.weights[j].sign() <= 0)
            add(ValidationCode::NonpositiveWeight, "job " + std::to_string(j) + ": weight must be positive",
                "/weights/" + std::to_string(j));

    if (inst.scenarios.empty()) add(ValidationCode::NoScenarios, "at least one scenario is required", "/scenarios");

    Rational total;
    for (std::size_t k = 0; k < inst.scenarios.size(); ++k) {
        const auto& s = inst.scenarios[k];
        const std::string base = "/scenarios/" + std::to_string(k);
        const std::string who = "scenario " + std::to_string(k);
        total += s.prob;
        if (s.prob.sign() <= 0)
            add(ValidationCode::NonpositiveProbability, who + ": probability " + s.prob.str() + " is not positive",
                base + "/prob");
        auto check_list = [&](const std::vector<Rational>& values, const char* field) {
            if (values.size() != inst.n) {
                add(ValidationCode::LengthMismatch,
                    who + ": " + field + " has " + std::to_string(values.size()) + " entries, expected " +
                        std::to_string(inst.n),
                    base + "/" + field);
                return;
            }
            for (std::size_t j = 0; j < values.size(); ++j) {
                if (values[j].sign() < 0)
                    add(ValidationCode::NegativeValue,
                        who + ", job " + std::to_string(j) + ": " + field + " = " + values[j].str() + " is negative",
                        base + "/" + field + "/" + std::to_string(j));
            }
        };
        check_list(s.p, "p");
        check_list(s.d, "d");
        if (s.w) check_list(*s.w, "w");
    }
    if (!inst.scenarios.empty() && total != Rational(1))
        add(ValidationCode::ProbabilityNotOne, "scenario probabilities sum to " + total.str() + ", not 1",
            "/scenarios");

    std::vector<std::size_t> indegree(inst.n, 0);
    std::vector<std::vector<std::size_t>> succ(inst.n);
    for (std::size_t e = 0; e < inst.precedence.size(); ++e) {
        auto [i, j] = inst.precedence[e];
        if (i >= inst.n || j >= inst.n) {
            add(ValidationCode::EdgeOutOfRange,
                "edge (" + std::to_string(i) + "," + std::to_string(j) + ") references a job >= " +
                    std::to_string(inst.n),
                "/precedence/" + std::to_string(e));
            continue;
        }
        succ[i].push_back(j);
        ++indegree[j];
    }
    std::vector<std::size_t> ready;
    for (std::size_t j = 0; j < inst.n; ++j)
        if (indegree[j] == 0) ready.push_back(j);
    std::size_t seen = 0;
    while (!ready.empty()) {
        std::size_t j = ready.back();
        ready.pop_back();
        ++seen;
        for (std::size_t s : succ[j])
            if (--indegree[s] == 0) ready.push_back(s);
    }
    if (seen != inst.n) {
        std::string jobs;
        for (std::size_t j = 0; j < inst.n; ++j)
            if (indegree[j] > 0) jobs += (jobs.empty() ? "" : ",") + std::to_string(j);
        add(ValidationCode::CycleInPrecedence, "precedence graph has a cycle through jobs {" + jobs + "}",
            "/precedence");
    }
    return report;
}

void require_valid(const Instance& inst) {
    auto report = validate_instance(inst);
    if (report.ok()) return;
    std::string message;
    for (const auto& issue : report.issues)
        message += (message.empty() ? "" : "; ") + std::string(to_string(issue.code)) + " (" + issue.message + ")";
    throw Error(ErrorCode::InvalidInstance, message);
}

bool is_feasible(const Instance& inst, const Schedule& schedule) {
    if (schedule.order.size() != inst.n) return false;
    std::vector<std::size_t> position(inst.n, inst.n);
    for (std::size_t k = 0; k < inst.n; ++k) {
        std::size_t j = schedule.order[k];
        if (j >= inst.n || position[j] != inst.n) return false;
        position[j] = k;
    }
    return std::all_of(inst.precedence.begin(), inst.precedence.end(),
                       [&](const Edge& e) { return position[e.first] < position[e.second]; });
}

std::vector<Rational> completion_times(const Schedule& schedule, const Scenario& scenario) {
    std::vector<Rational> c(schedule.order.size());
    Rational t;
    for (std::size_t j : schedule.order) {
        t += scenario.p[j];
        c[j] = t;
    }
    return c;
}

Rational scenario_cost(const Schedule& schedule, const Scenario& scenario, Objective objective,
                       std::span<const Rational> weights) {
    std::span<const Rational> w = scenario.w ? std::span<const Rational>(*scenario.w) : weights;
    Rational t;
    Rational cost;
    for (std::size_t j : schedule.order) {
        t += scenario.p[j];
        switch (objective) {
            case Objective::SumC: cost += t; break;
            case Objective::SumWC: cost += w[j] * t; break;
            case Objective::SumT: cost += positive_part(t - scenario.d[j]); break;
            case Objective::SumWT: cost += w[j] * positive_part(t - scenario.d[j]); break;
            case Objective::SumU:
                if (t > scenario.d[j]) cost += 1;
                break;
            case Objective::SumWU:
                if (t > scenario.d[j]) cost += w[j];
                break;
            case Objective::MaxT: cost = max(cost, positive_part(t - scenario.d[j])); break;
            case Objective::MaxWT: cost = max(cost, w[j] * positive_part(t - scenario.d[j])); break;
        }
    }
    return cost;
}

std::vector<Rational> scenario_costs(const Schedule& schedule, const Instance& inst) {
    std::vector<Rational> costs;
    costs.reserve(inst.scenarios.size());
    for (const auto& s : inst.scenarios) costs.push_back(scenario_cost(schedule, s, inst.objective, inst.weights));
    return costs;
}

Distribution cost_distribution(const Schedule& schedule, const Instance& inst) {
    std::vector<Atom> atoms;
    atoms.reserve(inst.scenarios.size());
    for (const auto& s : inst.scenarios)
        atoms.push_back({scenario_cost(schedule, s, inst.objective, inst.weights), s.prob});
    return Distribution(std::move(atoms));
}

void for_each_linear_extension(const Instance& inst, const std::function<bool(const Schedule&)>& visit) {
    const std::size_t n = inst.n;
    std::vector<std::vector<std::size_t>> succ(n);
    std::vector<std::size_t> pending(n, 0);
    for (auto [i, j] : inst.precedence) {
        succ[i].push_back(j);
        ++pending[j];
    }
    std::vector<char> used(n, 0);
    Schedule current;
    current.order.reserve(n);
    bool stop = false;

    std::function<void()> extend = [&]() {
        if (current.order.size() == n) {
            if (!visit(current)) stop = true;
            return;
        }
        for (std::size_t j = 0; j < n && !stop; ++j) {
            if (used[j] || pending[j] != 0) continue;
            used[j] = 1;
            for (std::size_t s : succ[j]) --pending[s];
            current.order.push_back(j);
            extend();
            current.order.pop_back();
            for (std::size_t s : succ[j]) ++pending[s];
            used[j] = 0;
        }
    };
    extend();
}

std::vector<Schedule> linear_extensions(const Instance& inst) {
    std::vector<Schedule> out;
    for_each_linear_extension(inst, [&](const Schedule& s) {
        out.push_back(s);
        return true;
    });
    return out;
}

std::uint64_t count_linear_extensions(const Instance& inst, std::uint64_t cap) {
    const std::size_t n = inst.n;
    const std::uint64_t limit = cap + 1;
    if (n <= 20) {
        std::vector<std::uint32_t> pred_mask(n, 0);
        for (auto [i, j] : inst.precedence) pred_mask[j] |= 1u << i;
        std::vector<std::uint64_t> ways(std::size_t{1} << n, 0);
        ways[0] = 1;
        for (std::uint32_t s = 0; s < ways.size(); ++s) {
            if (ways[s] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (s & (1u << j) || (pred_mask[j] & ~s) != 0) continue;
                auto& t = ways[s | (1u << j)];
                t = std::min(limit, t + ways[s]);
            }
        }
        return ways.back();
    }
    std::uint64_t count = 0;
    for_each_linear_extension(inst, [&](const Schedule&) { return ++count < limit; });
    return count;
}

Schedule topological_order(const Instance& inst) {
    Schedule first;
    for_each_linear_extension(inst, [&](const Schedule& s) {
        first = s;
        return false;
    });
    return first;
}

std::vector<Rational> expected_processing_times(const Instance& inst) {
    std::vector<Rational> e(inst.n);
    for (const auto& s : inst.scenarios)
        for (std::size_t j = 0; j < inst.n; ++j) e[j] += s.prob * s.p[j];
    return e;
}

bool has_deterministic_processing_times(const Instance& inst) {
    return std::all_of(inst.scenarios.begin(), inst.scenarios.end(),
                       [&](const Scenario& s) { return s.p == inst.scenarios.front().p; });
}

bool is_unit_time(const Instance& inst) {
    return std::all_of(inst.scenarios.begin(), inst.scenarios.end(), [](const Scenario& s) {
        return std::all_of(s.p.begin(), s.p.end(), [](const Rational& p) { return p == Rational(1); });
    });
}

}  // namespace riskched
