#include "riskched/exact.hpp"

#include <algorithm>
#include <numeric>

#include "riskched/error.hpp"

namespace riskched {

std::string_view to_string(ApproxBasis basis) {
    switch (basis) {
        case ApproxBasis::LiftExpectation: return "LiftExpectation";
        case ApproxBasis::LpRound2: return "LpRound2";
        case ApproxBasis::VarSubsetLp: return "VarSubsetLp";
        case ApproxBasis::MeanAssignmentK: return "MeanAssignmentK";
    }
    return "?";
}

std::string Certificate::str() const {
    switch (kind) {
        case Kind::Exact: return "exact";
        case Kind::Approx: return "approx(" + parameter.str() + ")";
        case Kind::Fptas: return "fptas(" + parameter.str() + ")";
    }
    return "?";
}

Rational Certificate::guarantee() const {
    switch (kind) {
        case Kind::Exact: return 1;
        case Kind::Approx: return parameter;
        case Kind::Fptas: return Rational(1) + parameter;
    }
    return 1;
}

namespace {

SolveResult make_result(const Instance& inst, Schedule schedule, const RiskCriterion& criterion, Certificate cert) {
    SolveResult r;
    r.value = evaluate(cost_distribution(schedule, inst), criterion);
    r.schedule = std::move(schedule);
    r.criterion = criterion;
    r.certificate = std::move(cert);
    return r;
}

void require_bottleneck(const Instance& inst) {
    if (!is_bottleneck(inst.objective))
        throw Error(ErrorCode::WrongObjective,
                    "needs maxT or maxWT, got " + std::string(to_string(inst.objective)));
}

// Weight the objective applies to job j under scenario k.
Rational objective_weight(const Instance& inst, std::size_t k, std::size_t j) {
    return is_weighted(inst.objective) ? inst.weight(k, j) : Rational(1);
}

Rational total_processing(const Scenario& s) {
    Rational sum;
    for (const auto& x : s.p) sum += x;
    return sum;
}

// Hungarian method with row and column potentials on a square matrix.
Assignment hungarian_core(const std::vector<std::vector<Rational>>& a) {
    const std::size_t n = a.size();
    Assignment out;
    out.column_of_row.assign(n, 0);
    if (n == 0) return out;
    std::vector<Rational> u(n + 1), v(n + 1);
    std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::vector<Rational> minv(n + 1);
        std::vector<char> minv_set(n + 1, 0), used(n + 1, 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = p[j0];
            std::optional<Rational> delta;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                Rational cur = a[i0 - 1][j - 1] - u[i0] - v[j];
                if (!minv_set[j] || cur < minv[j]) {
                    minv[j] = std::move(cur);
                    minv_set[j] = 1;
                    way[j] = j0;
                }
                if (!delta || minv[j] < *delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += *delta;
                    v[j] -= *delta;
                } else {
                    minv[j] -= *delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    for (std::size_t j = 1; j <= n; ++j) out.column_of_row[p[j] - 1] = j - 1;
    for (std::size_t i = 0; i < n; ++i) out.total += a[i][out.column_of_row[i]];
    return out;
}

void require_integer_data(const Instance& inst) {
    for (std::size_t k = 0; k < inst.num_scenarios(); ++k) {
        const auto& s = inst.scenarios[k];
        for (std::size_t j = 0; j < inst.n; ++j) {
            if (!s.p[j].is_integer() || !s.d[j].is_integer() || !objective_weight(inst, k, j).is_integer())
                throw Error(ErrorCode::NonIntegerData, "scenario " + std::to_string(k) + " job " + std::to_string(j) +
                                                           " has non-integer data");
        }
    }
}

// Minimizes the criterion over threshold vectors drawn from `grid` per
// scenario. A threshold vector t is skipped when h(t) cannot beat the
// incumbent, since any schedule meeting t costs at most h(t).
Schedule search_thresholds(const Instance& inst, const RiskCriterion& criterion, const std::vector<Rational>& grid,
                           std::uint64_t cap) {
    const std::size_t K = inst.num_scenarios();
    std::uint64_t count = 1;
    for (std::size_t k = 0; k < K; ++k) {
        if (count > cap / grid.size()) {
            count = cap + 1;
            break;
        }
        count *= grid.size();
    }
    if (count > cap)
        throw Error(ErrorCode::TooLarge, "threshold enumeration exceeds cap of " + std::to_string(cap));

    Schedule best = topological_order(inst);
    Rational best_value = evaluate(cost_distribution(best, inst), criterion);
    std::vector<std::size_t> idx(K, 0);
    std::vector<Rational> t(K, grid.front());
    while (true) {
        if (evaluate_costs(t, inst, criterion) < best_value) {
            if (auto s = threshold_feasible(inst, t)) {
                Rational v = evaluate(cost_distribution(*s, inst), criterion);
                if (v < best_value) {
                    best_value = std::move(v);
                    best = std::move(*s);
                }
            }
        }
        std::size_t k = 0;
        while (k < K && idx[k] + 1 == grid.size()) {
            idx[k] = 0;
            t[k] = grid.front();
            ++k;
        }
        if (k == K) break;
        t[k] = grid[++idx[k]];
    }
    return best;
}

}  // namespace

SolveResult brute_force(const Instance& inst, const RiskCriterion& criterion, std::uint64_t cap) {
    require_valid(inst);
    if (count_linear_extensions(inst, cap) > cap)
        throw Error(ErrorCode::TooLarge, "more than " + std::to_string(cap) + " linear extensions");
    std::optional<Schedule> best;
    Rational best_value;
    for_each_linear_extension(inst, [&](const Schedule& s) {
        Rational v = evaluate_costs(scenario_costs(s, inst), inst, criterion);
        if (!best || v < best_value) {
            best = s;
            best_value = std::move(v);
        }
        return true;
    });
    return make_result(inst, std::move(*best), criterion, Certificate::exact());
}

Assignment hungarian(const std::vector<std::vector<Rational>>& cost) {
    const std::size_t n = cost.size();
    for (const auto& row : cost)
        if (row.size() != n) throw Error(ErrorCode::InvalidParameter, "assignment matrix must be square");
    const Assignment opt = hungarian_core(cost);

    // Fix rows in order to the smallest column that keeps the optimum.
    Assignment out;
    out.total = opt.total;
    out.column_of_row.assign(n, 0);
    std::vector<char> taken(n, 0);
    Rational fixed;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            if (taken[c]) continue;
            std::vector<std::vector<Rational>> sub;
            for (std::size_t i = r + 1; i < n; ++i) {
                std::vector<Rational> row;
                for (std::size_t j = 0; j < n; ++j)
                    if (!taken[j] && j != c) row.push_back(cost[i][j]);
                sub.push_back(std::move(row));
            }
            if (fixed + cost[r][c] + hungarian_core(sub).total == opt.total) {
                out.column_of_row[r] = c;
                taken[c] = 1;
                fixed += cost[r][c];
                break;
            }
        }
    }
    return out;
}

std::vector<std::vector<Rational>> unit_time_cost_matrix(const Instance& inst, const std::vector<Rational>& factor) {
    require_valid(inst);
    const auto obj = inst.objective;
    if (obj != Objective::SumWU && obj != Objective::SumWT && obj != Objective::SumU && obj != Objective::SumT)
        throw Error(ErrorCode::WrongObjective, "assignment formulation needs sumWU or sumWT");
    if (!is_unit_time(inst))
        throw Error(ErrorCode::NotUnitTime, "assignment formulation needs unit processing times");
    if (!inst.precedence.empty()) throw Error(ErrorCode::HasPrecedence, "assignment formulation forbids precedence");

    const std::size_t n = inst.n;
    const bool tardiness = obj == Objective::SumWT || obj == Objective::SumT;
    std::vector<std::vector<Rational>> cost(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const Rational completion(static_cast<std::int64_t>(i + 1));
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < inst.num_scenarios(); ++k) {
                const auto& s = inst.scenarios[k];
                const Rational w = objective_weight(inst, k, j);
                if (tardiness)
                    cost[i][j] += factor[k] * w * positive_part(completion - s.d[j]);
                else if (completion > s.d[j])
                    cost[i][j] += factor[k] * w;
            }
        }
    }
    return cost;
}

SolveResult assignment_min_exp_unit(const Instance& inst) {
    std::vector<Rational> probs;
    for (const auto& s : inst.scenarios) probs.push_back(s.prob);
    Schedule schedule{hungarian(unit_time_cost_matrix(inst, probs)).column_of_row};
    return make_result(inst, std::move(schedule), RiskCriterion::expectation(), Certificate::exact());
}

SolveResult wspt_min_exp_sumwc(const Instance& inst) {
    require_valid(inst);
    if (inst.objective != Objective::SumWC && inst.objective != Objective::SumC)
        throw Error(ErrorCode::WrongObjective, "ratio rule needs sumWC or sumC");
    if (!inst.precedence.empty()) throw Error(ErrorCode::HasPrecedence, "ratio rule forbids precedence");

    const std::size_t n = inst.n;
    const bool scenario_weights =
        inst.objective == Objective::SumWC &&
        std::any_of(inst.scenarios.begin(), inst.scenarios.end(), [](const Scenario& s) { return s.w.has_value(); });
    std::vector<Rational> p, w(n);
    if (!scenario_weights) {
        p = expected_processing_times(inst);
        for (std::size_t j = 0; j < n; ++j) w[j] = objective_weight(inst, 0, j);
    } else {
        if (!has_deterministic_processing_times(inst))
            throw Error(ErrorCode::UnsupportedData,
                        "ratio rule needs deterministic weights or deterministic processing times");
        p = inst.scenarios.front().p;
        for (std::size_t k = 0; k < inst.num_scenarios(); ++k)
            for (std::size_t j = 0; j < n; ++j) w[j] += inst.scenarios[k].prob * inst.weight(k, j);
    }
    // Zero-weight jobs have an infinite ratio and go last.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const bool ia = w[a].is_zero(), ib = w[b].is_zero();
        if (ia || ib) return !ia && ib;
        return p[a] * w[b] < p[b] * w[a];
    });
    return make_result(inst, Schedule{std::move(order)}, RiskCriterion::expectation(), Certificate::exact());
}

SolveResult minmax_bottleneck(const Instance& inst) {
    require_valid(inst);
    require_bottleneck(inst);
    const std::size_t n = inst.n, K = inst.num_scenarios();
    std::vector<std::size_t> open_successors(n, 0);
    std::vector<std::vector<std::size_t>> predecessors(n);
    for (auto [i, j] : inst.precedence) {
        ++open_successors[i];
        predecessors[j].push_back(i);
    }
    std::vector<Rational> load(K);
    for (std::size_t k = 0; k < K; ++k) load[k] = total_processing(inst.scenarios[k]);

    std::vector<char> placed(n, 0);
    std::vector<std::size_t> order(n);
    for (std::size_t pos = n; pos-- > 0;) {
        std::optional<std::size_t> pick;
        Rational pick_cost;
        for (std::size_t j = 0; j < n; ++j) {
            if (placed[j] || open_successors[j] != 0) continue;
            Rational c;
            for (std::size_t k = 0; k < K; ++k)
                c = max(c, objective_weight(inst, k, j) * positive_part(load[k] - inst.scenarios[k].d[j]));
            // Ties go to the larger index so that smaller indices stay early.
            if (!pick || c <= pick_cost) {
                pick = j;
                pick_cost = std::move(c);
            }
        }
        const std::size_t j = *pick;
        placed[j] = 1;
        order[pos] = j;
        for (std::size_t k = 0; k < K; ++k) load[k] -= inst.scenarios[k].p[j];
        for (std::size_t i : predecessors[j]) --open_successors[i];
    }
    return make_result(inst, Schedule{std::move(order)}, RiskCriterion::maximum(), Certificate::exact());
}

Instance threshold_instance(const Instance& inst, const std::vector<Rational>& t) {
    require_bottleneck(inst);
    if (t.size() != inst.num_scenarios())
        throw Error(ErrorCode::InvalidParameter, "threshold vector needs one entry per scenario");
    Instance out = inst;
    out.objective = Objective::MaxT;
    out.weights.assign(inst.n, Rational(1));
    for (std::size_t k = 0; k < inst.num_scenarios(); ++k) {
        auto& s = out.scenarios[k];
        s.w.reset();
        const Rational load = total_processing(s);
        for (std::size_t j = 0; j < inst.n; ++j) {
            const Rational w = objective_weight(inst, k, j);
            // A zero-weight job never contributes, so it may finish at the end.
            s.d[j] = w.is_zero() ? max(load, inst.scenarios[k].d[j]) : t[k] / w + inst.scenarios[k].d[j];
        }
    }
    return out;
}

std::optional<Schedule> threshold_feasible(const Instance& inst, const std::vector<Rational>& t) {
    auto r = minmax_bottleneck(threshold_instance(inst, t));
    if (!r.value.is_zero()) return std::nullopt;
    return std::move(r.schedule);
}

Rational f_max_bound(const Instance& inst) {
    require_bottleneck(inst);
    Rational bound;
    for (std::size_t k = 0; k < inst.num_scenarios(); ++k) {
        const auto& s = inst.scenarios[k];
        if (inst.n == 0) continue;
        const Rational slack = positive_part(total_processing(s) - *std::min_element(s.d.begin(), s.d.end()));
        for (std::size_t j = 0; j < inst.n; ++j) bound = max(bound, objective_weight(inst, k, j) * slack);
    }
    return bound;
}

SolveResult pseudo_poly_bottleneck(const Instance& inst, const RiskCriterion& criterion, std::uint64_t cap) {
    require_valid(inst);
    require_bottleneck(inst);
    require_integer_data(inst);
    const std::int64_t f_max = f_max_bound(inst).to_int64();
    std::vector<Rational> grid;
    for (std::int64_t v = 0; v <= f_max; ++v) {
        grid.emplace_back(v);
        if (grid.size() > cap) throw Error(ErrorCode::TooLarge, "f_max exceeds the threshold cap");
    }
    return make_result(inst, search_thresholds(inst, criterion, grid, cap), criterion, Certificate::exact());
}

std::vector<Rational> fptas_grid(const Rational& f_max, const Rational& epsilon) {
    std::vector<Rational> grid{Rational(0), Rational(1)};
    const Rational factor = Rational(1) + epsilon;
    Rational g(1);
    while (g < f_max) {
        g *= factor;
        grid.push_back(g);
    }
    return grid;
}

bool grid_covers_integers(const Rational& f_max, const Rational& epsilon) {
    const auto grid = fptas_grid(f_max, epsilon);
    for (Rational v(0); v <= f_max; v += 1)
        if (!std::binary_search(grid.begin(), grid.end(), v)) return false;
    return true;
}

SolveResult fptas_bottleneck(const Instance& inst, const RiskCriterion& criterion, const Rational& epsilon,
                             std::uint64_t cap) {
    require_valid(inst);
    require_bottleneck(inst);
    if (epsilon.sign() <= 0 || epsilon >= Rational(1))
        throw Error(ErrorCode::InvalidParameter, "epsilon must lie in (0,1), got " + epsilon.str());
    require_integer_data(inst);
    const auto grid = fptas_grid(f_max_bound(inst), epsilon);
    return make_result(inst, search_thresholds(inst, criterion, grid, cap), criterion, Certificate::fptas(epsilon));
}

}  // namespace riskched
