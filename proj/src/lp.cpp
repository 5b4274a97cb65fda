#include "riskched/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "riskched/error.hpp"

namespace riskched::lp {

std::size_t Problem::add_variable(double cost, double lo, double hi) {
    objective.push_back(cost);
    lower.push_back(lo);
    upper.push_back(hi);
    for (auto& row : rows) row.coefficients.push_back(0.0);
    return objective.size() - 1;
}

void Problem::add_row(std::vector<double> coefficients, Relation relation, double rhs) {
    coefficients.resize(objective.size(), 0.0);
    rows.push_back({std::move(coefficients), relation, rhs});
}

std::string_view to_string(Status status) {
    switch (status) {
        case Status::Optimal: return "Optimal";
        case Status::Infeasible: return "Infeasible";
        case Status::Unbounded: return "Unbounded";
    }
    return "?";
}

namespace {

// x_v = offset + sum sign * y_col over at most two nonnegative columns.
struct ColumnMap {
    double offset = 0.0;
    std::size_t col[2] = {0, 0};
    double sign[2] = {0.0, 0.0};
    int count = 0;
};

class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols) : m_(rows), width_(cols + 1), data_(rows * (cols + 1), 0.0) {}

    double& at(std::size_t i, std::size_t j) { return data_[i * width_ + j]; }
    double at(std::size_t i, std::size_t j) const { return data_[i * width_ + j]; }
    double& rhs(std::size_t i) { return data_[i * width_ + width_ - 1]; }
    double rhs(std::size_t i) const { return data_[i * width_ + width_ - 1]; }
    std::size_t rows() const { return m_; }
    std::size_t cols() const { return width_ - 1; }

    void pivot(std::size_t r, std::size_t c, std::vector<double>& cost_row, double& cost_rhs) {
        double* pr = &data_[r * width_];
        const double inv = 1.0 / pr[c];
        for (std::size_t j = 0; j < width_; ++j) pr[j] *= inv;
        pr[c] = 1.0;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r) continue;
            double* pi = &data_[i * width_];
            const double f = pi[c];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < width_; ++j) pi[j] -= f * pr[j];
            pi[c] = 0.0;
        }
        const double f = cost_row[c];
        if (f != 0.0) {
            for (std::size_t j = 0; j + 1 < width_; ++j) cost_row[j] -= f * pr[j];
            cost_row[c] = 0.0;
            cost_rhs -= f * pr[width_ - 1];
        }
    }

    void remove_row(std::size_t r) {
        data_.erase(data_.begin() + static_cast<std::ptrdiff_t>(r * width_),
                    data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * width_));
        --m_;
    }

private:
    std::size_t m_;
    std::size_t width_;
    std::vector<double> data_;
};

enum class Outcome { Optimal, Unbounded };

// Bland's rule: smallest improving column enters; among minimum-ratio rows
// the one whose basic variable has the smallest index leaves.
Outcome run_simplex(Tableau& t, std::vector<std::size_t>& basis, std::vector<double>& cost_row, double& cost_rhs,
                    std::size_t usable_cols) {
    const std::size_t limit = 200 * (t.rows() + usable_cols) + 1000;
    for (std::size_t iter = 0; iter < limit; ++iter) {
        std::size_t enter = usable_cols;
        for (std::size_t j = 0; j < usable_cols; ++j) {
            if (cost_row[j] < -kOptimalityTol) {
                enter = j;
                break;
            }
        }
        if (enter == usable_cols) return Outcome::Optimal;

        std::size_t leave = t.rows();
        double best = 0.0;
        for (std::size_t i = 0; i < t.rows(); ++i) {
            const double a = t.at(i, enter);
            if (a <= kPivotTol) continue;
            const double ratio = std::max(t.rhs(i), 0.0) / a;
            if (leave == t.rows() || ratio < best - 1e-12 ||
                (std::abs(ratio - best) <= 1e-12 && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == t.rows()) return Outcome::Unbounded;
        if (std::abs(t.at(leave, enter)) < kPivotTol)
            throw Error(ErrorCode::NumericalBreakdown, "pivot element below tolerance");
        t.pivot(leave, enter, cost_row, cost_rhs);
        basis[leave] = enter;
    }
    throw Error(ErrorCode::LpFailure, "simplex iteration limit reached");
}

}  // namespace

Residuals residuals(const Problem& problem, const std::vector<double>& values) {
    Residuals r;
    for (const auto& row : problem.rows) {
        double lhs = 0.0;
        for (std::size_t v = 0; v < values.size(); ++v) lhs += row.coefficients[v] * values[v];
        double violation = 0.0;
        switch (row.relation) {
            case Relation::LessEqual: violation = lhs - row.rhs; break;
            case Relation::GreaterEqual: violation = row.rhs - lhs; break;
            case Relation::Equal: violation = std::abs(lhs - row.rhs); break;
        }
        r.row = std::max(r.row, violation);
    }
    for (std::size_t v = 0; v < values.size(); ++v) {
        r.bound = std::max(r.bound, problem.lower[v] - values[v]);
        r.bound = std::max(r.bound, values[v] - problem.upper[v]);
    }
    return r;
}

Solution solve(const Problem& problem) {
    const std::size_t nvars = problem.num_variables();
    if (problem.lower.size() != nvars || problem.upper.size() != nvars)
        throw Error(ErrorCode::LpFailure, "bound vectors do not match the variable count");
    for (const auto& row : problem.rows)
        if (row.coefficients.size() != nvars) throw Error(ErrorCode::LpFailure, "row width differs from objective");
    for (std::size_t v = 0; v < nvars; ++v)
        if (problem.lower[v] > problem.upper[v]) return Solution{Status::Infeasible, {}, 0.0};

    // Substitute bounded variables by nonnegative columns.
    std::vector<ColumnMap> maps(nvars);
    std::size_t ncols = 0;
    struct BoundRow {
        std::size_t col;
        double limit;
    };
    std::vector<BoundRow> bound_rows;
    for (std::size_t v = 0; v < nvars; ++v) {
        auto& m = maps[v];
        const double lo = problem.lower[v], hi = problem.upper[v];
        if (std::isfinite(lo)) {
            m.offset = lo;
            m.col[0] = ncols++;
            m.sign[0] = 1.0;
            m.count = 1;
            if (std::isfinite(hi)) bound_rows.push_back({m.col[0], hi - lo});
        } else if (std::isfinite(hi)) {
            m.offset = hi;
            m.col[0] = ncols++;
            m.sign[0] = -1.0;
            m.count = 1;
        } else {
            m.col[0] = ncols++;
            m.col[1] = ncols++;
            m.sign[0] = 1.0;
            m.sign[1] = -1.0;
            m.count = 2;
        }
    }

    struct StdRow {
        std::vector<double> a;
        Relation rel;
        double b;
    };
    std::vector<StdRow> std_rows;
    std_rows.reserve(problem.rows.size() + bound_rows.size());
    for (const auto& row : problem.rows) {
        StdRow r{std::vector<double>(ncols, 0.0), row.relation, row.rhs};
        for (std::size_t v = 0; v < nvars; ++v) {
            const double a = row.coefficients[v];
            if (a == 0.0) continue;
            r.b -= a * maps[v].offset;
            for (int k = 0; k < maps[v].count; ++k) r.a[maps[v].col[k]] += a * maps[v].sign[k];
        }
        std_rows.push_back(std::move(r));
    }
    for (const auto& br : bound_rows) {
        StdRow r{std::vector<double>(ncols, 0.0), Relation::LessEqual, br.limit};
        r.a[br.col] = 1.0;
        std_rows.push_back(std::move(r));
    }
    for (auto& r : std_rows) {
        if (r.b < 0.0) {
            for (double& x : r.a) x = -x;
            r.b = -r.b;
            if (r.rel == Relation::LessEqual)
                r.rel = Relation::GreaterEqual;
            else if (r.rel == Relation::GreaterEqual)
                r.rel = Relation::LessEqual;
        }
    }

    std::size_t nslack = 0, nart = 0;
    for (const auto& r : std_rows) {
        if (r.rel != Relation::Equal) ++nslack;
        if (r.rel != Relation::LessEqual) ++nart;
    }
    const std::size_t m = std_rows.size();
    const std::size_t art_begin = ncols + nslack;
    const std::size_t total_cols = art_begin + nart;
    Tableau t(m, total_cols);
    std::vector<std::size_t> basis(m);
    std::vector<double> cost_row(total_cols, 0.0);
    double cost_rhs = 0.0;  // negated objective value
    {
        std::size_t s = ncols, a = art_begin;
        for (std::size_t i = 0; i < m; ++i) {
            const auto& r = std_rows[i];
            for (std::size_t j = 0; j < ncols; ++j) t.at(i, j) = r.a[j];
            t.rhs(i) = r.b;
            if (r.rel == Relation::LessEqual) {
                t.at(i, s) = 1.0;
                basis[i] = s++;
            } else {
                if (r.rel == Relation::GreaterEqual) t.at(i, s++) = -1.0;
                t.at(i, a) = 1.0;
                basis[i] = a++;
                for (std::size_t j = 0; j < art_begin; ++j) cost_row[j] -= t.at(i, j);
                cost_rhs -= r.b;
            }
        }
    }

    if (nart > 0) {
        run_simplex(t, basis, cost_row, cost_rhs, art_begin);
        if (-cost_rhs > kFeasibilityTol) return Solution{Status::Infeasible, {}, 0.0};
        // Drive zero-level artificials out of the basis or drop redundant rows.
        for (std::size_t i = 0; i < t.rows();) {
            if (basis[i] < art_begin) {
                ++i;
                continue;
            }
            std::size_t col = art_begin;
            double best = kPivotTol;
            for (std::size_t j = 0; j < art_begin; ++j) {
                if (std::abs(t.at(i, j)) > best) {
                    best = std::abs(t.at(i, j));
                    col = j;
                }
            }
            if (col == art_begin) {
                t.remove_row(i);
                basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(i));
                continue;
            }
            t.pivot(i, col, cost_row, cost_rhs);
            basis[i] = col;
            ++i;
        }
    }

    // Phase two over the structural and slack columns.
    std::fill(cost_row.begin(), cost_row.end(), 0.0);
    std::vector<double> cost(total_cols, 0.0);
    for (std::size_t v = 0; v < nvars; ++v) {
        const double c = problem.objective[v];
        for (int k = 0; k < maps[v].count; ++k) cost[maps[v].col[k]] += c * maps[v].sign[k];
    }
    cost_row = cost;
    cost_rhs = 0.0;
    for (std::size_t i = 0; i < t.rows(); ++i) {
        const double cb = cost[basis[i]];
        if (cb == 0.0) continue;
        for (std::size_t j = 0; j < total_cols; ++j) cost_row[j] -= cb * t.at(i, j);
        cost_rhs -= cb * t.rhs(i);
    }
    if (run_simplex(t, basis, cost_row, cost_rhs, art_begin) == Outcome::Unbounded)
        return Solution{Status::Unbounded, {}, 0.0};

    std::vector<double> y(total_cols, 0.0);
    for (std::size_t i = 0; i < t.rows(); ++i) y[basis[i]] = std::max(t.rhs(i), 0.0);
    Solution sol;
    sol.status = Status::Optimal;
    sol.values.assign(nvars, 0.0);
    for (std::size_t v = 0; v < nvars; ++v) {
        double x = maps[v].offset;
        for (int k = 0; k < maps[v].count; ++k) x += maps[v].sign[k] * y[maps[v].col[k]];
        sol.values[v] = std::clamp(x, problem.lower[v], problem.upper[v]);
    }
    sol.objective = 0.0;
    for (std::size_t v = 0; v < nvars; ++v) sol.objective += problem.objective[v] * sol.values[v];

    const auto res = residuals(problem, sol.values);
    if (res.row > kFeasibilityTol || res.bound > kBoundTol)
        throw Error(ErrorCode::NumericalBreakdown,
                    "optimal basis violates constraints by " + std::to_string(std::max(res.row, res.bound)));
    return sol;
}

VcRelaxation build_vc_relaxation(const Instance& inst) {
    if (inst.objective != Objective::SumWC && inst.objective != Objective::SumC)
        throw Error(ErrorCode::WrongObjective, "completion-time relaxation needs a sumWC or sumC objective");
    if (!has_deterministic_processing_times(inst))
        throw Error(ErrorCode::UnsupportedData, "completion-time relaxation needs deterministic processing times");

    const std::size_t n = inst.n;
    const auto& p = inst.scenarios.front().p;
    VcRelaxation vc;
    vc.n = n;
    vc.delta_index.assign(n, std::vector<std::size_t>(n, 0));
    auto& lp = vc.problem;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) vc.delta_index[i][j] = lp.add_variable(0.0, 0.0, 1.0);
    vc.num_delta = n * (n - (n > 0 ? 1 : 0));
    vc.completion_index.resize(n);
    for (std::size_t j = 0; j < n; ++j) vc.completion_index[j] = lp.add_variable(0.0, 0.0, kInfinity);

    for (auto [i, j] : inst.precedence) {
        lp.lower[vc.delta(i, j)] = 1.0;
        lp.upper[vc.delta(j, i)] = 0.0;
    }

    const std::size_t width = lp.num_variables();
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> row(width, 0.0);
        row[vc.completion(j)] = 1.0;
        for (std::size_t i = 0; i < n; ++i)
            if (i != j) row[vc.delta(i, j)] = -p[i].to_double();
        lp.add_row(std::move(row), Relation::Equal, p[j].to_double());
        ++vc.num_completion_rows;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            std::vector<double> row(width, 0.0);
            row[vc.delta(i, j)] = 1.0;
            row[vc.delta(j, i)] = 1.0;
            lp.add_row(std::move(row), Relation::Equal, 1.0);
            ++vc.num_pair_rows;
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                if (i == j || j == k || i == k) continue;
                std::vector<double> row(width, 0.0);
                row[vc.delta(i, j)] = 1.0;
                row[vc.delta(j, k)] = 1.0;
                row[vc.delta(k, i)] = 1.0;
                lp.add_row(std::move(row), Relation::GreaterEqual, 1.0);
                ++vc.num_triangle_rows;
            }
    return vc;
}

}  // namespace riskched::lp
