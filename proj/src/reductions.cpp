#include "riskched/reductions.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "riskched/error.hpp"

namespace riskched {

namespace {

std::size_t var_of(int literal) { return static_cast<std::size_t>(std::abs(literal)); }

Rational as_rational(std::size_t v) { return Rational(static_cast<std::int64_t>(v)); }

Instance unit_jobs(std::size_t n, Objective objective) {
    Instance inst;
    inst.n = n;
    inst.weights.assign(n, Rational(1));
    inst.objective = objective;
    return inst;
}

Scenario make_scenario(std::size_t n, const Rational& p, const Rational& d) {
    return Scenario{Rational{}, std::vector<Rational>(n, p), std::vector<Rational>(n, d), std::nullopt};
}

void set_uniform(Instance& inst) {
    const Rational prob(1, static_cast<std::int64_t>(inst.scenarios.size()));
    for (auto& s : inst.scenarios) s.prob = prob;
}

// Due dates of a clause scenario: pair j (1-based) gets (2j-1, 2j) when x_j
// occurs, (2j, 2j-1) when ~x_j occurs, (2j, 2j) when neither does and
// (2j-1, 2j-1) when both do.
Scenario clause_due_dates(const std::vector<int>& clause, std::size_t num_vars) {
    Scenario s = make_scenario(2 * num_vars, Rational(1), Rational{});
    std::vector<char> pos(num_vars + 1, 0), neg(num_vars + 1, 0);
    for (int lit : clause) (lit > 0 ? pos : neg)[var_of(lit)] = 1;
    for (std::size_t j = 1; j <= num_vars; ++j) {
        const Rational early = as_rational(2 * j - 1), late = as_rational(2 * j);
        s.d[2 * (j - 1)] = pos[j] ? early : late;
        s.d[2 * (j - 1) + 1] = neg[j] ? early : late;
    }
    return s;
}

void require_open_alpha(const Rational& alpha) {
    if (alpha.sign() <= 0 || alpha >= Rational(1))
        throw Error(ErrorCode::AlphaOutOfRange, "alpha must lie in (0,1), got " + alpha.str());
}

}  // namespace

void validate_formula(const CnfFormula& f) {
    if (f.num_vars == 0) throw Error(ErrorCode::InvalidFormula, "formula needs at least one variable");
    for (std::size_t c = 0; c < f.clauses.size(); ++c) {
        const auto& clause = f.clauses[c];
        if (clause.empty() || clause.size() > 3)
            throw Error(ErrorCode::InvalidFormula,
                        "clause " + std::to_string(c) + " has " + std::to_string(clause.size()) + " literals");
        for (int lit : clause)
            if (lit == 0 || var_of(lit) > f.num_vars)
                throw Error(ErrorCode::InvalidFormula,
                            "clause " + std::to_string(c) + " has literal " + std::to_string(lit) + " out of range");
    }
}

CnfFormula parse_dimacs(std::string_view text) {
    CnfFormula f;
    bool header = false;
    std::size_t expected = 0;
    std::vector<int> current;
    std::size_t line_no = 0;
    auto fail = [&](const std::string& msg) {
        throw Error(ErrorCode::InvalidFormula, "line " + std::to_string(line_no) + ": " + msg);
    };
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok == "c" || tok[0] == 'c' || tok[0] == '%') continue;
        if (tok == "p") {
            if (header) fail("duplicate header");
            std::string fmt;
            long long n = -1, m = -1;
            if (!(ls >> fmt >> n >> m) || fmt != "cnf" || n < 1 || m < 0) fail("expected 'p cnf <vars> <clauses>'");
            f.num_vars = static_cast<std::size_t>(n);
            expected = static_cast<std::size_t>(m);
            header = true;
            continue;
        }
        if (!header) fail("clause before header");
        do {
            char* end = nullptr;
            const long v = std::strtol(tok.c_str(), &end, 10);
            if (*end != '\0') fail("bad literal '" + tok + "'");
            if (v == 0) {
                if (current.empty()) fail("empty clause");
                if (current.size() > 3) fail("clause has more than 3 literals");
                f.clauses.push_back(std::move(current));
                current.clear();
                continue;
            }
            if (static_cast<std::size_t>(std::labs(v)) > f.num_vars) fail("literal " + tok + " exceeds variable count");
            current.push_back(static_cast<int>(v));
        } while (ls >> tok);
    }
    if (!header) fail("missing 'p cnf' header");
    if (!current.empty()) fail("last clause is not terminated by 0");
    if (f.clauses.size() != expected)
        fail("header declares " + std::to_string(expected) + " clauses, found " + std::to_string(f.clauses.size()));
    validate_formula(f);
    return f;
}

std::string to_dimacs(const CnfFormula& f) {
    std::ostringstream out;
    out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
    for (const auto& clause : f.clauses) {
        for (int lit : clause) out << lit << ' ';
        out << "0\n";
    }
    return out.str();
}

std::size_t satisfied_clauses(const CnfFormula& f, const std::vector<bool>& assignment) {
    std::size_t count = 0;
    for (const auto& clause : f.clauses) {
        const bool sat = std::any_of(clause.begin(), clause.end(),
                                     [&](int lit) { return assignment[var_of(lit) - 1] == (lit > 0); });
        count += sat ? 1 : 0;
    }
    return count;
}

bool is_satisfiable(const CnfFormula& f) {
    std::vector<bool> a(f.num_vars);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << f.num_vars); ++mask) {
        for (std::size_t v = 0; v < f.num_vars; ++v) a[v] = (mask >> v) & 1;
        if (satisfied_clauses(f, a) == f.clauses.size()) return true;
    }
    return false;
}

std::size_t min_satisfied_clauses(const CnfFormula& f) {
    std::size_t best = f.clauses.size();
    std::vector<bool> a(f.num_vars);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << f.num_vars); ++mask) {
        for (std::size_t v = 0; v < f.num_vars; ++v) a[v] = (mask >> v) & 1;
        best = std::min(best, satisfied_clauses(f, a));
    }
    return best;
}

CnfFormula pad_to_three_literals(const CnfFormula& f) {
    validate_formula(f);
    std::vector<std::vector<int>> kept;
    for (const auto& clause : f.clauses) {
        std::vector<int> c;
        bool tautology = false;
        for (int lit : clause) {
            if (std::find(c.begin(), c.end(), -lit) != c.end()) tautology = true;
            if (std::find(c.begin(), c.end(), lit) == c.end()) c.push_back(lit);
        }
        if (!tautology) kept.push_back(std::move(c));
    }
    CnfFormula out;
    out.num_vars = f.num_vars;
    const bool short_clause = std::any_of(kept.begin(), kept.end(), [](const auto& c) { return c.size() < 3; });
    if (short_clause) out.num_vars = std::max<std::size_t>(out.num_vars, 3);
    for (const auto& c : kept) {
        std::vector<int> extra;
        for (int v = 1; c.size() + extra.size() < 3; ++v) {
            const bool used = std::any_of(c.begin(), c.end(), [&](int lit) { return var_of(lit) == var_of(v); });
            if (!used) extra.push_back(v);
        }
        for (std::size_t signs = 0; signs < (std::size_t{1} << extra.size()); ++signs) {
            std::vector<int> padded = c;
            for (std::size_t e = 0; e < extra.size(); ++e) padded.push_back((signs >> e) & 1 ? -extra[e] : extra[e]);
            out.clauses.push_back(std::move(padded));
        }
    }
    return out;
}

std::size_t literal_job(int literal) { return 2 * (var_of(literal) - 1) + (literal < 0 ? 1 : 0); }

std::string_view to_string(DummyCase c) {
    switch (c) {
        case DummyCase::AllLate: return "all-late";
        case DummyCase::Omitted: return "omitted";
        case DummyCase::AllOnTime: return "all-on-time";
    }
    return "?";
}

VarGadget min3sat_to_var(const CnfFormula& f, std::size_t L, const Rational& alpha, Objective objective) {
    validate_formula(f);
    if (objective != Objective::MaxT && objective != Objective::SumT && objective != Objective::SumU)
        throw Error(ErrorCode::WrongObjective, "VaR gadget supports maxT, sumT and sumU");
    const std::size_t m = f.clauses.size();
    if (L == 0 || L >= m)
        throw Error(ErrorCode::DegenerateFormula,
                    "need 0 < L < m, got L=" + std::to_string(L) + " m=" + std::to_string(m));
    require_open_alpha(alpha);

    const std::size_t n = f.num_vars;
    VarGadget g;
    g.l = m - L;
    g.instance = unit_jobs(2 * n, objective);
    for (const auto& clause : f.clauses) g.instance.scenarios.push_back(clause_due_dates(clause, n));

    const Rational l = as_rational(g.l), mm = as_rational(m);
    Rational clause_prob;
    std::optional<Scenario> dummy;
    if (l >= alpha * mm) {
        clause_prob = alpha / l;
        const Rational dummy_prob = (l - alpha * mm) / l;
        if (dummy_prob.is_zero()) {
            g.dummy_case = DummyCase::Omitted;
        } else {
            g.dummy_case = DummyCase::AllLate;
            dummy = make_scenario(2 * n, Rational(1), Rational(0));
            dummy->prob = dummy_prob;
        }
    } else {
        g.dummy_case = DummyCase::AllOnTime;
        clause_prob = (Rational(1) - alpha) / (mm - l);
        dummy = make_scenario(2 * n, Rational(1), as_rational(2 * n));
        dummy->prob = (mm * alpha - l) / (mm - l);
    }
    for (auto& s : g.instance.scenarios) s.prob = clause_prob;
    if (dummy) g.instance.scenarios.push_back(std::move(*dummy));
    g.threshold = Rational(0);
    return g;
}

MinmaxGadget threesat_to_minmax_unit_sumT(const CnfFormula& f) {
    const CnfFormula g = pad_to_three_literals(f);
    const std::size_t n = g.num_vars;
    MinmaxGadget out;
    out.num_vars = n;
    out.threshold = Rational(2);
    out.instance = unit_jobs(2 * n, Objective::SumT);
    for (const auto& clause : g.clauses) out.instance.scenarios.push_back(clause_due_dates(clause, n));
    for (std::size_t j = 1; j <= n; ++j) {
        Scenario s = make_scenario(2 * n, Rational(1), as_rational(2 * n));
        const Rational due = as_rational(2 * (j - 1)) + Rational(1, 2);
        s.d[2 * (j - 1)] = due;
        s.d[2 * (j - 1) + 1] = due;
        out.instance.scenarios.push_back(std::move(s));
    }
    set_uniform(out.instance);
    return out;
}

MinmaxGadget threesat_to_minmax_sumU_proc(const CnfFormula& f) {
    const CnfFormula g = pad_to_three_literals(f);
    const std::size_t n = g.num_vars;
    MinmaxGadget out;
    out.num_vars = n;
    out.threshold = as_rational(n);
    out.instance = unit_jobs(2 * n, Objective::SumU);
    for (const auto& clause : g.clauses) {
        Scenario s = make_scenario(2 * n, Rational(0), Rational(2));
        for (int lit : clause) s.p[literal_job(-lit)] = Rational(1);
        out.instance.scenarios.push_back(std::move(s));
    }
    for (std::size_t j = 1; j <= n; ++j) {
        Scenario s = make_scenario(2 * n, Rational(0), Rational(2));
        s.p[2 * (j - 1)] = Rational(2);
        s.p[2 * (j - 1) + 1] = Rational(2);
        out.instance.scenarios.push_back(std::move(s));
    }
    set_uniform(out.instance);
    return out;
}

void validate_selection(const SelectionInstance& s) {
    if (s.num_items == 0) throw Error(ErrorCode::InvalidParameter, "selection needs at least one item");
    if (s.q < 1 || s.q > s.num_items) throw Error(ErrorCode::InvalidParameter, "q must lie in [1, n]");
    if (s.costs.empty()) throw Error(ErrorCode::InvalidParameter, "selection needs at least one scenario");
    for (const auto& row : s.costs) {
        if (row.size() != s.num_items) throw Error(ErrorCode::InvalidParameter, "cost row length differs from n");
        for (int c : row)
            if (c != 0 && c != 1) throw Error(ErrorCode::InvalidParameter, "selection costs must be 0 or 1");
    }
}

std::size_t selection_optimum(const SelectionInstance& s) {
    validate_selection(s);
    std::vector<char> pick(s.num_items, 0);
    std::fill(pick.end() - static_cast<std::ptrdiff_t>(s.q), pick.end(), 1);
    std::size_t best = s.q;
    do {
        std::size_t worst = 0;
        for (const auto& row : s.costs) {
            std::size_t c = 0;
            for (std::size_t j = 0; j < s.num_items; ++j) c += pick[j] ? static_cast<std::size_t>(row[j]) : 0;
            worst = std::max(worst, c);
        }
        best = std::min(best, worst);
    } while (std::next_permutation(pick.begin(), pick.end()));
    return best;
}

Instance selection_to_minmax_unit_sumU(const SelectionInstance& s) {
    validate_selection(s);
    const std::size_t n = s.num_items;
    Instance inst = unit_jobs(n, Objective::SumU);
    for (const auto& row : s.costs) {
        Scenario sc = make_scenario(n, Rational(1), as_rational(n));
        for (std::size_t j = 0; j < n; ++j)
            if (row[j] == 1) sc.d[j] = as_rational(n - s.q);
        inst.scenarios.push_back(std::move(sc));
    }
    set_uniform(inst);
    return inst;
}

Instance weighted_to_exp(const Instance& inst) {
    require_valid(inst);
    if (inst.objective != Objective::SumWT && inst.objective != Objective::SumWU)
        throw Error(ErrorCode::WrongObjective, "weighted_to_exp needs sumWT or sumWU");
    if (inst.num_scenarios() != 1 || inst.scenarios.front().w)
        throw Error(ErrorCode::UnsupportedData, "weighted_to_exp needs a deterministic single-scenario instance");
    const auto& base = inst.scenarios.front();
    Rational W, P;
    for (std::size_t j = 0; j < inst.n; ++j) {
        W += inst.weights[j];
        P += base.p[j];
    }
    Instance out = unit_jobs(inst.n, inst.objective == Objective::SumWT ? Objective::SumT : Objective::SumU);
    out.precedence = inst.precedence;
    for (std::size_t j = 0; j < inst.n; ++j) {
        Scenario s{inst.weights[j] / W, base.p, std::vector<Rational>(inst.n, P), std::nullopt};
        s.d[j] = base.d[j];
        out.scenarios.push_back(std::move(s));
    }
    return out;
}

Instance invert_flowtime(const Instance& inst) {
    require_valid(inst);
    if (inst.objective != Objective::SumWC && inst.objective != Objective::SumC)
        throw Error(ErrorCode::WrongObjective, "inversion needs sumWC or sumC");
    Instance out = unit_jobs(inst.n, Objective::SumWC);
    for (auto [i, j] : inst.precedence) out.precedence.emplace_back(j, i);
    for (std::size_t k = 0; k < inst.num_scenarios(); ++k) {
        const auto& s = inst.scenarios[k];
        Scenario t{s.prob, {}, s.d, s.p};
        t.p.resize(inst.n);
        for (std::size_t j = 0; j < inst.n; ++j)
            t.p[j] = inst.objective == Objective::SumWC ? inst.weight(k, j) : Rational(1);
        out.scenarios.push_back(std::move(t));
    }
    return out;
}

Schedule reverse_schedule(const Schedule& s) { return Schedule{{s.order.rbegin(), s.order.rend()}}; }

Instance add_zero_scenario(const Instance& inst, const Rational& alpha) {
    require_valid(inst);
    require_open_alpha(alpha);
    Instance out = inst;
    for (auto& s : out.scenarios) s.prob *= Rational(1) - alpha;
    Scenario zero = make_scenario(inst.n, Rational(0), Rational(0));
    zero.prob = alpha;
    out.scenarios.push_back(std::move(zero));
    return out;
}

MaxScenarioAugmentation add_max_scenario(const Instance& inst, const Rational& alpha, MaxScenarioMode mode) {
    require_valid(inst);
    require_open_alpha(alpha);
    const std::size_t K = inst.num_scenarios();
    MaxScenarioAugmentation out;
    if (mode == MaxScenarioMode::VaR) {
        out.scenario_prob = alpha / as_rational(K);
        out.dummy_prob = Rational(1) - alpha;
    } else {
        if (K < 2) throw Error(ErrorCode::InvalidParameter, "CVaR augmentation needs at least two scenarios");
        out.scenario_prob = alpha / as_rational(K - 1);
        out.dummy_prob = Rational(1) - as_rational(K) * alpha / as_rational(K - 1);
        if (out.dummy_prob.sign() <= 0)
            throw Error(ErrorCode::AlphaOutOfRange,
                        "CVaR augmentation needs alpha < (K-1)/K, got " + alpha.str() + " with K=" + std::to_string(K));
    }

    Rational p_max, d_min = inst.n ? inst.scenarios[0].d[0] : Rational{}, w_max;
    bool scenario_weights = false;
    for (std::size_t k = 0; k < K; ++k) {
        const auto& s = inst.scenarios[k];
        scenario_weights = scenario_weights || s.w.has_value();
        for (std::size_t j = 0; j < inst.n; ++j) {
            p_max = max(p_max, s.p[j]);
            d_min = min(d_min, s.d[j]);
            w_max = max(w_max, inst.weight(k, j));
        }
    }
    out.instance = inst;
    for (auto& s : out.instance.scenarios) s.prob = out.scenario_prob;
    Scenario dummy = make_scenario(inst.n, p_max, d_min);
    dummy.prob = out.dummy_prob;
    if (is_weighted(inst.objective) || scenario_weights) dummy.w = std::vector<Rational>(inst.n, w_max);
    Schedule identity;
    for (std::size_t j = 0; j < inst.n; ++j) identity.order.push_back(j);
    out.dummy_cost = scenario_cost(identity, dummy, inst.objective, inst.weights);
    out.instance.scenarios.push_back(std::move(dummy));
    return out;
}

}  // namespace riskched
