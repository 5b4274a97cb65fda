#include "riskched/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "riskched/approx.hpp"
#include "riskched/error.hpp"
#include "riskched/exact.hpp"
#include "riskched/generate.hpp"
#include "riskched/io.hpp"
#include "riskched/reductions.hpp"

namespace riskched::cli {

namespace {

using ojson = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const std::vector<std::string> kAlgorithms = {"brute", "assignment", "wspt",  "lawler", "pseudo",
                                              "fptas", "lift",       "lp2",   "lpvar",  "kapprox"};
const std::vector<std::string> kGadgets = {"min3sat-var", "3sat-sumt", "3sat-sumu", "weighted-exp",
                                           "selection",   "invert",    "add-zero",  "add-max"};

struct Options {
    std::string instance;
    std::string criterion;
    std::string alpha;
    std::string format = "text";
    std::uint64_t seed = 0;
    std::string schedule;
    std::string algorithm;
    std::string epsilon = "1/4";
    std::string base = "auto";
    std::uint64_t cap = 0;
    std::size_t count = 20;
    std::size_t n = 6;
    std::size_t K = 3;
    std::string gadget;
    std::string cnf;
    std::size_t L = 0;
    std::string objective = "maxT";
    std::string mode = "var";
    std::string selection;
    std::string output;
};

bool json_format(const Options& o) { return o.format == "json"; }

Rational rational_arg(const std::string& text, const char* flag) {
    try {
        return Rational::parse(text);
    } catch (const std::exception&) {
        throw UsageError(std::string(flag) + ": '" + text + "' is not a rational");
    }
}

std::optional<RiskCriterion> criterion_arg(const Options& o) {
    if (o.criterion.empty()) {
        if (!o.alpha.empty()) throw UsageError("--alpha needs --criterion var or cvar");
        return std::nullopt;
    }
    if (o.criterion == "exp" || o.criterion == "max") {
        if (!o.alpha.empty()) throw UsageError("--alpha is not allowed with --criterion " + o.criterion);
        return o.criterion == "exp" ? RiskCriterion::expectation() : RiskCriterion::maximum();
    }
    if (o.alpha.empty()) throw UsageError("--criterion " + o.criterion + " needs --alpha");
    const Rational alpha = rational_arg(o.alpha, "--alpha");
    return o.criterion == "var" ? RiskCriterion::value_at_risk(alpha) : RiskCriterion::conditional_value_at_risk(alpha);
}

RiskCriterion default_criterion(const std::string& algorithm) {
    if (algorithm == "lawler" || algorithm == "pseudo" || algorithm == "fptas" || algorithm == "kapprox")
        return RiskCriterion::maximum();
    if (algorithm == "lift" || algorithm == "lp2") return RiskCriterion::conditional_value_at_risk(Rational(1, 2));
    if (algorithm == "lpvar") return RiskCriterion::value_at_risk(Rational(1, 2));
    return RiskCriterion::expectation();
}

// Criterion an algorithm optimizes; some algorithms accept only one kind.
RiskCriterion resolve_criterion(const std::string& algorithm, const std::optional<RiskCriterion>& given) {
    const RiskCriterion c = given.value_or(default_criterion(algorithm));
    auto need = [&](RiskCriterion::Kind kind, const char* name) {
        if (c.kind() != kind) throw UsageError("--algorithm " + algorithm + " optimizes " + name + " only");
    };
    if (algorithm == "assignment" || algorithm == "wspt") need(RiskCriterion::Kind::Expectation, "exp");
    if (algorithm == "lawler" || algorithm == "kapprox") need(RiskCriterion::Kind::Max, "max");
    if (algorithm == "lift" || algorithm == "lp2") need(RiskCriterion::Kind::CVaR, "cvar");
    if (algorithm == "lpvar") need(RiskCriterion::Kind::VaR, "var");
    return c;
}

ExpSolver base_solver(const std::string& base, const Instance& inst) {
    std::string pick = base;
    if (pick == "auto") {
        const auto obj = inst.objective;
        const bool unit_obj =
            obj == Objective::SumWU || obj == Objective::SumWT || obj == Objective::SumU || obj == Objective::SumT;
        if (inst.precedence.empty() && unit_obj && is_unit_time(inst))
            pick = "assignment";
        else if (inst.precedence.empty() && (obj == Objective::SumWC || obj == Objective::SumC))
            pick = "wspt";
        else
            pick = "brute";
    }
    if (pick == "assignment") return assignment_min_exp_unit;
    if (pick == "wspt") return wspt_min_exp_sumwc;
    return [](const Instance& i) { return brute_force(i, RiskCriterion::expectation()); };
}

SolveResult run_algorithm(const std::string& algorithm, const Instance& inst, const RiskCriterion& c,
                          const Options& o) {
    const auto cap = [&](std::uint64_t fallback) { return o.cap ? o.cap : fallback; };
    if (algorithm == "brute") return brute_force(inst, c, cap(kDefaultExtensionCap));
    if (algorithm == "assignment") return assignment_min_exp_unit(inst);
    if (algorithm == "wspt") return wspt_min_exp_sumwc(inst);
    if (algorithm == "lawler") return minmax_bottleneck(inst);
    if (algorithm == "pseudo") return pseudo_poly_bottleneck(inst, c, cap(kDefaultThresholdCap));
    if (algorithm == "fptas")
        return fptas_bottleneck(inst, c, rational_arg(o.epsilon, "--epsilon"), cap(kDefaultThresholdCap));
    if (algorithm == "lift") return lift_expectation_cvar(inst, c.alpha(), base_solver(o.base, inst));
    if (algorithm == "lp2") return lp_round_cvar_sumwc(inst, c.alpha());
    if (algorithm == "lpvar") return lp_round_var_sumwc(inst, c.alpha(), cap(1u << 16));
    if (algorithm == "kapprox") return minmax_assignment_k_approx(inst);
    throw UsageError("unknown algorithm '" + algorithm + "'");
}

GeneratorOptions corpus_options(const std::string& algorithm, std::size_t n, std::size_t K) {
    GeneratorOptions g;
    g.n = n;
    g.K = K;
    if (algorithm == "assignment" || algorithm == "lift" || algorithm == "kapprox") {
        g.unit_time = true;
        g.d_max = static_cast<int>(n);
        g.objective = Objective::SumWT;
    } else if (algorithm == "wspt") {
        g.objective = Objective::SumWC;
    } else if (algorithm == "lawler") {
        g.objective = Objective::MaxWT;
        g.edge_prob = 0.2;
    } else if (algorithm == "pseudo" || algorithm == "fptas") {
        g.objective = Objective::MaxWT;
        g.p_max = 3;
        g.d_max = 6;
        g.w_max = 2;
        g.edge_prob = 0.2;
    } else if (algorithm == "lp2" || algorithm == "lpvar") {
        g.objective = Objective::SumWC;
        g.scenario_weights = true;
        g.edge_prob = 0.2;
    } else {
        g.objective = Objective::SumWT;
        g.edge_prob = 0.2;
    }
    return g;
}

Instance load_instance(const Options& o) {
    if (o.instance.empty()) throw UsageError("--instance is required");
    return parse_instance(read_text_file(o.instance));
}

ojson strings(const std::vector<Rational>& v) {
    ojson a = ojson::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
}

ojson schedule_json(const Schedule& s) {
    ojson a = ojson::array();
    for (auto j : s.order) a.push_back(j);
    return a;
}

std::string schedule_text(const Schedule& s) {
    std::string out;
    for (auto j : s.order) out += (out.empty() ? "" : ",") + std::to_string(j);
    return out;
}

ojson certificate_json(const Certificate& c) {
    ojson o = ojson::object();
    switch (c.kind) {
        case Certificate::Kind::Exact: o["kind"] = "exact"; break;
        case Certificate::Kind::Approx:
            o["kind"] = "approx";
            o["ratio"] = c.parameter.str();
            break;
        case Certificate::Kind::Fptas:
            o["kind"] = "fptas";
            o["epsilon"] = c.parameter.str();
            break;
    }
    if (c.basis) o["basis"] = std::string(to_string(*c.basis));
    return o;
}

ojson result_json(const SolveResult& r) {
    ojson o = ojson::object();
    o["schedule"] = schedule_json(r.schedule);
    o["value"] = r.value.str();
    o["criterion"] = r.criterion.str();
    o["certificate"] = certificate_json(r.certificate);
    if (r.lower_bound) o["lp_bound"] = *r.lower_bound;
    return o;
}

void print_result(std::ostream& out, const SolveResult& r) {
    out << "schedule: " << schedule_text(r.schedule) << '\n';
    out << "criterion: " << r.criterion.str() << '\n';
    out << "value: " << r.value << '\n';
    out << "certificate: " << r.certificate.str();
    if (r.certificate.basis) out << " [" << to_string(*r.certificate.basis) << ']';
    out << '\n';
    if (r.lower_bound) out << "lp_bound: " << std::setprecision(12) << *r.lower_bound << '\n';
}

Schedule parse_schedule(const std::string& text, const Instance& inst) {
    Schedule s;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            const long v = std::stol(tok, &used);
            if (used != tok.size() || v < 0) throw std::invalid_argument(tok);
            s.order.push_back(static_cast<std::size_t>(v));
        } catch (const std::exception&) {
            throw UsageError("--schedule: '" + tok + "' is not a job index");
        }
    }
    if (!is_feasible(inst, s))
        throw UsageError("--schedule is not a feasible permutation of the " + std::to_string(inst.n) + " jobs");
    return s;
}

int cmd_validate(const Options& o, std::ostream& out) {
    if (o.instance.empty()) throw UsageError("--instance is required");
    const InstanceDocument doc = read_instance_document(read_text_file(o.instance));
    const auto report = validate_instance(doc.instance);
    if (json_format(o)) {
        ojson issues = ojson::array();
        for (const auto& i : report.issues)
            issues.push_back({{"code", std::string(to_string(i.code))},
                              {"line", doc.line_of(i.path)},
                              {"path", i.path},
                              {"message", i.message}});
        out << ojson{{"ok", report.ok()}, {"issues", issues}}.dump(2) << '\n';
    } else if (report.ok()) {
        out << "ok: " << doc.instance.n << " jobs, " << doc.instance.num_scenarios() << " scenarios, objective "
            << to_string(doc.instance.objective) << '\n';
    } else {
        for (const auto& i : report.issues)
            out << "line " << doc.line_of(i.path) << ": " << to_string(i.code) << ": " << i.message << " (" << i.path
                << ")\n";
    }
    return report.ok() ? kOk : kInvalidInstance;
}

int cmd_evaluate(const Options& o, std::ostream& out) {
    const auto criterion = criterion_arg(o);
    const Instance inst = load_instance(o);
    if (o.schedule.empty()) throw UsageError("--schedule is required");
    const Schedule s = parse_schedule(o.schedule, inst);
    const auto costs = scenario_costs(s, inst);
    const Distribution dist = cost_distribution(s, inst);
    Rational alpha(1, 2);
    if (criterion && (criterion->kind() == RiskCriterion::Kind::VaR || criterion->kind() == RiskCriterion::Kind::CVaR))
        alpha = criterion->alpha();
    std::optional<Rational> var, cvar;
    if (alpha.sign() > 0) var = value_at_risk(dist, alpha);
    if (alpha < Rational(1)) cvar = cvar_greedy(dist, alpha);

    if (json_format(o)) {
        ojson r = ojson::object();
        r["schedule"] = schedule_json(s);
        r["costs"] = strings(costs);
        r["expectation"] = expectation(dist).str();
        r["max"] = maximum(dist).str();
        r["alpha"] = alpha.str();
        r["var"] = var ? ojson(var->str()) : ojson(nullptr);
        r["cvar"] = cvar ? ojson(cvar->str()) : ojson(nullptr);
        if (criterion) {
            r["criterion"] = criterion->str();
            r["value"] = evaluate(dist, *criterion).str();
        }
        out << r.dump(2) << '\n';
    } else {
        out << "schedule: " << schedule_text(s) << '\n';
        out << "costs:";
        for (const auto& c : costs) out << ' ' << c;
        out << '\n';
        out << "exp: " << expectation(dist) << '\n';
        out << "max: " << maximum(dist) << '\n';
        out << "var(" << alpha << "): " << (var ? var->str() : "n/a") << '\n';
        out << "cvar(" << alpha << "): " << (cvar ? cvar->str() : "n/a") << '\n';
        if (criterion) out << "value: " << evaluate(dist, *criterion) << '\n';
    }
    return kOk;
}

int cmd_solve(const Options& o, std::ostream& out) {
    const RiskCriterion c = resolve_criterion(o.algorithm, criterion_arg(o));
    const Instance inst = load_instance(o);
    const SolveResult r = run_algorithm(o.algorithm, inst, c, o);
    if (json_format(o))
        out << result_json(r).dump(2) << '\n';
    else
        print_result(out, r);
    return kOk;
}

int cmd_oracle(const Options& o, std::ostream& out) {
    const RiskCriterion c = resolve_criterion(o.algorithm, criterion_arg(o));
    std::vector<Instance> corpus;
    if (!o.instance.empty()) {
        corpus.push_back(load_instance(o));
    } else {
        Rng rng(o.seed);
        const auto g = corpus_options(o.algorithm, o.n, o.K);
        for (std::size_t i = 0; i < o.count; ++i) corpus.push_back(random_instance(rng, g));
    }

    ojson rows = ojson::array();
    std::size_t violations = 0;
    double worst = 0.0;
    if (!json_format(o)) out << "  #  value            optimum          ratio      bound  ok\n";
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const SolveResult r = run_algorithm(o.algorithm, corpus[i], c, o);
        const SolveResult b = brute_force(corpus[i], r.criterion, o.cap ? o.cap : kDefaultExtensionCap);
        const Rational bound = r.certificate.guarantee();
        const bool ok = r.value <= bound * b.value;
        violations += ok ? 0 : 1;
        std::optional<Rational> ratio;
        if (!b.value.is_zero())
            ratio = r.value / b.value;
        else if (r.value.is_zero())
            ratio = Rational(1);
        const double rd = ratio ? ratio->to_double() : std::numeric_limits<double>::infinity();
        worst = std::max(worst, rd);
        if (json_format(o)) {
            rows.push_back({{"index", i},
                            {"value", r.value.str()},
                            {"optimum", b.value.str()},
                            {"ratio", ratio ? ojson(ratio->str()) : ojson("inf")},
                            {"bound", bound.str()},
                            {"ok", ok}});
        } else {
            out << std::setw(3) << i << "  " << std::left << std::setw(16) << r.value.str() << ' ' << std::setw(16)
                << b.value.str() << ' ' << std::setw(10) << std::setprecision(6) << rd << ' ' << std::setw(6)
                << bound.str() << ' ' << (ok ? "yes" : "NO") << std::right << '\n';
        }
    }
    if (json_format(o)) {
        out << ojson{{"algorithm", o.algorithm},
                     {"criterion", c.str()},
                     {"instances", corpus.size()},
                     {"max_ratio", worst},
                     {"violations", violations},
                     {"results", rows}}
                   .dump(2)
            << '\n';
    } else {
        out << "algorithm " << o.algorithm << ", criterion " << c.str() << ": " << corpus.size()
            << " instances, max ratio " << std::setprecision(6) << worst << ", violations " << violations << '\n';
    }
    return violations == 0 ? kOk : kInternal;
}

CnfFormula load_cnf(const Options& o) {
    if (o.cnf.empty()) throw UsageError("--cnf is required for gadget " + o.gadget);
    return parse_dimacs(read_text_file(o.cnf));
}

SelectionInstance load_selection(const std::string& path) {
    if (path.empty()) throw UsageError("--selection is required for gadget selection");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_text_file(path));
        SelectionInstance s;
        s.q = j.at("q").get<std::size_t>();
        s.costs = j.at("costs").get<std::vector<std::vector<int>>>();
        s.num_items = s.costs.empty() ? 0 : s.costs.front().size();
        validate_selection(s);
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidInstance, "selection file: " + std::string(e.what()));
    } catch (const Error& e) {
        throw Error(ErrorCode::InvalidInstance, "selection file: " + std::string(e.what()));
    }
}

int cmd_reduce(const Options& o, std::ostream& out, std::ostream& err) {
    Instance result;
    ojson meta = ojson::object();
    meta["gadget"] = o.gadget;
    if (o.gadget == "min3sat-var") {
        auto obj = parse_objective(o.objective);
        if (!obj) throw UsageError("--objective: unknown objective '" + o.objective + "'");
        if (o.alpha.empty()) throw UsageError("--alpha is required for gadget min3sat-var");
        auto g = min3sat_to_var(load_cnf(o), o.L, rational_arg(o.alpha, "--alpha"), *obj);
        meta["threshold"] = g.threshold.str();
        meta["l"] = g.l;
        meta["dummy"] = std::string(to_string(g.dummy_case));
        result = std::move(g.instance);
    } else if (o.gadget == "3sat-sumt" || o.gadget == "3sat-sumu") {
        auto g = o.gadget == "3sat-sumt" ? threesat_to_minmax_unit_sumT(load_cnf(o))
                                         : threesat_to_minmax_sumU_proc(load_cnf(o));
        meta["threshold"] = g.threshold.str();
        meta["variables"] = g.num_vars;
        result = std::move(g.instance);
    } else if (o.gadget == "selection") {
        const auto s = load_selection(o.selection);
        meta["optimum"] = selection_optimum(s);
        result = selection_to_minmax_unit_sumU(s);
    } else if (o.gadget == "weighted-exp") {
        result = weighted_to_exp(load_instance(o));
    } else if (o.gadget == "invert") {
        result = invert_flowtime(load_instance(o));
    } else if (o.gadget == "add-zero" || o.gadget == "add-max") {
        if (o.alpha.empty()) throw UsageError("--alpha is required for gadget " + o.gadget);
        const Rational alpha = rational_arg(o.alpha, "--alpha");
        const Instance inst = load_instance(o);
        if (o.gadget == "add-zero") {
            result = add_zero_scenario(inst, alpha);
        } else {
            auto a = add_max_scenario(inst, alpha, o.mode == "cvar" ? MaxScenarioMode::CVaR : MaxScenarioMode::VaR);
            meta["scenario_prob"] = a.scenario_prob.str();
            meta["dummy_prob"] = a.dummy_prob.str();
            meta["dummy_cost"] = a.dummy_cost.str();
            result = std::move(a.instance);
        }
    } else {
        throw UsageError("unknown gadget '" + o.gadget + "'");
    }
    meta["jobs"] = result.n;
    meta["scenarios"] = result.num_scenarios();

    const std::string text = format_instance(result);
    std::ostream* meta_out = &err;
    if (o.output.empty()) {
        out << text;
    } else {
        std::ofstream f(o.output, std::ios::binary);
        if (!f) throw UsageError("--output: cannot write '" + o.output + "'");
        f << text;
        meta_out = &out;
    }
    if (json_format(o)) {
        *meta_out << meta.dump(2) << '\n';
    } else {
        for (const auto& [k, v] : meta.items())
            *meta_out << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    }
    return kOk;
}

int cmd_bench(const Options& o, std::ostream& out) {
    std::vector<std::string> algorithms = o.algorithm.empty() ? kAlgorithms : std::vector<std::string>{o.algorithm};
    ojson rows = ojson::array();
    if (!json_format(o))
        out << std::left << std::setw(12) << "algorithm" << std::setw(5) << "n" << std::setw(5) << "K" << std::setw(8)
            << "count" << std::setw(12) << "mean_ms" << std::setw(12) << "max_ms" << "failures" << std::right << '\n';
    for (const auto& alg : algorithms) {
        const RiskCriterion c = default_criterion(alg);
        Rng rng(o.seed);
        const auto g = corpus_options(alg, o.n, o.K);
        double total = 0.0, worst = 0.0;
        std::size_t failures = 0;
        for (std::size_t i = 0; i < o.count; ++i) {
            const Instance inst = random_instance(rng, g);
            const auto t0 = std::chrono::steady_clock::now();
            try {
                run_algorithm(alg, inst, c, o);
            } catch (const Error&) {
                ++failures;
            }
            const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            total += ms;
            worst = std::max(worst, ms);
        }
        const double mean = o.count ? total / static_cast<double>(o.count) : 0.0;
        if (json_format(o)) {
            rows.push_back({{"algorithm", alg},
                            {"n", o.n},
                            {"K", o.K},
                            {"count", o.count},
                            {"mean_ms", mean},
                            {"max_ms", worst},
                            {"failures", failures}});
        } else {
            out << std::left << std::setw(12) << alg << std::setw(5) << o.n << std::setw(5) << o.K << std::setw(8)
                << o.count << std::setw(12) << std::fixed << std::setprecision(3) << mean << std::setw(12) << worst
                << failures << std::right << std::defaultfloat << '\n';
        }
    }
    if (json_format(o)) out << rows.dump(2) << '\n';
    return kOk;
}

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidInstance:
        case ErrorCode::InvalidDistribution:
        case ErrorCode::InvalidFormula: return kInvalidInstance;
        case ErrorCode::AlphaOutOfRange:
        case ErrorCode::InvalidParameter: return kUsage;
        default: return kSolverFailure;
    }
}

void report_error(const Options& o, std::ostream& out, std::ostream& err, const std::string& code,
                  const std::string& message, const std::vector<FormatIssue>& issues = {}) {
    err << "error: " << (code == "UsageError" || code == "Internal" ? "" : code + ": ") << message << '\n';
    if (!json_format(o)) return;
    ojson e = {{"code", code}, {"message", message}};
    if (!issues.empty()) {
        ojson list = ojson::array();
        for (const auto& i : issues) list.push_back({{"line", i.line}, {"path", i.path}, {"message", i.message}});
        e["issues"] = list;
    }
    out << ojson{{"error", e}}.dump(2) << '\n';
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Single-machine scheduling under scenario uncertainty with risk criteria", "riskched"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub, bool with_instance, bool with_criterion) {
        if (with_instance) sub->add_option("--instance", o.instance, "Instance file (JSON)");
        if (with_criterion) {
            sub->add_option("--criterion", o.criterion, "Risk criterion")
                ->check(CLI::IsMember({"exp", "max", "var", "cvar"}));
            sub->add_option("--alpha", o.alpha, "Risk level as a rational, e.g. 1/2");
        }
        sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--seed", o.seed, "Random seed for generated corpora");
    };

    auto* validate = app.add_subcommand("validate", "Check an instance file and list every violation");
    common(validate, true, false);

    auto* evaluate_cmd = app.add_subcommand("evaluate", "Evaluate a schedule under all four criteria");
    common(evaluate_cmd, true, true);
    evaluate_cmd->add_option("--schedule", o.schedule, "Job order, e.g. 0,2,1");

    auto* solve = app.add_subcommand("solve", "Run a solver on an instance");
    common(solve, true, true);
    solve->add_option("--algorithm", o.algorithm, "Solver")->required()->check(CLI::IsMember(kAlgorithms));
    solve->add_option("--epsilon", o.epsilon, "FPTAS accuracy in (0,1)");
    solve->add_option("--base", o.base, "Expectation solver for lift")
        ->check(CLI::IsMember({"auto", "assignment", "wspt", "brute"}));
    solve->add_option("--cap", o.cap, "Enumeration cap override");

    auto* oracle = app.add_subcommand("oracle", "Compare a solver with brute force");
    common(oracle, true, true);
    oracle->add_option("--algorithm", o.algorithm, "Solver")->required()->check(CLI::IsMember(kAlgorithms));
    oracle->add_option("--epsilon", o.epsilon, "FPTAS accuracy in (0,1)");
    oracle->add_option("--base", o.base, "Expectation solver for lift")
        ->check(CLI::IsMember({"auto", "assignment", "wspt", "brute"}));
    oracle->add_option("--cap", o.cap, "Enumeration cap override");
    oracle->add_option("--count", o.count, "Generated instances");
    oracle->add_option("--n", o.n, "Jobs per generated instance");
    oracle->add_option("--K", o.K, "Scenarios per generated instance");

    auto* reduce = app.add_subcommand("reduce", "Generate a gadget or transformed instance");
    common(reduce, true, false);
    reduce->add_option("--alpha", o.alpha, "Risk level for min3sat-var, add-zero, add-max");
    reduce->add_option("--gadget", o.gadget, "Construction")->required()->check(CLI::IsMember(kGadgets));
    reduce->add_option("--cnf", o.cnf, "DIMACS CNF input");
    reduce->add_option("--L", o.L, "Min-3-SAT bound on satisfied clauses");
    reduce->add_option("--objective", o.objective, "min3sat-var objective")
        ->check(CLI::IsMember({"maxT", "sumT", "sumU"}));
    reduce->add_option("--mode", o.mode, "add-max mode")->check(CLI::IsMember({"var", "cvar"}));
    reduce->add_option("--selection", o.selection, "Selection instance (JSON with q and costs)");
    reduce->add_option("--output", o.output, "Write the instance here instead of stdout");

    auto* bench = app.add_subcommand("bench", "Time solvers on generated corpora");
    common(bench, false, false);
    bench->add_option("--algorithm", o.algorithm, "Single solver (default: all)")->check(CLI::IsMember(kAlgorithms));
    bench->add_option("--epsilon", o.epsilon, "FPTAS accuracy in (0,1)");
    bench->add_option("--count", o.count, "Instances per solver");
    bench->add_option("--n", o.n, "Jobs per instance");
    bench->add_option("--K", o.K, "Scenarios per instance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (validate->parsed()) return cmd_validate(o, out);
        if (evaluate_cmd->parsed()) return cmd_evaluate(o, out);
        if (solve->parsed()) return cmd_solve(o, out);
        if (oracle->parsed()) return cmd_oracle(o, out);
        if (reduce->parsed()) return cmd_reduce(o, out, err);
        if (bench->parsed()) return cmd_bench(o, out);
    } catch (const UsageError& e) {
        report_error(o, out, err, "UsageError", e.what());
        return kUsage;
    } catch (const InstanceFormatError& e) {
        report_error(o, out, err, "InvalidInstance", e.detail(), e.issues());
        return kInvalidInstance;
    } catch (const Error& e) {
        report_error(o, out, err, std::string(to_string(e.code())), e.detail());
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        report_error(o, out, err, "Internal", e.what());
        return kInternal;
    }
    return kUsage;
}

}  // namespace riskched::cli
