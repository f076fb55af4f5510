#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>
#include <string_view>
#include <vector>

#include <CLI11.hpp>

#include "steer/criteria.hpp"
#include "steer/distributions.hpp"
#include "steer/error.hpp"
#include "steer/io.hpp"
#include "steer/lhs.hpp"
#include "steer/robustness.hpp"

namespace steer::cli {

namespace {

double parse_number(std::string_view text, std::string_view what) {
    const std::string s(text);
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(s, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used == 0 || used != s.size()) {
        throw Error(ErrorCode::ParseError, "bad value for " + std::string(what) + ": '" + s + "'");
    }
    return value;
}

/// Value of `key` in a shorthand like "ghz:a=0.7".
double shorthand_param(std::string_view source, std::string_view name, std::string_view key) {
    const auto colon = source.find(':');
    if (colon == std::string_view::npos) {
        throw Error(ErrorCode::ParseError, "state '" + std::string(name) + "' needs ':" + std::string(key) + "=<value>'");
    }
    const auto assignment = source.substr(colon + 1);
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos || assignment.substr(0, eq) != key) {
        throw Error(ErrorCode::ParseError, "expected '" + std::string(name) + ":" + std::string(key) + "=<value>', got '" +
                                               std::string(source) + "'");
    }
    return parse_number(assignment.substr(eq + 1), key);
}

/// Built-in shorthands (ghz, ghz:a=, w, bell, ghz-noise:p=, w-noise:p=) or a state JSON file.
StateValue resolve_state(const std::string &source) {
    const std::string_view view(source);
    const auto name = view.substr(0, view.find(':'));
    const bool bare = name.size() == view.size();
    if (name == "ghz") return bare ? ghz_state() : ghz_family(shorthand_param(view, name, "a"));
    if (name == "w" && bare) return w_state();
    if (name == "bell" && bare) return bell_state();
    if (name == "ghz-noise") return white_noise_mix(ghz_state(), shorthand_param(view, name, "p"));
    if (name == "w-noise") return white_noise_mix(w_state(), shorthand_param(view, name, "p"));
    return load_state_file(source);
}

std::vector<ObservablePair> resolve_observables(const std::string &source, const PartyLayout &layout) {
    std::vector<ObservablePair> pairs;
    if (source == "pauli" || source == "mub") {
        for (std::size_t p = 0; p < layout.party_count(); ++p) {
            if (source == "pauli" && layout.dim(p) != 2) {
                throw Error(ErrorCode::DimensionMismatch, "--obs pauli needs qubits; use --obs mub for qudits");
            }
            pairs.push_back(source == "pauli" ? pauli_pair() : mub_pair(layout.dim(p)));
        }
        return pairs;
    }
    std::ifstream in(source);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open observable file '" + source + "'");
    std::stringstream text;
    text << in.rdbuf();
    return parse_observable_pairs_json(text.str(), layout);
}

std::string bound_text(const std::optional<double> &bound) {
    if (!bound) return "-";
    std::ostringstream s;
    s << std::setprecision(6) << *bound;
    return s.str();
}

void print_table(std::ostream &out, std::span<const CriterionReport> reports) {
    out << std::left << std::setw(10) << "criterion" << std::right << std::setw(12) << "lhs" << std::setw(12)
        << "steering" << std::setw(12) << "gms" << "  verdict\n";
    for (const auto &r : reports) {
        std::ostringstream lhs;
        lhs << std::setprecision(6) << r.lhs;
        out << std::left << std::setw(10) << to_string(r.id) << std::right << std::setw(12) << lhs.str()
            << std::setw(12) << bound_text(r.steering_bound) << std::setw(12) << bound_text(r.gms_bound) << "  "
            << to_string(r.verdict) << '\n';
    }
    const auto overall = classify(reports);
    out << "overall: " << to_string(overall.verdict);
    if (overall.criterion) out << " (" << to_string(*overall.criterion) << ')';
    out << '\n';
}

Scenario parse_scenario(const std::string &name) {
    for (Scenario s : {Scenario::OneToTwo, Scenario::TwoToOne, Scenario::Bipartite}) {
        if (to_string(s) == name) return s;
    }
    throw Error(ErrorCode::ParseError, "unknown scenario '" + name + "'");
}

BoundKind parse_bound(const std::string &name) {
    if (name == "steering") return BoundKind::Steering;
    if (name == "gms") return BoundKind::Gms;
    throw Error(ErrorCode::ParseError, "unknown bound '" + name + "' (expected steering or gms)");
}

CriterionId require_criterion(std::string_view name) {
    const auto id = parse_criterion(name);
    if (!id) throw Error(ErrorCode::ParseError, "unknown criterion '" + std::string(name) + "'");
    return *id;
}

std::vector<CriterionId> parse_criteria_list(const std::string &list) {
    if (list == "all") return {kAllCriteria.begin() + 1, kAllCriteria.end()};
    std::vector<CriterionId> ids;
    std::stringstream in(list);
    for (std::string name; std::getline(in, name, ',');) ids.push_back(require_criterion(name));
    if (ids.empty()) throw Error(ErrorCode::EmptyInput, "--criteria is empty");
    return ids;
}

void write_text(const std::string &path, const std::string &text, std::ostream &out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file || !(file << text)) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
}

// ---- subcommands ----

struct EvalArgs {
    std::string state;
    std::string scenario = "one-to-two";
    std::string obs = "pauli";
    bool csv = false;
    std::string dump_state;
};

int run_eval(const EvalArgs &a, std::ostream &out) {
    const StateValue value = resolve_state(a.state);
    if (!a.dump_state.empty()) save_state_file(a.dump_state, value);
    const DensityOperator rho = as_density(value);
    const auto pairs = resolve_observables(a.obs, rho.layout());
    std::vector<CriterionReport> reports;
    switch (parse_scenario(a.scenario)) {
        case Scenario::Bipartite:
            if (pairs.size() != 2) throw Error(ErrorCode::BadArity, "bipartite scenario needs a 2-party state");
            reports.push_back(evaluate_bipartite(rho, pairs[0], pairs[1]));
            break;
        case Scenario::OneToTwo:
            if (pairs.size() != 3) throw Error(ErrorCode::BadArity, "one-to-two scenario needs a 3-party state");
            reports = evaluate_one_to_two(rho, pairs[0], pairs[1], pairs[2]);
            break;
        case Scenario::TwoToOne:
            if (pairs.size() != 3) throw Error(ErrorCode::BadArity, "two-to-one scenario needs a 3-party state");
            reports = evaluate_two_to_one(rho, pairs[0], pairs[1], pairs[2]);
            break;
    }
    if (a.csv) {
        out << reports_to_csv(reports);
    } else {
        out << "state: " << a.state << "\nscenario: " << a.scenario << '\n';
        print_table(out, reports);
    }
    return 0;
}

struct DistArgs {
    std::string state;
    std::string obs = "pauli";
    std::size_t setting = 0;
    std::string out_path;
};

int run_dist(const DistArgs &a, std::ostream &out) {
    const DensityOperator rho = as_density(resolve_state(a.state));
    const auto pairs = resolve_observables(a.obs, rho.layout());
    std::vector<Observable> chosen;
    for (const auto &pair : pairs) chosen.push_back(pair.setting(a.setting));
    write_text(a.out_path, to_csv(joint_distribution(rho, chosen)), out);
    return 0;
}

struct SweepArgs {
    std::string family;
    double from = 0.0;
    double to = 1.0;
    std::size_t steps = 101;
    std::string criteria = "all";
    std::string out_path;
};

int run_sweep(const SweepArgs &a, std::ostream &out) {
    const auto ids = parse_criteria_list(a.criteria);
    write_text(a.out_path, to_csv(sweep(parse_family(a.family), a.from, a.to, a.steps, ids)), out);
    return 0;
}

struct ThresholdArgs {
    std::string family;
    std::string criterion;
    std::string bound = "steering";
    ThresholdOptions options;
};

int run_threshold(const ThresholdArgs &a, std::ostream &out) {
    const auto t = find_threshold(parse_family(a.family), require_criterion(a.criterion), parse_bound(a.bound),
                                  a.options);
    out << a.family << ' ' << to_string(t.criterion) << ' ' << to_string(t.bound) << ": ";
    if (t.found()) {
        out << "p* = " << std::setprecision(6) << *t.p_star << " +- " << std::setprecision(3) << t.bracket << '\n';
    } else {
        out << "p* = NotFound\n";
    }
    return 0;
}

struct LhsCheckArgs {
    std::string kind = "lhs";
    std::size_t samples = 500;
    std::size_t branches = 4;
    std::uint64_t seed = 0;
};

template <typename Model>
int check_models(const std::vector<Model> &models, std::ostream &out) {
    const auto obs = pauli_observables();
    for (std::size_t i = 0; i < models.size(); ++i) {
        try {
            verify_no_violation(models[i], obs);
        } catch (const OracleFailure &failure) {
            out << "FAIL " << i << '/' << models.size() << ": " << failure.check() << " margin "
                << std::setprecision(6) << failure.margin() << '\n'
                << failure.model_json() << '\n';
            return 1;
        }
    }
    out << "PASS " << models.size() << '/' << models.size() << '\n';
    return 0;
}

int run_lhs_check(const LhsCheckArgs &a, std::ostream &out) {
    const SamplingOptions options{a.branches, {2, 2, 2}};
    if (a.kind == "lhs") return check_models(sample_lhs(a.samples, options, a.seed), out);
    if (a.kind == "hybrid") return check_models(sample_hybrid(a.samples, options, a.seed), out);
    if (a.kind == "two-to-one") return check_models(sample_two_to_one(a.samples, options, a.seed), out);
    throw Error(ErrorCode::ParseError, "unknown model kind '" + a.kind + "'");
}

}  // namespace

int run(std::span<const std::string> args, std::ostream &out, std::ostream &err) {
    CLI::App app("Entropic steering criteria for tripartite quantum states", "steer");
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    std::function<int()> action;

    EvalArgs eval;
    auto *eval_cmd = app.add_subcommand("eval", "Evaluate the criteria of one scenario on a state");
    eval_cmd->add_option("--state", eval.state, "ghz | ghz:a=A | w | bell | ghz-noise:p=P | w-noise:p=P | <file>")
        ->required();
    eval_cmd->add_option("--scenario", eval.scenario, "one-to-two | two-to-one | bipartite")->capture_default_str();
    eval_cmd->add_option("--obs", eval.obs, "pauli | mub | <observable-set file>")->capture_default_str();
    eval_cmd->add_flag("--csv", eval.csv, "Print the report as CSV");
    eval_cmd->add_option("--dump-state", eval.dump_state, "Also write the resolved state as JSON");
    eval_cmd->callback([&] { action = [&] { return run_eval(eval, out); }; });

    DistArgs dist;
    auto *dist_cmd = app.add_subcommand("dist", "Print the joint outcome distribution of one setting as CSV");
    dist_cmd->add_option("--state", dist.state, "State shorthand or file")->required();
    dist_cmd->add_option("--obs", dist.obs, "pauli | mub | <observable-set file>")->capture_default_str();
    dist_cmd->add_option("--setting", dist.setting, "0 = first observable of every pair, 1 = second")
        ->check(CLI::Range(0, 1))
        ->capture_default_str();
    dist_cmd->add_option("--out", dist.out_path, "Output path (default stdout)");
    dist_cmd->callback([&] { action = [&] { return run_dist(dist, out); }; });

    SweepArgs sw;
    auto *sweep_cmd = app.add_subcommand("sweep", "Tabulate criteria along a state family");
    sweep_cmd->add_option("--family", sw.family, "ghz | ghz-noise | w-noise")->required();
    sweep_cmd->add_option("--from", sw.from)->capture_default_str();
    sweep_cmd->add_option("--to", sw.to)->capture_default_str();
    sweep_cmd->add_option("--steps", sw.steps)->capture_default_str();
    sweep_cmd->add_option("--criteria", sw.criteria, "Comma-separated ids or 'all'")->capture_default_str();
    sweep_cmd->add_option("--out", sw.out_path, "Output path (default stdout)");
    sweep_cmd->callback([&] { action = [&] { return run_sweep(sw, out); }; });

    ThresholdArgs th;
    auto *th_cmd = app.add_subcommand("threshold", "Locate the lowest parameter at which a bound is violated");
    th_cmd->add_option("--family", th.family, "ghz | ghz-noise | w-noise")->required();
    th_cmd->add_option("--criterion", th.criterion, "S1, S2, S3, C (= C_B), C_C, A, T1, T2A, T2B, Tsum")->required();
    th_cmd->add_option("--bound", th.bound, "steering | gms")->capture_default_str();
    th_cmd->add_option("--tol", th.options.tolerance, "Bisection tolerance")->capture_default_str();
    th_cmd->add_option("--grid", th.options.grid_points, "Coarse scan points")->capture_default_str();
    th_cmd->callback([&] { action = [&] { return run_threshold(th, out); }; });

    LhsCheckArgs lc;
    auto *lc_cmd = app.add_subcommand("lhs-check", "Check sampled hidden-state models against every bound");
    lc_cmd->add_option("--kind", lc.kind, "lhs | hybrid | two-to-one")->capture_default_str();
    lc_cmd->add_option("--samples", lc.samples)->capture_default_str();
    lc_cmd->add_option("--branches", lc.branches)->capture_default_str();
    lc_cmd->add_option("--seed", lc.seed)->required();
    lc_cmd->callback([&] { action = [&] { return run_lhs_check(lc, out); }; });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        return action();
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace steer::cli
