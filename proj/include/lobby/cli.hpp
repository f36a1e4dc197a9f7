#pragma once

// Command-line front end. Parsing (flags, key=value files, re-ingested JSON
// output) fills a RunConfig; run() executes it and returns the exit status.

#include <cctype>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "lobby/analysis.hpp"
#include "lobby/oracle.hpp"
#include "lobby/public_persuasion.hpp"
#include "lobby/report.hpp"

namespace lobby::cli {

using nlohmann::json;

enum ExitCode { kOk = 0, kInvalidConfig = 2, kAssumptionViolated = 3, kVerificationFailed = 4 };

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

inline const std::vector<std::string>& commands() {
    static const std::vector<std::string> names{"solve", "sweep", "verify", "fig1", "example1", "public"};
    return names;
}

struct RunConfig {
    std::string command = "solve";
    Params params;
    Regime regime = Regime::baseline();
    std::string curve = "linear";
    std::string output_path;
    std::string format;  // csv, json or text; empty picks the command's default
    std::uint64_t seed = 20240601;
    Axis axis = Axis::Theta;
    double from = 0.0;
    double to = 4.0;
    int steps = 17;
    int lobbyist_grid = 300;
    int zoom = 101;
    int politician_grid = 1000;
    long long mc_samples = 1000000;
    int public_grid = 100001;
};

// ---- parsing ----------------------------------------------------------------

namespace detail {

inline std::string trim(std::string s) {
    const auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

inline double to_double(const std::string& key, const std::string& v) {
    if (v == "inf" || v == "infinity") return std::numeric_limits<double>::infinity();
    std::size_t used = 0;
    double d = 0.0;
    try {
        d = std::stod(v, &used);
    } catch (const std::exception&) {
        throw ConfigError(key + ": not a number: '" + v + "'");
    }
    if (used != v.size()) throw ConfigError(key + ": not a number: '" + v + "'");
    return d;
}

inline long long to_integer(const std::string& key, const std::string& v) {
    const double d = to_double(key, v);
    if (!std::isfinite(d) || d != std::floor(d)) throw ConfigError(key + ": expected an integer");
    return static_cast<long long>(d);
}

} // namespace detail

/// Sets one configuration key from its textual value.
inline void set_option(RunConfig& c, const std::string& key, const std::string& raw) {
    const std::string v = detail::trim(raw);
    if (key == "command") {
        if (std::find(commands().begin(), commands().end(), v) == commands().end()) {
            throw ConfigError("unknown command '" + v + "'");
        }
        c.command = v;
    } else if (key == "mu0") {
        c.params.mu0 = detail::to_double(key, v);
    } else if (key == "tau") {
        c.params.tau = detail::to_double(key, v);
    } else if (key == "theta") {
        const double t = detail::to_double(key, v);
        if (std::isnan(t) || t < 0.0) throw ConfigError("theta must be >= 0 or inf");
        c.params.theta = std::isinf(t) ? Theta::infinity() : Theta(t);
    } else if (key == "gamma") {
        c.params.gamma = detail::to_double(key, v);
    } else if (key == "regime") {
        const auto r = regime_from_string(v);
        if (!r) throw ConfigError("unknown regime '" + v + "'");
        c.regime = *r;
    } else if (key == "curve") {
        c.curve = v;
    } else if (key == "output") {
        c.output_path = v;
    } else if (key == "format") {
        if (v != "csv" && v != "json" && v != "text") throw ConfigError("format must be csv, json or text");
        c.format = v;
    } else if (key == "seed") {
        try {
            c.seed = std::stoull(v);
        } catch (const std::exception&) {
            throw ConfigError("seed: expected an unsigned integer");
        }
    } else if (key == "axis") {
        const auto a = axis_from_string(v);
        if (!a) throw ConfigError("axis must be theta, gamma, mu0 or tau");
        c.axis = *a;
    } else if (key == "from") {
        c.from = detail::to_double(key, v);
    } else if (key == "to") {
        c.to = detail::to_double(key, v);
    } else if (key == "steps") {
        c.steps = static_cast<int>(detail::to_integer(key, v));
    } else if (key == "grid") {
        c.lobbyist_grid = static_cast<int>(detail::to_integer(key, v));
    } else if (key == "zoom") {
        c.zoom = static_cast<int>(detail::to_integer(key, v));
    } else if (key == "politician_grid") {
        c.politician_grid = static_cast<int>(detail::to_integer(key, v));
    } else if (key == "samples") {
        c.mc_samples = detail::to_integer(key, v);
    } else if (key == "public_grid") {
        c.public_grid = static_cast<int>(detail::to_integer(key, v));
    } else {
        throw ConfigError("unknown key '" + key + "'");
    }
}

/// Flat key=value text; '#' starts a comment.
inline void load_key_values(RunConfig& c, std::istream& in) {
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(n) + ": expected key=value");
        set_option(c, detail::trim(line.substr(0, eq)), line.substr(eq + 1));
    }
}

/// JSON object of the same keys, or a previous JSON output carrying one
/// under "config".
inline void load_json(RunConfig& c, const json& j) {
    const json& obj = j.contains("config") ? j.at("config") : j;
    if (!obj.is_object()) throw ConfigError("JSON config must be an object");
    for (const auto& [key, value] : obj.items()) {
        std::string text;
        if (value.is_string()) {
            text = value.get<std::string>();
        } else if (value.is_number_integer() || value.is_number_unsigned()) {
            text = value.dump();
        } else if (value.is_number_float()) {
            text = fmt::format("{:.17g}", value.get<double>());
        } else {
            throw ConfigError("config key '" + key + "' has an unsupported value");
        }
        set_option(c, key, text);
    }
}

inline void load_config_file(RunConfig& c, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        json j;
        try {
            j = json::parse(text);
        } catch (const json::parse_error& e) {
            throw ConfigError(std::string("config JSON: ") + e.what());
        }
        load_json(c, j);
    } else {
        std::istringstream lines(text);
        load_key_values(c, lines);
    }
}

/// Everything needed to reproduce a run, with full precision for numbers.
inline json config_json(const RunConfig& c) {
    return {{"command", c.command},
            {"mu0", c.params.mu0},
            {"tau", c.params.tau},
            {"theta", c.params.theta.is_infinite() ? json("inf") : json(c.params.theta.value())},
            {"gamma", c.params.gamma},
            {"regime", to_string(c.regime)},
            {"curve", c.curve},
            {"seed", c.seed},
            {"axis", to_string(c.axis)},
            {"from", c.from},
            {"to", c.to},
            {"steps", c.steps},
            {"grid", c.lobbyist_grid},
            {"zoom", c.zoom},
            {"politician_grid", c.politician_grid},
            {"samples", c.mc_samples},
            {"public_grid", c.public_grid}};
}

/// linear | sqrt | power:k | table:path
inline ReputationCurve make_curve(const std::string& spec) {
    if (spec == "linear") return ReputationCurve::linear();
    if (spec == "sqrt") return ReputationCurve::power(0.5);
    if (spec.rfind("power:", 0) == 0) return ReputationCurve::power(detail::to_double("curve", spec.substr(6)));
    if (spec.rfind("table:", 0) == 0) {
        std::ifstream in(spec.substr(6));
        if (!in) throw ConfigError("cannot open curve table '" + spec.substr(6) + "'");
        return ReputationCurve::parse_table(in);
    }
    throw ConfigError("curve must be linear, sqrt, power:k or table:path");
}

inline void validate(const RunConfig& c) {
    try {
        lobby::validate(c.params);
        lobby::validate(c.regime);
    } catch (const ModelError& e) {
        throw ConfigError(e.what());
    }
    if (c.command == "sweep") {
        if (c.steps < 1) throw ConfigError("steps must be positive");
        if (c.steps > 1 && !(c.to > c.from)) throw ConfigError("sweep needs from < to");
    }
    if (c.lobbyist_grid < 2 || c.zoom < 2 || c.politician_grid < 1) throw ConfigError("grid sizes too small");
    if (c.mc_samples < 1) throw ConfigError("samples must be positive");
    if (c.public_grid < 2) throw ConfigError("public_grid too small");
}

/// Parses argv. Later sources override earlier ones: defaults, --config
/// file, explicit flags.
inline RunConfig parse_args(int argc, const char* const* argv) {
    CLI::App app{"Equilibria of lobbying with career-concerned politicians"};
    std::string command;
    std::string config_path;
    std::map<std::string, std::string> flags;
    app.add_option("command", command, "solve | sweep | verify | fig1 | example1 | public")->required();
    app.add_option("--config", config_path, "key=value file or JSON output of a previous run");
    const std::vector<std::pair<std::string, std::string>> spec{
        {"mu0", "prior probability of state A"},
        {"tau", "prior probability of high ability"},
        {"theta", "career-concern weight (number or inf)"},
        {"gamma", "probability the lobbyist prefers a"},
        {"regime", "baseline | concealed-intent | concealed-consequence | concealed-both | experiment-public | fully-public"},
        {"curve", "linear | sqrt | power:k | table:path"},
        {"format", "csv | json | text"},
        {"seed", "Monte Carlo seed"},
        {"axis", "sweep axis: theta | gamma | mu0 | tau"},
        {"from", "first sweep value"},
        {"to", "last sweep value"},
        {"steps", "number of sweep points"},
        {"grid", "lobbyist grid points per dimension"},
        {"zoom", "local zoom points per dimension"},
        {"politician_grid", "politician mixing grid"},
        {"samples", "Monte Carlo samples"},
        {"public_grid", "experiment grid for the public-experiment check"},
    };
    for (const auto& [name, help] : spec) {
        std::string flag = "--" + name;
        std::replace(flag.begin(), flag.end(), '_', '-');
        app.add_option(flag, flags[name], help);
    }
    app.add_option("-o,--output", flags["output"], "output file (stdout when absent)");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        throw;
    } catch (const CLI::ParseError& e) {
        throw ConfigError(e.what());
    }
    RunConfig c;
    if (!config_path.empty()) load_config_file(c, config_path);
    set_option(c, "command", command);
    for (const auto& [name, value] : flags) {
        std::string flag = "--" + name;
        std::replace(flag.begin(), flag.end(), '_', '-');
        if (name == "output") flag = "--output";
        if (app.count(flag) > 0) set_option(c, name, value);
    }
    validate(c);
    return c;
}

// ---- commands ----------------------------------------------------------------

namespace detail {

inline std::string fraction_note(double v, int num, int den) {
    return fmt::format("{} (exact {}/{})", report::num(v), num, den);
}

inline int cmd_solve(const RunConfig& c, const ReputationCurve& f, std::ostream& out, const std::string& fmt_) {
    const RegimeEquilibrium eq = solve_regime(c.params, c.regime, f);
    if (fmt_ == "json") {
        out << json{{"config", config_json(c)}, {"result", report::to_json(c.params, eq)}}.dump(2) << '\n';
    } else {
        out << report::kCsvHeader << '\n' << report::csv_row(c.params, eq) << '\n';
    }
    return kOk;
}

inline int cmd_sweep(const RunConfig& c, const ReputationCurve& f, std::ostream& out, const std::string& fmt_) {
    const std::vector<double> grid = numeric::linspace(c.from, c.to, static_cast<std::size_t>(c.steps));
    const SweepResult s = sweep(c.params, c.regime, c.axis, grid, f);
    if (fmt_ == "json") {
        out << json{{"config", config_json(c)}, {"result", report::to_json(s)}}.dump(2) << '\n';
    } else {
        report::write_sweep_csv(out, s);
    }
    return kOk;
}

inline int cmd_verify(const RunConfig& c, const ReputationCurve& f, std::ostream& out, const std::string& fmt_) {
    const RegimeEquilibrium eq = solve_regime(c.params, c.regime, f);
    const Profile profile = eq.outcome.profile();
    DeviationReport d = verify_politician(c.params, eq.regime, profile, f, c.politician_grid);
    const DeviationReport l = verify_lobbyist(c.params, eq.regime, profile, f, c.lobbyist_grid, c.zoom);
    d.max_lobbyist_gain = l.max_lobbyist_gain;
    d.lobbyist_witness = l.lobbyist_witness;
    d.grid_resolution = c.lobbyist_grid;
    d.mc_samples = c.mc_samples;
    d.seed = c.seed;
    MonteCarloReport mc = monte_carlo_reputation(c.params, eq.regime, profile, c.mc_samples, c.seed);
    if (eq.regime.persuasion == Persuasion::FullyPublic) {
        // Reputations are conditioned on the recommendation; compare after a~.
        for (int x = 0; x < 2; ++x)
            for (int s = 0; s < 2; ++s) mc.cells[x][s] = mc.by_rec[0][x][s];
    }
    const McComparison cmp = compare_reputations(mc, eq.outcome.reputations);
    const bool ok = d.certified() && cmp.within;
    if (fmt_ == "text") {
        out << "max politician gain " << report::num(d.max_politician_gain) << '\n'
            << "max lobbyist gain   " << report::num(d.max_lobbyist_gain) << '\n'
            << "monte carlo worst z " << report::num(cmp.worst_z) << " over " << c.mc_samples << " samples\n"
            << (ok ? "certified" : "NOT certified") << '\n';
    } else {
        json empty = cmp.empty_cells;
        out << json{{"config", config_json(c)},
                    {"result", report::to_json(c.params, eq)},
                    {"deviation", report::to_json(d)},
                    {"monte_carlo", {{"worst_z", report::jnum(cmp.worst_z)},
                                     {"within_3se", cmp.within},
                                     {"empty_cells", empty}}},
                    {"certified", ok}}
                   .dump(2)
            << '\n';
    }
    return ok ? kOk : kVerificationFailed;
}

inline int cmd_fig1(const RunConfig& c, const ReputationCurve& f, std::ostream& out, const std::string& fmt_) {
    const Figure1Table t = figure1_table(c.params, f);
    if (fmt_ == "json") {
        out << json{{"config", config_json(c)}, {"result", report::to_json(t)}}.dump(2) << '\n';
    } else if (fmt_ == "csv") {
        out << report::kCsvHeader << '\n';
        for (int i = 0; i < 2; ++i) {
            for (int k = 0; k < 2; ++k) {
                RegimeEquilibrium eq = t.equilibria[i][k];
                eq.outcome.welfare = t.welfare[i][k];
                out << report::csv_row(c.params, eq) << '\n';
            }
        }
    } else {
        out << fmt::format("{:<18}{:>22}{:>22}{:>8}\n", "", "consequence public", "consequence hidden", "effect");
        const char* rows[2] = {"intent public", "intent hidden"};
        for (int i = 0; i < 2; ++i) {
            out << fmt::format("{:<18}{:>22}{:>22}{:>8}\n", rows[i], report::num(t.welfare[i][0]),
                               report::num(t.welfare[i][1]), sign_label(t.consequence_sign[i]));
        }
        out << fmt::format("{:<18}{:>22}{:>22}\n", "effect", sign_label(t.intent_sign[0]),
                           sign_label(t.intent_sign[1]));
        out << "effect = welfare with the dimension public minus welfare with it hidden\n";
    }
    return kOk;
}

inline int cmd_example1(const RunConfig& c, std::ostream& out, const std::string& fmt_) {
    Params p;
    p.mu0 = 1.0 / 3.0;
    p.tau = 0.5;
    p.gamma = 8.0 / 9.0;
    p.theta = Theta::infinity();
    const ReputationCurve f = ReputationCurve::linear();
    const Experiment e{1.0, 3.0 / 7.0};
    const double mu = *posterior(p.mu0, e, Recommendation::a);

    const BestResponse revealed = best_response(p, e, f);
    Profile revealed_profile;
    revealed_profile.lobbyist_a = {e, revealed.strategy};
    const ReputationProfile reps = reputation(p, Regime::baseline(), revealed_profile);

    Profile hidden;
    hidden.lobbyist_a = {e, PoliticianStrategy::obedient()};
    hidden.weight_a = p.gamma;
    const BestResponse concealed = best_response(p, Regime::concealed_intent(), e, f, hidden);
    const double residual = std::abs(lobby::detail::informer_net(p, Transparency::Revealed, p.gamma, f, mu));
    const RegimeEquilibrium solved = solve_concealed_intent(p, f);

    Profile obedient_a;
    obedient_a.lobbyist_a = {e, PoliticianStrategy::obedient()};
    const double w_revealed = welfare(p, revealed_profile);
    const double w_concealed = welfare(p, obedient_a);

    if (fmt_ == "json") {
        out << json{{"config", config_json(c)},
                    {"result",
                     {{"posterior_a", report::jnum(mu)},
                      {"revealed_intent_p_after_a", report::jnum(revealed.strategy.after_a)},
                      {"rep_a", report::jnum(reps.rep_a())},
                      {"rep_b", report::jnum(reps.rep_b())},
                      {"concealed_intent_p_after_a", report::jnum(concealed.strategy.after_a)},
                      {"concealed_intent_residual", report::jnum(residual)},
                      {"concealed_intent_case", to_string(solved.case_label)},
                      {"concealed_intent_mu_info", report::jnum(solved.outcome.posterior_info)},
                      {"welfare_revealed_intent", report::jnum(w_revealed)},
                      {"welfare_concealed_intent", report::jnum(w_concealed)},
                      {"welfare_loss", report::jnum(w_concealed - w_revealed)}}}}
                   .dump(2)
            << '\n';
        return kOk;
    }
    out << "example: mu0=1/3 tau=1/2 gamma=8/9 theta=inf, pi(a~|A)=1, pi(b~|B)=4/7\n"
        << "posterior at a~                      " << fraction_note(mu, 7, 13) << '\n'
        << "preference public: P(a | a~)         " << fraction_note(revealed.strategy.after_a, 8, 9) << '\n'
        << "  reputation after a, state A        " << fraction_note(reps.rep_a(), 9, 17) << '\n'
        << "  reputation after b, state B        " << fraction_note(reps.rep_b(), 21, 34) << '\n'
        << "preference hidden: P(a | a~)         " << report::num(concealed.strategy.after_a) << '\n'
        << "  defining-equation residual         " << report::num(residual) << '\n'
        << "  solver case / posterior            " << to_string(solved.case_label) << " / "
        << report::num(solved.outcome.posterior_info) << '\n'
        << "welfare, preference public           " << fraction_note(w_revealed, 323, 378) << '\n'
        << "welfare, preference hidden           " << fraction_note(w_concealed, 6, 7) << '\n'
        << "welfare lost by revealing preference " << fraction_note(w_concealed - w_revealed, 1, 378) << '\n';
    return kOk;
}

inline int cmd_public(const RunConfig& c, const ReputationCurve& f, std::ostream& out, const std::string& fmt_) {
    const ElasticityCheck el = check_elasticity(f, c.params.theta);
    if (!el.holds) {
        throw AssumptionViolated(fmt::format("reputation curve too elastic at tau={}", report::num(*el.witness)));
    }
    const PublicPersuasionSolution s = solve_fully_public(c.params, f);
    const RegimeEquilibrium priv = solve_baseline(c.params, f);
    const EquivalenceReport eqv = verify_experiment_public_equivalence(c.params, f, c.public_grid);
    const double mu_r = replicating_private_posterior(c.params, s.p_at_a, f);
    if (fmt_ == "json") {
        json curve = json::array();
        for (const auto& [m, p] : s.p_star_curve) curve.push_back({report::jnum(m), report::jnum(p)});
        out << json{{"config", config_json(c)},
                    {"result",
                     {{"mu_dagger_a", report::jnum(s.mu_dagger_a)},
                      {"mu_dagger_b", report::jnum(s.mu_dagger_b)},
                      {"p_after_a", report::jnum(s.p_at_a)},
                      {"payoff_fully_public", report::jnum(s.lobbyist_payoff)},
                      {"payoff_private", report::jnum(priv.outcome.payoff_a)},
                      {"experiment_public_distance", report::jnum(eqv.distance)},
                      {"experiment_public_obedient", eqv.obedient_at_optimum},
                      {"replicating_posterior", report::jnum(mu_r)},
                      {"p_star_curve", curve}}}}
                   .dump(2)
            << '\n';
        return kOk;
    }
    out << "recommendation public: posterior at a~ " << report::num(s.mu_dagger_a) << ", at b~ "
        << report::num(s.mu_dagger_b) << '\n'
        << "  P(a | a~)                            " << report::num(s.p_at_a) << '\n'
        << "  lobbyist payoff                      " << report::num(s.lobbyist_payoff) << '\n'
        << "private persuasion payoff              " << report::num(priv.outcome.payoff_a) << '\n'
        << "experiment public: distance to private " << report::num(eqv.distance)
        << (eqv.obedient_at_optimum ? " (obeyed)" : " (not obeyed)") << '\n'
        << "replicating private posterior          " << report::num(mu_r) << '\n';
    return kOk;
}

} // namespace detail

/// Executes a validated configuration. Output goes to config.output_path
/// when set, otherwise to `out`; diagnostics go to `err`.
inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
    try {
        validate(c);
        const ReputationCurve f = make_curve(c.curve);
        std::ofstream file;
        std::ostream* sink = &out;
        if (!c.output_path.empty()) {
            file.open(c.output_path);
            if (!file) throw ConfigError("cannot write '" + c.output_path + "'");
            sink = &file;
        }
        const bool tabular = c.command == "solve" || c.command == "sweep";
        const std::string fmt_ = !c.format.empty() ? c.format : (tabular ? "csv" : (c.command == "verify" ? "json" : "text"));
        if (c.command == "solve") return detail::cmd_solve(c, f, *sink, fmt_);
        if (c.command == "sweep") return detail::cmd_sweep(c, f, *sink, fmt_);
        if (c.command == "verify") {
            const int rc = detail::cmd_verify(c, f, *sink, fmt_);
            if (rc != kOk) err << "verification failed\n";
            return rc;
        }
        if (c.command == "fig1") return detail::cmd_fig1(c, f, *sink, fmt_);
        if (c.command == "example1") return detail::cmd_example1(c, *sink, fmt_);
        if (c.command == "public") return detail::cmd_public(c, f, *sink, fmt_);
        throw ConfigError("unknown command '" + c.command + "'");
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidConfig;
    } catch (const ModelError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidConfig;
    } catch (const AssumptionViolated& e) {
        err << "refused: " << e.what() << '\n';
        return kAssumptionViolated;
    }
}

/// argv entry point shared by the executable and the tests.
inline int main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    RunConfig c;
    try {
        c = parse_args(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << "usage: lobbylab <solve|sweep|verify|fig1|example1|public> [--mu0 X] [--tau X] [--theta X|inf] "
               "[--gamma X] [--regime NAME] [--curve SPEC] [--axis NAME --from X --to X --steps N] "
               "[--format csv|json|text] [-o FILE] [--seed N] [--config FILE]\n";
        return kOk;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidConfig;
    }
    return run(c, out, err);
}

} // namespace lobby::cli
