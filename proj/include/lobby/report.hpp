#pragma once

// CSV and JSON emission. Floating values are written with 12 significant
// digits so that emitted files are stable across platforms.

#include <cmath>
#include <ostream>
#include <string>

#include <fmt/format.h>
#include <json.hpp>

#include "lobby/analysis.hpp"
#include "lobby/oracle.hpp"

namespace lobby::report {

using nlohmann::json;

inline const char* const kCsvHeader = "mu0,tau,theta,gamma,regime,case,mu_info,welfare,payoff_A,payoff_B";

inline std::string num(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return fmt::format("{:.12g}", v);
}

// Value rounded to 12 significant digits, as a JSON number (inf as a string).
inline json jnum(double v) {
    if (!std::isfinite(v)) return num(v);
    return std::stod(num(v));
}

inline json theta_json(const Theta& t) { return t.is_infinite() ? json("inf") : json(t.value()); }

inline std::string csv_row(const Params& p, const RegimeEquilibrium& eq) {
    const EquilibriumOutcome& o = eq.outcome;
    return fmt::format("{},{},{},{},{},{},{},{},{},{}", num(p.mu0), num(p.tau), to_string(p.theta), num(p.gamma),
                       to_string(eq.regime), to_string(eq.case_label), num(o.posterior_info), num(o.welfare),
                       num(o.payoff_a), num(o.payoff_b));
}

inline std::string csv_error_row(const Params& p, const Regime& r) {
    return fmt::format("{},{},{},{},{},error,,,,", num(p.mu0), num(p.tau), to_string(p.theta), num(p.gamma),
                       to_string(r));
}

inline json to_json(const Experiment& e) {
    return {{"p_a_given_A", jnum(e.a_given_A)}, {"p_a_given_B", jnum(e.a_given_B)}};
}

inline json to_json(const PoliticianStrategy& s) {
    return {{"p_after_a", jnum(s.after_a)}, {"p_after_b", jnum(s.after_b)}};
}

inline json to_json(const ReputationProfile& r) {
    return {{"a_A", jnum(r.a_A)}, {"a_B", jnum(r.a_B)}, {"b_A", jnum(r.b_A)}, {"b_B", jnum(r.b_B)},
            {"rep_a", jnum(r.rep_a())}, {"rep_b", jnum(r.rep_b())}};
}

inline json to_json(const Params& p) {
    return {{"mu0", jnum(p.mu0)}, {"tau", jnum(p.tau)}, {"theta", theta_json(p.theta)}, {"gamma", jnum(p.gamma)}};
}

// Same fields as one CSV row plus the full outcome.
inline json to_json(const Params& p, const RegimeEquilibrium& eq) {
    const EquilibriumOutcome& o = eq.outcome;
    json j = to_json(p);
    j["regime"] = to_string(eq.regime);
    j["case"] = to_string(eq.case_label);
    j["mu_info"] = jnum(o.posterior_info);
    j["welfare"] = jnum(o.welfare);
    j["payoff_A"] = jnum(o.payoff_a);
    j["payoff_B"] = jnum(o.payoff_b);
    j["experiment_A"] = to_json(o.experiment_a);
    j["experiment_B"] = to_json(o.experiment_b);
    j["strategy_A"] = to_json(o.strategy_a);
    j["strategy_B"] = to_json(o.strategy_b);
    j["weight_A"] = jnum(o.weight_a);
    j["reputations"] = to_json(o.reputations);
    j["defining_residual"] = jnum(eq.defining_residual);
    return j;
}

inline void write_sweep_csv(std::ostream& out, const SweepResult& s) {
    out << kCsvHeader << '\n';
    for (const SweepPoint& pt : s.points) {
        if (pt.equilibrium) {
            out << csv_row(pt.params, *pt.equilibrium) << '\n';
        } else {
            out << csv_error_row(with_axis(pt.params, s.axis, pt.value), s.regime) << '\n';
        }
    }
}

inline json to_json(const SweepResult& s) {
    json rows = json::array();
    for (const SweepPoint& pt : s.points) {
        if (pt.equilibrium) {
            rows.push_back(to_json(pt.params, *pt.equilibrium));
        } else {
            json row = to_json(with_axis(pt.params, s.axis, pt.value));
            row["regime"] = to_string(s.regime);
            row["case"] = "error";
            row["error"] = pt.error;
            rows.push_back(row);
        }
    }
    return {{"axis", to_string(s.axis)},
            {"rows", rows},
            {"mu_info_nondecreasing", s.mu_info_nondecreasing},
            {"welfare_nondecreasing", s.welfare_nondecreasing},
            {"mu_info_nonincreasing", s.mu_info_nonincreasing},
            {"welfare_nonincreasing", s.welfare_nonincreasing}};
}

inline json to_json(const DeviationReport& d) {
    json j{{"max_politician_gain", jnum(d.max_politician_gain)},
           {"max_lobbyist_gain", jnum(d.max_lobbyist_gain)},
           {"grid_resolution", d.grid_resolution},
           {"mc_samples", d.mc_samples},
           {"seed", d.seed},
           {"certified", d.certified()}};
    if (d.politician_witness) {
        const PoliticianWitness& w = *d.politician_witness;
        j["politician_witness"] = {{"type", w.type == LobbyistType::A ? "A" : "B"},
                                   {"recommendation", w.rec == Recommendation::a ? "a" : "b"},
                                   {"candidate_q", jnum(w.candidate_q)},
                                   {"best_q", jnum(w.best_q)}};
    }
    if (d.lobbyist_witness) {
        const LobbyistWitness& w = *d.lobbyist_witness;
        j["lobbyist_witness"] = {{"type", w.type == LobbyistType::A ? "A" : "B"},
                                 {"candidate", to_json(w.candidate)},
                                 {"best", to_json(w.best)},
                                 {"candidate_payoff", jnum(w.candidate_payoff)},
                                 {"best_payoff", jnum(w.best_payoff)}};
    }
    return j;
}

inline json to_json(const Figure1Table& t) {
    const char* names[2] = {"revealed", "concealed"};
    json cells = json::array();
    for (int i = 0; i < 2; ++i) {
        for (int c = 0; c < 2; ++c) {
            cells.push_back({{"intent", names[i]},
                             {"consequence", names[c]},
                             {"regime", to_string(t.equilibria[i][c].regime)},
                             {"case", to_string(t.equilibria[i][c].case_label)},
                             {"welfare", jnum(t.welfare[i][c])}});
        }
    }
    json effects = json::object();
    for (int c = 0; c < 2; ++c) {
        effects[std::string("intent|consequence_") + names[c]] = {{"delta", jnum(t.intent_effect[c])},
                                                                 {"sign", sign_label(t.intent_sign[c])}};
        effects[std::string("consequence|intent_") + names[c]] = {{"delta", jnum(t.consequence_effect[c])},
                                                                 {"sign", sign_label(t.consequence_sign[c])}};
    }
    return {{"cells", cells}, {"effects", effects}};
}

} // namespace lobby::report
