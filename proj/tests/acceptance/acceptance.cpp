// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Every equilibrium produced along the way is handed to the
// deviation oracle at the end.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <boost/rational.hpp>
#include <fmt/format.h>

#include "lobby.hpp"
#include "support/generators.hpp"

using namespace lobby;

namespace {

struct Check {
    bool ok = true;
    std::string note;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) note = what;
        ok = ok && cond;
    }
};

struct Recorded {
    Params params;
    RegimeEquilibrium eq;
    ReputationCurve curve;
    std::string origin;
};

std::vector<Recorded> g_equilibria;

void record(const Params& p, const RegimeEquilibrium& eq, const std::string& origin,
            const ReputationCurve& f = ReputationCurve::linear()) {
    g_equilibria.push_back({p, eq, f, origin});
}

int g_failed = 0;

void criterion(int id, const std::string& title, const std::function<Check()>& body, double limit_s = 0.0) {
    const auto t0 = std::chrono::steady_clock::now();
    Check c;
    try {
        c = body();
    } catch (const std::exception& e) {
        c.ok = false;
        c.note = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_s > 0.0 && secs > limit_s) c.require(false, fmt::format("took {:.2f}s, limit {:.0f}s", secs, limit_s));
    if (!c.ok) ++g_failed;
    fmt::print("[{}] {:>2}. {} ({:.2f}s){}\n", c.ok ? "PASS" : "FAIL", id, title, secs,
               c.note.empty() ? "" : " -- " + c.note);
    std::fflush(stdout);
}

Params example_params() {
    Params p;
    p.mu0 = 1.0 / 3.0;
    p.tau = 0.5;
    p.gamma = 8.0 / 9.0;
    p.theta = Theta::infinity();
    return p;
}

Check example_reproduction() {
    Check c;
    using Q = boost::rational<long long>;
    const Q mu0(1, 3), x(1), y(3, 7);
    const Q exact = mu0 * x / (mu0 * x + (1 - mu0) * y);
    c.require(exact == Q(7, 13), "exact posterior is not 7/13");

    const Params p = example_params();
    const Experiment e{1.0, 3.0 / 7.0};
    const double mu = *posterior(p.mu0, e, Recommendation::a);
    c.require(std::abs(mu - 7.0 / 13.0) < 1e-12, fmt::format("posterior {}", mu));

    const BestResponse br = best_response(p, e);
    c.require(std::abs(br.strategy.after_a - 8.0 / 9.0) < 1e-9, fmt::format("p_after_a {}", br.strategy.after_a));

    const double residual = std::abs(detail::informer_net(p, Transparency::Revealed, p.gamma,
                                                          ReputationCurve::linear(), mu));
    c.require(residual < 1e-12, fmt::format("concealed-intent residual {}", residual));
    Profile hidden;
    hidden.lobbyist_a = {e, PoliticianStrategy::obedient()};
    hidden.weight_a = p.gamma;
    const BestResponse obey = best_response(p, Regime::concealed_intent(), e, ReputationCurve::linear(), hidden);
    c.require(obey.strategy.after_a == 1.0, fmt::format("concealed-intent p_after_a {}", obey.strategy.after_a));

    const RegimeEquilibrium eq = solve_concealed_intent(p);
    c.require(eq.case_label == CaseLabel::AInforms && std::abs(eq.outcome.posterior_info - 7.0 / 13.0) < 1e-12,
              "concealed-intent solver does not return 7/13");
    record(p, eq, "example");
    return c;
}

Check no_career_concerns() {
    Check c;
    fixtures::Draws d(1002);
    for (int i = 0; i < 50; ++i) {
        Params p = d.params();
        p.theta = Theta(0.0);
        const double a = solve_baseline(p).outcome.posterior_info;
        const double b = solve_consequence_concealed(p, Transparency::Revealed).outcome.posterior_info;
        c.require(std::abs(a - 0.5) < 1e-12 && std::abs(b - 0.5) < 1e-12,
                  fmt::format("draw {}: mu* = {}, hidden-consequence mu = {}", i, a, b));
    }
    return c;
}

Check baseline_above_half() {
    Check c;
    fixtures::Draws d(1003);
    for (int i = 0; i < 500; ++i) {
        const Params p = d.params();
        const RegimeEquilibrium eq = solve_baseline(p);
        c.require(eq.outcome.posterior_info > 0.5, fmt::format("draw {}: mu* = {}", i, eq.outcome.posterior_info));
        c.require(eq.defining_residual < 1e-10, fmt::format("draw {}: residual {}", i, eq.defining_residual));
        record(p, eq, "c3");
    }
    return c;
}

Check theta_monotonicity() {
    Check c;
    fixtures::Draws d(1004);
    const std::vector<double> grid = numeric::linspace(0.0, 8.0, 33);
    for (int i = 0; i < 20; ++i) {
        const Params base = d.params();
        const SweepResult s = sweep(base, Regime::baseline(), Axis::Theta, grid);
        c.require(s.mu_info_nondecreasing, fmt::format("draw {}: mu* not monotone", i));
        c.require(s.welfare_nondecreasing, fmt::format("draw {}: welfare not monotone", i));
        for (std::size_t k = 0; k + 1 < s.points.size(); ++k) {
            const Experiment lo = s.points[k].equilibrium->outcome.experiment_a;
            const Experiment hi = s.points[k + 1].equilibrium->outcome.experiment_a;
            const BlackwellRelation r = blackwell_compare(hi, lo, base.mu0).relation;
            c.require(r == BlackwellRelation::Dominates || r == BlackwellRelation::Equal,
                      fmt::format("draw {}: theta {} vs {}: {}", i, grid[k + 1], grid[k], to_string(r)));
        }
    }
    return c;
}

Check trichotomy() {
    Check c;
    fixtures::Draws d(1005);
    int a = 0, b = 0;
    for (int i = 0; i < 500; ++i) {
        const Params p = d.params();
        const double club = check_condition_club(p);
        const RegimeEquilibrium eq = solve_concealed_intent(p);
        c.require(eq.case_label == classify(club), fmt::format("draw {}: label vs club {}", i, club));
        if (eq.case_label == CaseLabel::AInforms) {
            ++a;
            const double star = solve_baseline(p).outcome.posterior_info;
            c.require(eq.outcome.posterior_info < star - 1e-9,
                      fmt::format("draw {}: mu_A** {} vs mu* {}", i, eq.outcome.posterior_info, star));
        } else if (eq.case_label == CaseLabel::BInforms) {
            ++b;
            const double star =
                solve_revealed_intent(p, Transparency::Revealed, LobbyistType::B, ReputationCurve::linear())
                    .outcome.posterior_info;
            c.require(eq.outcome.posterior_info < star - 1e-9,
                      fmt::format("draw {}: mu_B** {} vs mu_B* {}", i, eq.outcome.posterior_info, star));
        }
        record(p, eq, "c5");
    }
    c.note += c.ok ? fmt::format("{} A_informs, {} B_informs", a, b) : "";
    return c;
}

Check concealed_intent_window() {
    Check c;
    fixtures::Draws d(1006);
    const std::vector<double> thetas = numeric::linspace(0.5, 8.5, 9);
    int n = 0;
    while (n < 100) {
        Params p = d.params();
        const auto [lo, hi] = prop4_gamma_window(p.mu0, p.tau);
        const double from = std::max(lo, 0.0);
        if (!(hi - from > 1e-3)) continue;
        p.gamma = d.uniform(from, hi);
        ++n;
        double prev = INFINITY;
        for (double t : thetas) {
            p.theta = Theta(t);
            const RegimeEquilibrium eq = solve_concealed_intent(p);
            const double mu = eq.outcome.posterior_info;
            c.require(eq.case_label == CaseLabel::AInforms, fmt::format("draw {}: case {}", n, to_string(eq.case_label)));
            c.require(mu < 0.5, fmt::format("draw {} theta {}: mu_A** = {}", n, t, mu));
            c.require(mu < prev, fmt::format("draw {} theta {}: mu_A** not decreasing", n, t));
            c.require(eq.outcome.experiment_b == Experiment::always(Recommendation::b),
                      fmt::format("draw {}: B informs", n));
            const double revealed = revealed_intent_welfare(p, Transparency::Revealed);
            c.require(eq.outcome.welfare < revealed,
                      fmt::format("draw {}: welfare {} vs {}", n, eq.outcome.welfare, revealed));
            prev = mu;
            record(p, eq, "c6");
        }
    }
    return c;
}

Check hidden_consequence() {
    Check c;
    fixtures::Draws d(1007);
    for (int i = 0; i < 200; ++i) {
        const Params p = d.params();
        const RegimeEquilibrium shown = solve_baseline(p);
        const RegimeEquilibrium hidden = solve_consequence_concealed(p, Transparency::Revealed);
        c.require(hidden.outcome.posterior_info > shown.outcome.posterior_info + 1e-9,
                  fmt::format("draw {}: mu^ {} vs mu* {}", i, hidden.outcome.posterior_info,
                              shown.outcome.posterior_info));
        // Intent revealed: the ex-ante mixture over both lobbyist types.
        const double w_hidden = revealed_intent_welfare(p, Transparency::Concealed);
        const double w_shown = revealed_intent_welfare(p, Transparency::Revealed);
        c.require(w_hidden > w_shown + 1e-9, fmt::format("draw {}: welfare {} vs {}", i, w_hidden, w_shown));
        record(p, hidden, "c7");
        record(p, solve_revealed_intent(p, Transparency::Concealed, LobbyistType::B, ReputationCurve::linear()),
               "c7-B");
    }
    return c;
}

Check hidden_consequence_concealed_intent() {
    Check c;
    fixtures::Draws d(1008);
    int n = 0;
    while (n < 100) {
        Params p = d.params(0.05, 20.0);
        if (!spade_holds(p)) continue;
        const double bar = find_gamma_bar(p);
        p.gamma = d.uniform(0.0, 1.0) * std::min(0.5, bar);
        if (p.gamma <= 0.0) continue;
        ++n;
        const RegimeEquilibrium shown = solve_concealed_intent(p);
        const RegimeEquilibrium hidden = solve_consequence_concealed(p, Transparency::Concealed);
        c.require(hidden.outcome.posterior_info < shown.outcome.posterior_info,
                  fmt::format("draw {}: mu^** {} vs mu** {}", n, hidden.outcome.posterior_info,
                              shown.outcome.posterior_info));
        c.require(hidden.outcome.welfare < shown.outcome.welfare,
                  fmt::format("draw {}: welfare {} vs {}", n, hidden.outcome.welfare, shown.outcome.welfare));
        record(p, shown, "c8");
        record(p, hidden, "c8");
    }
    return c;
}

Check public_persuasion() {
    Check c;
    fixtures::Draws d(1009);
    const ReputationCurve lin = ReputationCurve::linear();
    const ReputationCurve root = ReputationCurve::power(0.5);
    for (int i = 0; i < 100; ++i) {
        const Params p = d.params();
        c.require(check_elasticity(lin, p.theta).holds && check_elasticity(root, p.theta).holds,
                  fmt::format("draw {}: elasticity condition fails", i));
        for (const ReputationCurve* f : {&lin, &root}) {
            double prev = -1.0;
            for (int k = 0; k <= 1000; ++k) {
                const double ps = solve_p_star_public(p, k / 1000.0, *f);
                c.require(ps >= prev, fmt::format("draw {}: p* not monotone at {}", i, k / 1000.0));
                prev = ps;
            }
            const double half = solve_p_star_public(p, 0.5, *f);
            c.require(std::abs(half - 0.5) < 1e-10, fmt::format("draw {}: p*(1/2) = {}", i, half));

            const EquivalenceReport eqv = verify_experiment_public_equivalence(p, *f);
            c.require(eqv.distance < 1e-6, fmt::format("draw {} {}: distance {}", i, f->name(), eqv.distance));
            c.require(eqv.obedient_at_optimum, fmt::format("draw {} {}: randomizes at optimum", i, f->name()));
            RegimeEquilibrium ep = solve_baseline(p, *f);
            ep.regime = Regime::experiment_public();
            record(p, ep, "c9-experiment", *f);
        }

        const PublicPersuasionSolution s = solve_fully_public(p, lin);
        c.require(s.mu_dagger_a >= 0.5 && s.mu_dagger_b == 0.0, fmt::format("draw {}: mu_dagger {}", i, s.mu_dagger_a));
        const RegimeEquilibrium pub = fully_public_equilibrium(p, lin);
        const RegimeEquilibrium priv = solve_baseline(p);
        const bool informative = priv.outcome.posterior_info > p.mu0;
        if (informative) {
            c.require(pub.outcome.payoff_a < priv.outcome.payoff_a - 1e-9,
                      fmt::format("draw {}: public {} vs private {}", i, pub.outcome.payoff_a, priv.outcome.payoff_a));
        }
        const double mu_r = replicating_private_posterior(p, s.p_at_a, lin);
        c.require(mu_r < s.mu_dagger_a, fmt::format("draw {}: replicating posterior {} vs {}", i, mu_r, s.mu_dagger_a));
        record(p, pub, "c9-fully");
    }
    return c;
}

// Monte Carlo against the analytic reputations of a recorded equilibrium.
McComparison mc_check(const Recorded& r, std::uint64_t seed) {
    const Profile profile = r.eq.outcome.profile();
    const MonteCarloReport mc = monte_carlo_reputation(r.params, r.eq.regime, profile, 1000000, seed);
    if (r.eq.regime.persuasion != Persuasion::FullyPublic) {
        return compare_reputations(mc, reputation(r.params, r.eq.regime, profile));
    }
    McComparison worst;
    for (Recommendation rec : {Recommendation::a, Recommendation::b}) {
        MonteCarloReport one = mc;
        one.cells = mc.by_rec[rec == Recommendation::a ? 0 : 1];
        const double p = profile.lobbyist_a.strategy.prob_a(rec);
        const McComparison m = compare_reputations(one, detail::recommendation_reputation(r.params.tau, p));
        worst.worst_z = std::max(worst.worst_z, m.worst_z);
        worst.within = worst.within && m.within;
    }
    return worst;
}

Check oracle_soundness() {
    Check c;
    double worst_pol = 0.0;
    double worst_lob = 0.0;
    for (const Recorded& r : g_equilibria) {
        const DeviationReport rep = verify_equilibrium(r.params, r.eq, r.curve);
        worst_pol = std::max(worst_pol, rep.max_politician_gain);
        worst_lob = std::max(worst_lob, rep.max_lobbyist_gain);
        c.require(rep.certified(), fmt::format("{} {} at mu0={} tau={} theta={} gamma={}: gains {} / {}", r.origin,
                                               to_string(r.eq.regime), r.params.mu0, r.params.tau,
                                               to_string(r.params.theta), r.params.gamma, rep.max_politician_gain,
                                               rep.max_lobbyist_gain));
    }

    // Example profile with the mixed response: 9/17 and 21/34.
    const Params ex = example_params();
    Profile mixed;
    mixed.lobbyist_a = {Experiment{1.0, 3.0 / 7.0}, PoliticianStrategy{8.0 / 9.0, 0.0}};
    const MonteCarloReport mc = monte_carlo_reputation(ex, Regime::baseline(), mixed, 1000000, 20240601);
    const auto within = [](const McCell& cell, double r) {
        return std::abs(*cell.frequency() - r) <= 3.0 * std::sqrt(r * (1 - r) / static_cast<double>(cell.count));
    };
    c.require(within(mc.cells[0][0], 9.0 / 17.0), "Monte Carlo (a,A) misses 9/17");
    c.require(within(mc.cells[1][1], 21.0 / 34.0), "Monte Carlo (b,B) misses 21/34");

    // One equilibrium per regime and curve; each run compares up to four
    // cells at 3 s.e., so the seeds are fixed up front.
    std::vector<std::string> seen;
    std::uint64_t seed = 1;
    double worst_z = 0.0;
    for (const Recorded& r : g_equilibria) {
        const std::string key = to_string(r.eq.regime) + r.curve.name();
        if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
        seen.push_back(key);
        const McComparison m = mc_check(r, seed++);
        worst_z = std::max(worst_z, m.worst_z);
        c.require(m.within, fmt::format("Monte Carlo {} {}: z = {}", r.origin, to_string(r.eq.regime), m.worst_z));
    }

    // Planted deviations of size 1e-3 on the first 100 baseline equilibria.
    int caught_lobbyist = 0;
    int caught_politician = 0;
    int trials = 0;
    for (const Recorded& r : g_equilibria) {
        if (r.origin != "c3") continue;
        if (++trials > 100) break;
        Profile lob = r.eq.outcome.profile();
        lob.lobbyist_a.experiment.a_given_B -= 1e-3;
        if (verify_lobbyist(r.params, r.eq.regime, lob, r.curve).max_lobbyist_gain > kDeviationTolerance) {
            ++caught_lobbyist;
        }
        Profile pol = r.eq.outcome.profile();
        pol.lobbyist_a.strategy.after_b = 1e-3;
        if (verify_politician(r.params, r.eq.regime, pol, r.curve).max_politician_gain > kDeviationTolerance) {
            ++caught_politician;
        }
    }
    c.require(caught_lobbyist == 100, fmt::format("planted lobbyist deviations caught {}/100", caught_lobbyist));
    c.require(caught_politician == 100, fmt::format("planted politician deviations caught {}/100", caught_politician));
    if (c.ok) {
        c.note = fmt::format("{} equilibria, max gains {:.2e} / {:.2e}, {} Monte Carlo runs, worst z {:.2f}",
                             g_equilibria.size(), worst_pol, worst_lob, seen.size() + 1, worst_z);
    }
    return c;
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    criterion(1, "example reproduction", example_reproduction, 1.0);
    criterion(2, "theta = 0 benchmark", no_career_concerns);
    criterion(3, "baseline posterior above 1/2", baseline_above_half, 10.0);
    criterion(4, "monotone in theta, Blackwell-ordered", theta_monotonicity);
    criterion(5, "concealed-intent trichotomy", trichotomy);
    criterion(6, "concealed intent inside the gamma window", concealed_intent_window);
    criterion(7, "hidden consequence, intent revealed", hidden_consequence);
    criterion(8, "hidden consequence, intent concealed", hidden_consequence_concealed_intent);
    criterion(9, "public persuasion", public_persuasion);
    criterion(10, "oracle soundness", oracle_soundness);
    const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    fmt::print("total {:.1f}s, {} of 10 criteria failed\n", total, g_failed);
    if (total > 300.0) {
        fmt::print("FAIL: total runtime above 5 minutes\n");
        return 1;
    }
    return g_failed == 0 ? 0 : 1;
}
