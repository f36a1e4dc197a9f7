#pragma once

// Lobbyist-optimal experiments and equilibria under private persuasion.
//
// Every defining equation is solved in the posterior mu at the informative
// recommendation. The informer sends a~ for sure in its favoured state, so
// mu pins down the whole experiment. The other lobbyist type is
// uninformative and the politician obeys both.

#include <algorithm>
#include <cmath>
#include <string>

#include "lobby/best_response.hpp"
#include "lobby/errors.hpp"
#include "lobby/model.hpp"
#include "lobby/numeric.hpp"

namespace lobby {

enum class CaseLabel { AInforms, BInforms, NeitherInforms, Baseline };

inline std::string to_string(CaseLabel c) {
    switch (c) {
        case CaseLabel::AInforms: return "A_informs";
        case CaseLabel::BInforms: return "B_informs";
        case CaseLabel::NeitherInforms: return "Neither_informs";
        case CaseLabel::Baseline: return "Baseline";
    }
    return "?";
}

struct EquilibriumOutcome {
    Experiment experiment_a = Experiment::always(Recommendation::a);
    Experiment experiment_b = Experiment::always(Recommendation::b);
    PoliticianStrategy strategy_a;
    PoliticianStrategy strategy_b;
    double weight_a = 1.0;
    // Posterior of the informer's favoured state at its informative
    // recommendation: P(A|a~) when lobbyist-A informs, P(B|b~) when B does.
    // The prior of that state when nobody informs.
    double posterior_info = 0.0;
    ReputationProfile reputations;
    double welfare = 0.0;
    double payoff_a = 0.0;  // low type's probability of a under lobbyist-A
    double payoff_b = 0.0;  // low type's probability of b under lobbyist-B

    Profile profile() const { return {{experiment_a, strategy_a}, {experiment_b, strategy_b}, weight_a}; }
};

struct RegimeEquilibrium {
    Regime regime;
    CaseLabel case_label = CaseLabel::Baseline;
    EquilibriumOutcome outcome;
    double defining_residual = 0.0;
};

namespace detail {

struct InformerSolution {
    double mu = 0.0;
    bool corner = false;  // the informer prefers to stay uninformative
    double residual = 0.0;
};

// Profile when lobbyist-A informs with posterior mu at a~ and lobbyist-B is
// uninformative; both are obeyed.
inline Profile informer_profile(double prior, double mu, double weight_a) {
    Profile p;
    p.lobbyist_a = {Experiment::from_posterior(prior, mu), PoliticianStrategy::obedient()};
    p.lobbyist_b = {Experiment::always(Recommendation::b), PoliticianStrategy::obedient()};
    p.weight_a = weight_a;
    return p;
}

inline double informer_net(const Params& frame, Transparency consequence, double weight_a,
                           const ReputationCurve& curve, double mu) {
    const Profile beliefs = informer_profile(frame.mu0, mu, weight_a);
    const ReputationProfile reps = to_profile(reputation_masses(frame.mu0, frame.tau, consequence, beliefs));
    return net_gain(mu, reputation_loss(frame, mu, reps, curve));
}

// Lobbyist-A's problem in `frame` (which may be the relabeled problem with a
// prior above 1/2): the smallest posterior at a~ that keeps the politician
// obedient. The net gain is increasing in mu and positive at mu = 1.
inline InformerSolution solve_informer(const Params& frame, Transparency consequence, double weight_a,
                                       const ReputationCurve& curve) {
    const auto net = [&](double mu) { return informer_net(frame, consequence, weight_a, curve, mu); };
    InformerSolution out;
    const double at_prior = net(frame.mu0);
    if (at_prior >= 0.0) {
        out.mu = frame.mu0;
        out.corner = true;
        return out;
    }
    const double at_one = net(1.0);
    if (at_one == 0.0) {
        // Infinite theta with a hidden consequence: only full revelation works.
        out.mu = 1.0;
        return out;
    }
    if (!(at_one > 0.0)) throw ModelError("defining equation has no root on (prior, 1]");
    out.mu = numeric::bisect(net, frame.mu0, 1.0);
    out.residual = std::abs(net(out.mu));
    return out;
}

inline void fill_outcome(const Params& params, Transparency consequence, EquilibriumOutcome& o) {
    const Profile p = o.profile();
    o.reputations = to_profile(reputation_masses(params.mu0, params.tau, consequence, p));
    o.welfare = welfare(params, p);
    o.payoff_a = lobbyist_payoff(params.mu0, o.experiment_a, o.strategy_a, Action::a);
    o.payoff_b = lobbyist_payoff(params.mu0, o.experiment_b, o.strategy_b, Action::b);
}

// Equilibrium experiment of a single lobbyist type whose preference is known.
inline std::pair<Experiment, InformerSolution> revealed_experiment(const Params& params, Transparency consequence,
                                                                   LobbyistType type, const ReputationCurve& curve) {
    if (type == LobbyistType::A) {
        const InformerSolution s = solve_informer(params, consequence, 1.0, curve);
        return {Experiment::from_posterior(params.mu0, s.mu), s};
    }
    const Params frame = mirrored(params);
    const InformerSolution s = solve_informer(frame, consequence, 1.0, curve);
    return {mirror(Experiment::from_posterior(frame.mu0, s.mu)), s};
}

} // namespace detail

/// Equilibrium when the lobbyist's preference is public. Lobbyist-B's
/// experiment is the relabeled version of lobbyist-A's problem. The outcome
/// carries both types' equilibrium experiments; weight_a selects which one
/// the welfare and reputations describe.
inline RegimeEquilibrium solve_revealed_intent(const Params& params, Transparency consequence,
                                               LobbyistType type, const ReputationCurve& curve) {
    validate(params);
    const auto [exp_a, sol_a] = detail::revealed_experiment(params, consequence, LobbyistType::A, curve);
    const auto [exp_b, sol_b] = detail::revealed_experiment(params, consequence, LobbyistType::B, curve);
    RegimeEquilibrium eq;
    eq.regime = {Transparency::Revealed, consequence, Persuasion::Private};
    eq.case_label = CaseLabel::Baseline;
    EquilibriumOutcome& o = eq.outcome;
    o.experiment_a = exp_a;
    o.experiment_b = exp_b;
    o.weight_a = type == LobbyistType::A ? 1.0 : 0.0;
    o.posterior_info = type == LobbyistType::A ? sol_a.mu : sol_b.mu;
    detail::fill_outcome(params, consequence, o);
    eq.defining_residual = type == LobbyistType::A ? sol_a.residual : sol_b.residual;
    return eq;
}

/// Preference and consequence both revealed, lobbyist-A.
inline RegimeEquilibrium solve_baseline(const Params& params,
                                        const ReputationCurve& curve = ReputationCurve::linear()) {
    return solve_revealed_intent(params, Transparency::Revealed, LobbyistType::A, curve);
}

/// Quality gain minus reputation loss at the prior when neither lobbyist type
/// informs, preference concealed and consequence revealed. Negative: A
/// informs. Positive: B informs. Infinite theta returns the negated bracket.
inline double check_condition_club(const Params& params, const ReputationCurve& curve = ReputationCurve::linear()) {
    validate(params);
    const double t = params.tau;
    const double rep_b = t / (t + (1.0 - t) * (1.0 - params.gamma));
    const double rep_a = t / (t + (1.0 - t) * params.gamma);
    const double bracket = (1.0 - params.mu0) * curve(rep_b) - params.mu0 * curve(rep_a);
    return params.theta.balance(quality_gain(params.mu0), bracket);
}

inline constexpr double kClubTolerance = 1e-12;

inline CaseLabel classify(double club) {
    if (std::abs(club) <= kClubTolerance) return CaseLabel::NeitherInforms;
    return club < 0.0 ? CaseLabel::AInforms : CaseLabel::BInforms;
}

namespace detail {

inline RegimeEquilibrium solve_concealed(const Params& params, Transparency consequence, CaseLabel label,
                                         const ReputationCurve& curve) {
    RegimeEquilibrium eq;
    eq.regime = {Transparency::Concealed, consequence, Persuasion::Private};
    eq.case_label = label;
    EquilibriumOutcome& o = eq.outcome;
    o.weight_a = params.gamma;
    if (label == CaseLabel::AInforms) {
        const InformerSolution s = solve_informer(params, consequence, params.gamma, curve);
        o.experiment_a = Experiment::from_posterior(params.mu0, s.mu);
        o.posterior_info = s.mu;
        eq.defining_residual = s.residual;
    } else if (label == CaseLabel::BInforms) {
        const Params frame = mirrored(params);
        const InformerSolution s = solve_informer(frame, consequence, frame.gamma, curve);
        o.experiment_b = mirror(Experiment::from_posterior(frame.mu0, s.mu));
        o.posterior_info = s.mu;
        eq.defining_residual = s.residual;
    } else {
        o.posterior_info = params.mu0;
    }
    fill_outcome(params, consequence, o);
    return eq;
}

} // namespace detail

/// Preference concealed, consequence revealed. The sign of the club
/// condition decides which type informs; B's problem is solved in the
/// relabeled frame (prior 1-mu0, share 1-gamma) and mapped back.
inline RegimeEquilibrium solve_concealed_intent(const Params& params,
                                                const ReputationCurve& curve = ReputationCurve::linear()) {
    const CaseLabel label = classify(check_condition_club(params, curve));
    return detail::solve_concealed(params, Transparency::Revealed, label, curve);
}

/// Left minus right side of the spade assumption; it holds when negative.
/// Never holds for infinite theta.
inline double check_assumption_spade(const Params& params) {
    validate(params);
    if (params.theta.is_infinite()) return std::numeric_limits<double>::infinity();
    const double t = params.tau;
    const double rhs = params.theta.times(t * (1.0 - params.mu0) / (t * (1.0 - params.mu0) + 1.0 - t) - 1.0);
    return quality_gain(params.mu0) - rhs;
}

inline bool spade_holds(const Params& params) { return check_assumption_spade(params) < 0.0; }

/// Consequence concealed. With the preference also concealed the solver is
/// only defined under the spade assumption, where lobbyist-A informs.
inline RegimeEquilibrium solve_consequence_concealed(const Params& params, Transparency intent,
                                                     const ReputationCurve& curve = ReputationCurve::linear()) {
    if (intent == Transparency::Revealed) {
        return solve_revealed_intent(params, Transparency::Concealed, LobbyistType::A, curve);
    }
    if (!spade_holds(params)) {
        throw AssumptionViolated("spade assumption fails: concealed preference and consequence are not characterized");
    }
    return detail::solve_concealed(params, Transparency::Concealed, CaseLabel::AInforms, curve);
}

/// Ex-ante welfare when the preference is public: the gamma-mixture of the
/// two types' equilibria.
inline double revealed_intent_welfare(const Params& params, Transparency consequence,
                                      const ReputationCurve& curve = ReputationCurve::linear()) {
    RegimeEquilibrium eq = solve_revealed_intent(params, consequence, LobbyistType::A, curve);
    const double w_a = eq.outcome.welfare;
    eq.outcome.weight_a = 0.0;
    const double w_b = welfare(params, eq.outcome.profile());
    return params.gamma * w_a + (1.0 - params.gamma) * w_b;
}

/// Interval of gamma on which a concealed preference leaves the A-informer's
/// posterior below 1/2: ((mu0 - tau + tau mu0)/(1 - tau), 1 - mu0).
inline std::pair<double, double> prop4_gamma_window(double mu0, double tau) {
    return {(mu0 - tau + tau * mu0) / (1.0 - tau), 1.0 - mu0};
}

/// Analytic upper bound (valid for posteriors in (mu0, 1/2)) on the gap between
/// the reputation losses without and with revealed consequences, and its
/// limit as gamma -> 0.
inline double consequence_gap_bound(const Params& params) {
    const double t = params.tau;
    const double m = params.mu0;
    const double g = params.gamma;
    const double s = 1.0 - t;
    const double bracket = t / (t + s * (1.0 - g) / (1.0 - m)) - (t / 2.0) / (t + s * (1.0 - m / (1.0 - m) * g)) -
                           t / (t + s * g / m) + (t / 2.0) / (t + s * g);
    return params.theta.times(bracket);
}

inline double consequence_gap_limit(const Params& params) {
    const double t = params.tau;
    const double m = params.mu0;
    return -params.theta.times((1.0 - t) * (1.0 + t * m) / (2.0 * (1.0 - t * m)));
}

/// Numerical threshold below which concealing consequences lowers the
/// A-informer's posterior when the preference is concealed. Scans gamma on
/// (0, 1/2) and bisects the first crossing; 1/2 when there is none.
inline double find_gamma_bar(Params params, const ReputationCurve& curve = ReputationCurve::linear(),
                             int scan = 200) {
    params.gamma = 0.25;
    validate(params);
    if (!spade_holds(params)) throw AssumptionViolated("spade assumption fails: gamma threshold undefined");
    const auto holds = [&](double g) {
        Params p = params;
        p.gamma = g;
        const RegimeEquilibrium revealed = solve_concealed_intent(p, curve);
        if (revealed.case_label != CaseLabel::AInforms) return false;
        const RegimeEquilibrium hidden = solve_consequence_concealed(p, Transparency::Concealed, curve);
        return hidden.outcome.posterior_info < revealed.outcome.posterior_info;
    };
    double last_ok = 0.0;
    for (int i = 1; i < scan; ++i) {
        const double g = 0.5 * static_cast<double>(i) / scan;
        if (holds(g)) {
            last_ok = g;
            continue;
        }
        double lo = last_ok;
        double hi = g;
        while (hi - lo > 1e-12) {
            const double mid = 0.5 * (lo + hi);
            (holds(mid) ? lo : hi) = mid;
        }
        return lo;
    }
    return 0.5;
}

} // namespace lobby
