#pragma once

// Primitives of the lobbyist-politician persuasion game: parameters, regimes,
// experiments, strategies, and the Bayes/payoff/reputation formulas every
// solver is built from.
//
// Conventions used throughout:
//   * State A makes action a correct, state B makes b correct; P(A) = mu0.
//   * Lobbyist-A prefers action a, lobbyist-B prefers b.
//   * A strategy gives the low-ability politician's probability of choosing a
//     after each recommendation. The high-ability politician knows the state
//     and is always correct.
//   * Payoffs and welfare are probabilities. Lobbyist payoffs are conditional
//     on a low-ability politician, since the high type ignores the lobbyist.

#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "lobby/curve.hpp"
#include "lobby/errors.hpp"

namespace lobby {

enum class State { A, B };
enum class Action { a, b };
enum class Recommendation { a, b };
enum class LobbyistType { A, B };
enum class Transparency { Revealed, Concealed };
enum class Persuasion { Private, ExperimentPublic, FullyPublic };

inline constexpr double kProbabilitySlack = 1e-12;

inline constexpr std::size_t index(State s) { return s == State::A ? 0 : 1; }
inline constexpr std::size_t index(Action x) { return x == Action::a ? 0 : 1; }
inline constexpr Action matching_action(State s) { return s == State::A ? Action::a : Action::b; }
inline constexpr Action preferred_action(LobbyistType t) { return t == LobbyistType::A ? Action::a : Action::b; }
inline constexpr Action recommended_action(Recommendation r) { return r == Recommendation::a ? Action::a : Action::b; }
inline constexpr Recommendation other(Recommendation r) {
    return r == Recommendation::a ? Recommendation::b : Recommendation::a;
}
inline constexpr LobbyistType other(LobbyistType t) { return t == LobbyistType::A ? LobbyistType::B : LobbyistType::A; }

// Accepts values within kProbabilitySlack of [0,1] and snaps them inside.
inline double checked_probability(double v, std::string_view what) {
    if (!(v >= -kProbabilitySlack && v <= 1.0 + kProbabilitySlack)) {
        throw ModelError(std::string(what) + " must be a probability, got " + std::to_string(v));
    }
    return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
}

/// Career-concern intensity theta >= 0; +infinity is allowed.
///
/// Indifference conditions have the form gain = theta * bracket. They are
/// evaluated through balance(), which returns gain - theta*bracket for finite
/// theta and -bracket for infinite theta. Both have the same sign and roots,
/// so no infinite arithmetic is needed.
class Theta {
public:
    constexpr Theta() = default;
    explicit Theta(double v) : v_(v) {
        if (std::isnan(v) || v < 0.0) throw ModelError("theta must be >= 0 or +inf");
    }
    static Theta infinity() { return Theta(std::numeric_limits<double>::infinity()); }

    bool is_infinite() const { return std::isinf(v_); }
    double value() const { return v_; }

    // theta * bracket with 0 * inf read as 0.
    double times(double bracket) const { return bracket == 0.0 ? 0.0 : v_ * bracket; }

    double balance(double gain, double bracket) const {
        return is_infinite() ? -bracket : gain - v_ * bracket;
    }

    // Weights on (decision quality, reputational payoff) in the politician's
    // utility; (0, 1) when theta is infinite.
    double quality_weight() const { return is_infinite() ? 0.0 : 1.0; }
    double reputation_weight() const { return is_infinite() ? 1.0 : v_; }

    friend bool operator==(const Theta&, const Theta&) = default;

private:
    double v_ = 0.0;
};

inline std::string to_string(const Theta& t) {
    if (t.is_infinite()) return "inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", t.value());
    return buf;
}

/// Primitive environment.
struct Params {
    double mu0 = 1.0 / 3.0;   // P(state A)
    double tau = 0.5;         // P(politician is high-ability)
    Theta theta{1.0};
    double gamma = 0.5;       // P(lobbyist prefers a), used when intent is concealed
};

// Checks 0 < mu0 < 1/2, 0 < tau < 1, 0 < gamma < 1.
inline void validate(const Params& p) {
    if (!(p.mu0 > 0.0 && p.mu0 < 0.5)) throw ModelError("mu0 must lie in (0, 1/2)");
    if (!(p.tau > 0.0 && p.tau < 1.0)) throw ModelError("tau must lie in (0, 1)");
    if (!(p.gamma > 0.0 && p.gamma < 1.0)) throw ModelError("gamma must lie in (0, 1)");
}

// Looser check used inside the relabeled (mirrored) problem, where the prior
// of the favoured state may exceed 1/2.
inline void validate_environment(const Params& p) {
    if (!(p.mu0 > 0.0 && p.mu0 < 1.0)) throw ModelError("prior must lie in (0, 1)");
    if (!(p.tau > 0.0 && p.tau < 1.0)) throw ModelError("tau must lie in (0, 1)");
    if (!(p.gamma >= 0.0 && p.gamma <= 1.0)) throw ModelError("gamma must lie in [0, 1]");
}

// Relabeling A<->B, a<->b: the prior of A becomes 1-mu0 and the share of
// lobbyists preferring a becomes 1-gamma.
inline Params mirrored(Params p) {
    p.mu0 = 1.0 - p.mu0;
    p.gamma = 1.0 - p.gamma;
    return p;
}

/// Which information the public sees.
struct Regime {
    Transparency intent = Transparency::Revealed;
    Transparency consequence = Transparency::Revealed;
    Persuasion persuasion = Persuasion::Private;

    static constexpr Regime baseline() { return {}; }
    static constexpr Regime concealed_intent() { return {Transparency::Concealed, Transparency::Revealed, Persuasion::Private}; }
    static constexpr Regime concealed_consequence() { return {Transparency::Revealed, Transparency::Concealed, Persuasion::Private}; }
    static constexpr Regime concealed_both() { return {Transparency::Concealed, Transparency::Concealed, Persuasion::Private}; }
    static constexpr Regime experiment_public() { return {Transparency::Revealed, Transparency::Revealed, Persuasion::ExperimentPublic}; }
    static constexpr Regime fully_public() { return {Transparency::Revealed, Transparency::Revealed, Persuasion::FullyPublic}; }

    friend bool operator==(const Regime&, const Regime&) = default;
};

// Public persuasion is only modelled with intent and consequence revealed.
inline void validate(const Regime& r) {
    if (r.persuasion != Persuasion::Private &&
        (r.intent != Transparency::Revealed || r.consequence != Transparency::Revealed)) {
        throw ModelError("public persuasion is only defined with intent and consequence revealed");
    }
}

inline std::string to_string(const Regime& r) {
    if (r == Regime::baseline()) return "baseline";
    if (r == Regime::concealed_intent()) return "concealed-intent";
    if (r == Regime::concealed_consequence()) return "concealed-consequence";
    if (r == Regime::concealed_both()) return "concealed-both";
    if (r == Regime::experiment_public()) return "experiment-public";
    if (r == Regime::fully_public()) return "fully-public";
    return "unsupported";
}

inline std::optional<Regime> regime_from_string(std::string_view s) {
    for (Regime r : {Regime::baseline(), Regime::concealed_intent(), Regime::concealed_consequence(),
                     Regime::concealed_both(), Regime::experiment_public(), Regime::fully_public()}) {
        if (to_string(r) == s) return r;
    }
    return std::nullopt;
}

/// Binary experiment: P(recommend a | state).
struct Experiment {
    double a_given_A = 1.0;
    double a_given_B = 1.0;

    static Experiment make(double a_given_A, double a_given_B) {
        return {checked_probability(a_given_A, "pi(a~|A)"), checked_probability(a_given_B, "pi(a~|B)")};
    }
    static Experiment always(Recommendation r) {
        return r == Recommendation::a ? Experiment{1.0, 1.0} : Experiment{0.0, 0.0};
    }
    static Experiment fully_revealing() { return {1.0, 0.0}; }

    // pi(a~|A) = 1 and P(A | a~) = mu, for mu in [prior, 1].
    static Experiment from_posterior(double prior, double mu) {
        if (!(mu >= prior - kProbabilitySlack && mu <= 1.0 + kProbabilitySlack)) {
            throw ModelError("posterior at a~ must lie in [prior, 1]");
        }
        const double y = prior * (1.0 - mu) / ((1.0 - prior) * mu);
        return {1.0, checked_probability(y, "pi(a~|B)")};
    }

    double b_given_A() const { return 1.0 - a_given_A; }
    double b_given_B() const { return 1.0 - a_given_B; }

    double prob(Recommendation r, State s) const {
        const double pa = s == State::A ? a_given_A : a_given_B;
        return r == Recommendation::a ? pa : 1.0 - pa;
    }

    double marginal(double prior, Recommendation r) const {
        return prior * prob(r, State::A) + (1.0 - prior) * prob(r, State::B);
    }

    friend bool operator==(const Experiment&, const Experiment&) = default;
};

/// Low-ability politician's probability of choosing a after each recommendation.
struct PoliticianStrategy {
    double after_a = 1.0;
    double after_b = 0.0;

    static PoliticianStrategy obedient() { return {1.0, 0.0}; }
    static PoliticianStrategy make(double after_a, double after_b) {
        return {checked_probability(after_a, "P(a|a~)"), checked_probability(after_b, "P(a|b~)")};
    }

    double prob_a(Recommendation r) const { return r == Recommendation::a ? after_a : after_b; }
    double& prob_a(Recommendation r) { return r == Recommendation::a ? after_a : after_b; }

    friend bool operator==(const PoliticianStrategy&, const PoliticianStrategy&) = default;
};

/// Experiment of one lobbyist type and the politician's response to it.
struct TypeProfile {
    Experiment experiment;
    PoliticianStrategy strategy;
};

/// Strategy profile (or the public's beliefs about it) for both lobbyist
/// types. weight_a is the public's probability that the lobbyist is type A:
/// gamma when intent is concealed, 1 or 0 when the type is revealed.
struct Profile {
    TypeProfile lobbyist_a{Experiment::always(Recommendation::a), PoliticianStrategy::obedient()};
    TypeProfile lobbyist_b{Experiment::always(Recommendation::b), PoliticianStrategy::obedient()};
    double weight_a = 1.0;

    const TypeProfile& of(LobbyistType t) const { return t == LobbyistType::A ? lobbyist_a : lobbyist_b; }
    TypeProfile& of(LobbyistType t) { return t == LobbyistType::A ? lobbyist_a : lobbyist_b; }
    double weight(LobbyistType t) const { return t == LobbyistType::A ? weight_a : 1.0 - weight_a; }
};

/// Public posterior on high ability after each (action, state) cell. When the
/// consequence is concealed the two states of an action share one value.
struct ReputationProfile {
    double a_A = 0.0;
    double a_B = 0.0;
    double b_A = 0.0;
    double b_B = 0.0;

    double rep_a() const { return a_A; }
    double rep_b() const { return b_B; }
    double at(Action x, State s) const {
        if (x == Action::a) return s == State::A ? a_A : a_B;
        return s == State::A ? b_A : b_B;
    }
};

// Bayes' rule for a binary state; usable with exact rational types.
template <class T>
T bayes_posterior(const T& prior, const T& likelihood_A, const T& likelihood_B) {
    return prior * likelihood_A / (prior * likelihood_A + (T(1) - prior) * likelihood_B);
}

/// P(A | rec). Empty when the recommendation has zero probability.
inline std::optional<double> posterior(double prior, const Experiment& e, Recommendation rec) {
    if (!(prior > 0.0 && prior < 1.0)) throw ModelError("prior must lie in (0, 1)");
    const double la = e.prob(rec, State::A);
    const double lb = e.prob(rec, State::B);
    if (prior * la + (1.0 - prior) * lb <= 0.0) return std::nullopt;
    return bayes_posterior(prior, la, lb);
}

/// Net decision quality of choosing a over b at posterior mu.
inline double quality_gain(double mu) { return 2.0 * mu - 1.0; }

namespace detail {

// A reputation is high / (high + low), where high and low are the
// prior-weighted masses of each ability type reaching an observable cell.
// Cells the high type never reaches carry reputation 0; cells only the high
// type reaches carry 1.
struct CellMass {
    double high = 0.0;
    double low = 0.0;

    double value() const {
        if (high <= 0.0) return 0.0;
        const double d = high + low;
        return d > 0.0 ? high / d : std::numeric_limits<double>::quiet_NaN();
    }
};

using MassTable = std::array<std::array<CellMass, 2>, 2>;  // [action][state]

inline double low_prob_a(const TypeProfile& tp, State s) {
    return tp.experiment.prob(Recommendation::a, s) * tp.strategy.after_a +
           tp.experiment.prob(Recommendation::b, s) * tp.strategy.after_b;
}

// Low type's probability of `x` in state `s`, averaged over lobbyist types
// with the public's weights.
inline double low_prob(const Profile& beliefs, Action x, State s) {
    double pa = 0.0;
    if (beliefs.weight_a > 0.0) pa += beliefs.weight_a * low_prob_a(beliefs.lobbyist_a, s);
    if (beliefs.weight_a < 1.0) pa += (1.0 - beliefs.weight_a) * low_prob_a(beliefs.lobbyist_b, s);
    return x == Action::a ? pa : 1.0 - pa;
}

// No range checks: strategies outside [0,1] are used when probing the
// analytic continuation of an indifference equation.
inline MassTable reputation_masses(double prior, double tau, Transparency consequence, const Profile& beliefs) {
    MassTable m{};
    for (Action x : {Action::a, Action::b}) {
        if (consequence == Transparency::Revealed) {
            for (State s : {State::A, State::B}) {
                CellMass& c = m[index(x)][index(s)];
                c.high = matching_action(s) == x ? tau : 0.0;
                c.low = (1.0 - tau) * low_prob(beliefs, x, s);
            }
        } else {
            const double p_state = x == Action::a ? prior : 1.0 - prior;
            CellMass c;
            c.high = tau * p_state;
            c.low = (1.0 - tau) * (prior * low_prob(beliefs, x, State::A) + (1.0 - prior) * low_prob(beliefs, x, State::B));
            m[index(x)][0] = c;
            m[index(x)][1] = c;
        }
    }
    return m;
}

inline ReputationProfile to_profile(const MassTable& m) {
    return {m[0][0].value(), m[0][1].value(), m[1][0].value(), m[1][1].value()};
}

// Reputations when the public also sees the recommendation, given the
// politician's probability p of choosing a after it.
inline ReputationProfile recommendation_reputation(double tau, double p) {
    return {tau / (tau + (1.0 - tau) * p), 0.0, 0.0, tau / (tau + (1.0 - tau) * (1.0 - p))};
}

} // namespace detail

inline void validate(const Profile& beliefs) {
    checked_probability(beliefs.weight_a, "weight of lobbyist-A");
    for (LobbyistType t : {LobbyistType::A, LobbyistType::B}) {
        const TypeProfile& tp = beliefs.of(t);
        checked_probability(tp.experiment.a_given_A, "pi(a~|A)");
        checked_probability(tp.experiment.a_given_B, "pi(a~|B)");
        checked_probability(tp.strategy.after_a, "P(a|a~)");
        checked_probability(tp.strategy.after_b, "P(a|b~)");
    }
}

/// Public reputations under private or experiment-public persuasion, computed
/// by Bayes' rule over the regime's observables: (action, state) when the
/// consequence is revealed, the action alone when it is concealed. The
/// lobbyist-type mixture comes from beliefs.weight_a.
inline ReputationProfile reputation(const Params& params, const Regime& regime, const Profile& beliefs) {
    validate_environment(params);
    validate(regime);
    validate(beliefs);
    if (regime.persuasion == Persuasion::FullyPublic) {
        throw ModelError("fully public persuasion conditions reputations on the recommendation");
    }
    return detail::to_profile(detail::reputation_masses(params.mu0, params.tau, regime.consequence, beliefs));
}

/// Reputations under fully public persuasion after recommendation `rec`, using
/// the strategy of the lobbyist type in beliefs with positive weight.
inline ReputationProfile reputation(const Params& params, const Regime& regime, const Profile& beliefs,
                                    Recommendation rec) {
    validate_environment(params);
    validate(regime);
    validate(beliefs);
    if (regime.persuasion != Persuasion::FullyPublic) return reputation(params, regime, beliefs);
    const LobbyistType t = beliefs.weight_a > 0.5 ? LobbyistType::A : LobbyistType::B;
    return detail::recommendation_reputation(params.tau, beliefs.of(t).strategy.prob_a(rec));
}

/// Reputational payoff forgone by choosing a rather than b at posterior mu:
/// theta * bracket with
///   bracket = mu [f(rep(b,A)) - f(rep(a,A))] + (1-mu) [f(rep(b,B)) - f(rep(a,B))].
struct ReputationLoss {
    double bracket = 0.0;
    Theta theta;

    double value() const { return theta.times(bracket); }
};

inline ReputationLoss reputation_loss(const Params& params, double mu, const ReputationProfile& reps,
                                      const ReputationCurve& f) {
    const double bracket = mu * (f(reps.b_A) - f(reps.a_A)) + (1.0 - mu) * (f(reps.b_B) - f(reps.a_B));
    return {bracket, params.theta};
}

// Quality gain minus reputation loss (sign-exact for infinite theta).
inline double net_gain(double mu, const ReputationLoss& loss) {
    return loss.theta.balance(quality_gain(mu), loss.bracket);
}

/// Probability that a low-ability politician takes `preferred`.
inline double lobbyist_payoff(double prior, const Experiment& e, const PoliticianStrategy& s, Action preferred) {
    const double pa = prior * (e.a_given_A * s.after_a + e.b_given_A() * s.after_b) +
                      (1.0 - prior) * (e.a_given_B * s.after_a + e.b_given_B() * s.after_b);
    return preferred == Action::a ? pa : 1.0 - pa;
}

/// Probability of a correct decision: tau + (1-tau) P(low type correct), with
/// the low type's accuracy averaged over lobbyist types by weight_a.
inline double welfare(const Params& params, const Profile& profile) {
    double low_correct = 0.0;
    for (LobbyistType t : {LobbyistType::A, LobbyistType::B}) {
        const double w = profile.weight(t);
        if (w <= 0.0) continue;
        const TypeProfile& tp = profile.of(t);
        low_correct += w * (params.mu0 * detail::low_prob_a(tp, State::A) +
                            (1.0 - params.mu0) * (1.0 - detail::low_prob_a(tp, State::B)));
    }
    return params.tau + (1.0 - params.tau) * low_correct;
}

/// Swaps recommendation labels (and the strategy with them) when
/// P(A|a~) < P(A|b~), so that a~ is the recommendation favouring A.
struct Canonical {
    Experiment experiment;
    PoliticianStrategy strategy;
    bool swapped = false;
};

inline Canonical canonicalize(double prior, const Experiment& e, const PoliticianStrategy& s = {}) {
    const auto mu_a = posterior(prior, e, Recommendation::a);
    const auto mu_b = posterior(prior, e, Recommendation::b);
    if (mu_a && mu_b && *mu_a < *mu_b) {
        return {{e.b_given_A(), e.b_given_B()}, {s.after_b, s.after_a}, true};
    }
    return {e, s, false};
}

// Relabeling A<->B, a<->b, a~<->b~.
inline Experiment mirror(const Experiment& e) { return {e.b_given_B(), e.b_given_A()}; }
inline PoliticianStrategy mirror(const PoliticianStrategy& s) { return {1.0 - s.after_b, 1.0 - s.after_a}; }
inline TypeProfile mirror(const TypeProfile& t) { return {mirror(t.experiment), mirror(t.strategy)}; }
inline Profile mirror(const Profile& p) { return {mirror(p.lobbyist_b), mirror(p.lobbyist_a), 1.0 - p.weight_a}; }
inline ReputationProfile mirror(const ReputationProfile& r) { return {r.b_B, r.b_A, r.a_B, r.a_A}; }

} // namespace lobby
