#pragma once

// Politician's response to a fixed experiment. Reputations track the
// politician's own strategy (the public's belief about it is consistent), so
// the response is the fixed point of quality gain = reputation loss.

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "lobby/model.hpp"
#include "lobby/numeric.hpp"

namespace lobby {

enum class RandomizingOn { None, RecA, RecB };

// Net gains this close to zero count as ties (resolved toward obedience).
// Equilibrium roots leave residuals of a few ulps.
inline constexpr double kTieTolerance = 1e-12;

struct BestResponse {
    // Unclamped root of the indifference equation, as a probability of obeying
    // the randomizing recommendation (choosing a after a~, b after b~).
    // +-inf when the equation has no root (theta = 0 away from mu = 1/2).
    double p_star_raw = 1.0;
    PoliticianStrategy strategy;
    RandomizingOn randomizing_on = RandomizingOn::None;
};

namespace detail {

// Indifference at `rec` while the other recommendation is obeyed. The
// argument p is the probability of obeying `rec`. advantage(p) is the
// politician's net gain from obeying rather than disobeying, which is
// decreasing in p: obeying more often makes the obeyed action look worse.
class Indifference {
public:
    Indifference(const Params& params, const Regime& regime, const ReputationCurve& curve, Profile beliefs,
                 LobbyistType facing, Recommendation rec, double mu)
        : params_(params), regime_(regime), curve_(curve), beliefs_(std::move(beliefs)), facing_(facing),
          rec_(rec), mu_(mu) {}

    PoliticianStrategy strategy_for(double p) const {
        return rec_ == Recommendation::a ? PoliticianStrategy{p, 0.0} : PoliticianStrategy{1.0, 1.0 - p};
    }

    double advantage(double p) const {
        const ReputationProfile reps = reputations(p);
        if (std::isnan(reps.a_A) || std::isnan(reps.a_B) || std::isnan(reps.b_A) || std::isnan(reps.b_B)) {
            return std::numeric_limits<double>::quiet_NaN();
        }
        const double g = net_gain(mu_, reputation_loss(params_, mu_, reps, curve_));
        return rec_ == Recommendation::a ? g : -g;
    }

    // Open interval of p on which every reputation denominator is positive.
    std::pair<double, double> domain() const {
        if (regime_.persuasion == Persuasion::FullyPublic) {
            const double k = params_.tau / (1.0 - params_.tau);
            return {-k, 1.0 + k};
        }
        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
        const MassTable m0 = masses(0.0);
        const MassTable m1 = masses(1.0);
        for (std::size_t x = 0; x < 2; ++x) {
            for (std::size_t s = 0; s < 2; ++s) {
                if (m0[x][s].high <= 0.0) continue;
                const double d0 = m0[x][s].high + m0[x][s].low;
                const double slope = (m1[x][s].high + m1[x][s].low) - d0;
                if (slope > 0.0) lo = std::max(lo, -d0 / slope);
                if (slope < 0.0) hi = std::min(hi, -d0 / slope);
            }
        }
        return {lo, hi};
    }

private:
    MassTable masses(double p) const {
        Profile b = beliefs_;
        b.of(facing_).strategy = strategy_for(p);
        return reputation_masses(params_.mu0, params_.tau, regime_.consequence, b);
    }

    ReputationProfile reputations(double p) const {
        if (regime_.persuasion == Persuasion::FullyPublic) {
            return recommendation_reputation(params_.tau, strategy_for(p).prob_a(rec_));
        }
        return to_profile(masses(p));
    }

    const Params& params_;
    Regime regime_;
    const ReputationCurve& curve_;
    Profile beliefs_;
    LobbyistType facing_;
    Recommendation rec_;
    double mu_;
};

// Root of a decreasing function on the open interval (lo, hi) that is known
// to be positive at lo-side point `start` (searching upward) or negative
// there (searching downward).
template <class F>
double continued_root(F&& adv, double start, double bound) {
    constexpr double kFarAway = 1e6;
    const bool upward = bound > start;
    double end = bound;
    if (!std::isfinite(end)) {
        end = upward ? start + kFarAway : start - kFarAway;
    } else {
        end -= (end - start) * 1e-14;
    }
    const double a_end = adv(end);
    if (std::isnan(a_end)) return std::numeric_limits<double>::quiet_NaN();
    const bool crosses = upward ? a_end < 0.0 : a_end > 0.0;
    if (!crosses) return upward ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
    return upward ? numeric::bisect(adv, start, end) : numeric::bisect(adv, end, start);
}

} // namespace detail

/// Politician's response at `rec` when she obeys the other recommendation and
/// the public's belief about her strategy tracks her choice. Reputations use
/// `beliefs` for everything else (the other lobbyist type, the believed
/// experiment). The posterior comes from the actual experiment.
///
/// Exact indifference at p = 1 resolves toward obedience. Without
/// `continue_root`, a corner leaves p_star_raw at the corner (cheaper when
/// only the strategy matters).
inline BestResponse solve_indifference(const Params& params, const Regime& regime, const Experiment& actual,
                                       Recommendation rec, const ReputationCurve& curve, const Profile& beliefs,
                                       LobbyistType facing = LobbyistType::A, bool continue_root = true) {
    validate_environment(params);
    validate(regime);
    const auto mu = posterior(params.mu0, actual, rec);
    const detail::Indifference problem(params, regime, curve, beliefs, facing, rec, mu.value_or(0.5));
    BestResponse out;
    if (!mu) {
        out.strategy = problem.strategy_for(1.0);
        return out;
    }
    const auto adv = [&](double p) { return problem.advantage(p); };
    const double at_one = adv(1.0);
    const double at_zero = adv(0.0);
    double p = 1.0;
    if (at_one >= -kTieTolerance) {
        p = 1.0;
        if (continue_root) {
            out.p_star_raw = std::abs(at_one) <= kTieTolerance ? 1.0 : detail::continued_root(adv, 1.0, problem.domain().second);
        }
    } else if (at_zero <= 0.0) {
        p = 0.0;
        out.p_star_raw = 0.0;
        if (continue_root) {
            out.p_star_raw = at_zero == 0.0 ? 0.0 : detail::continued_root(adv, 0.0, problem.domain().first);
        }
    } else {
        p = numeric::bisect(adv, 0.0, 1.0);
        out.p_star_raw = p;
    }
    out.strategy = problem.strategy_for(p);
    if (p > 0.0 && p < 1.0) out.randomizing_on = rec == Recommendation::a ? RandomizingOn::RecA : RandomizingOn::RecB;
    return out;
}

/// Full response to an experiment: first assume b~ is obeyed and solve at a~;
/// if obeying b~ is then not optimal, solve at b~ with a~ obeyed. When both
/// recommendations carry the same posterior the recommendation is ignored and
/// a single mixing probability is the fixed point.
inline BestResponse best_response(const Params& params, const Regime& regime, const Experiment& actual,
                                  const ReputationCurve& curve, const Profile& beliefs,
                                  LobbyistType facing = LobbyistType::A, bool continue_root = true) {
    const auto mu_a = posterior(params.mu0, actual, Recommendation::a);
    const auto mu_b = posterior(params.mu0, actual, Recommendation::b);

    const auto net_at = [&](double mu, const PoliticianStrategy& s) {
        Profile b = beliefs;
        b.of(facing).strategy = s;
        ReputationProfile reps;
        if (regime.persuasion == Persuasion::FullyPublic) {
            reps = detail::recommendation_reputation(params.tau, s.after_b);
        } else {
            reps = detail::to_profile(detail::reputation_masses(params.mu0, params.tau, regime.consequence, b));
        }
        return net_gain(mu, reputation_loss(params, mu, reps, curve));
    };

    if (mu_a && mu_b && std::abs(*mu_a - *mu_b) <= kTieTolerance) {
        const double mu = *mu_a;
        const auto adv = [&](double q) { return net_at(mu, {q, q}); };
        BestResponse out;
        double q = 1.0;
        if (adv(1.0) >= 0.0) {
            q = 1.0;
        } else if (adv(0.0) <= 0.0) {
            q = 0.0;
        } else {
            q = numeric::bisect(adv, 0.0, 1.0);
        }
        out.p_star_raw = q;
        out.strategy = {q, q};
        return out;
    }

    BestResponse at_a =
        solve_indifference(params, regime, actual, Recommendation::a, curve, beliefs, facing, continue_root);
    if (!mu_b || net_at(*mu_b, at_a.strategy) <= kTieTolerance) return at_a;
    return solve_indifference(params, regime, actual, Recommendation::b, curve, beliefs, facing, continue_root);
}

/// Response of the politician facing a single, known lobbyist-A whose
/// experiment the public believes correctly (the baseline setting).
inline BestResponse best_response(const Params& params, const Experiment& actual,
                                  const ReputationCurve& curve = ReputationCurve::linear()) {
    Profile beliefs;
    beliefs.lobbyist_a = {actual, PoliticianStrategy::obedient()};
    beliefs.weight_a = 1.0;
    return best_response(params, Regime::baseline(), actual, curve, beliefs);
}

/// The open interval containing p* in the baseline setting:
/// (-tau / ((1-tau) pi(a~|A)), 1 + [tau/(1-tau) + pi(b~|B)] / pi(a~|B)).
inline std::pair<double, double> indifference_interval(const Params& params, const Experiment& e) {
    const double k = params.tau / (1.0 - params.tau);
    const double lo = e.a_given_A > 0.0 ? -k / e.a_given_A : -std::numeric_limits<double>::infinity();
    const double hi = e.a_given_B > 0.0 ? 1.0 + (k + e.b_given_B()) / e.a_given_B
                                        : std::numeric_limits<double>::infinity();
    return {lo, hi};
}

/// Sign of the finite-difference change in the unclamped p* at `rec` when
/// theta rises by delta (-1, 0 or +1).
inline int p_star_theta_response(const Params& params, const Regime& regime, const Experiment& actual,
                                 Recommendation rec, const ReputationCurve& curve, const Profile& beliefs,
                                 LobbyistType facing = LobbyistType::A, double delta = 1e-4) {
    if (params.theta.is_infinite()) throw ModelError("theta response needs a finite theta");
    Params bumped = params;
    bumped.theta = Theta(params.theta.value() + delta);
    const double p0 = solve_indifference(params, regime, actual, rec, curve, beliefs, facing).p_star_raw;
    const double p1 = solve_indifference(bumped, regime, actual, rec, curve, beliefs, facing).p_star_raw;
    return numeric::sign(p1 - p0);
}

} // namespace lobby
