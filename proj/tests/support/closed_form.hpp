#pragma once

// Hand-written versions of the defining equations for the linear curve,
// written out term by term rather than through the reputation machinery.
// Each returns quality gain minus reputation loss at posterior mu, where the
// informer's experiment sends a~ for sure in its favoured state.

#include <cmath>

#include "lobby/model.hpp"

namespace lobby::fixtures {

// pi(b~|B) implied by posterior mu at a~.
inline double z_of(double mu0, double mu) { return 1.0 - mu0 * (1.0 - mu) / ((1.0 - mu0) * mu); }

inline double balance(const Params& p, double gain, double bracket) {
    return p.theta.is_infinite() ? -bracket : gain - p.theta.value() * bracket;
}

// Preference and consequence revealed.
inline double baseline_residual(const Params& p, double mu) {
    const double t = p.tau;
    const double z = z_of(p.mu0, mu);
    return balance(p, 2 * mu - 1, (1 - mu) * t / (t + (1 - t) * z) - mu * t);
}

// Preference concealed, consequence revealed, lobbyist-A informs.
inline double concealed_intent_residual(const Params& p, double mu) {
    const double t = p.tau;
    const double g = p.gamma;
    const double z = z_of(p.mu0, mu);
    return balance(p, 2 * mu - 1, (1 - mu) * t / (t + (1 - t) * (g * z + 1 - g)) - mu * t / (t + (1 - t) * g));
}

// Preference revealed, consequence concealed.
inline double hidden_consequence_residual(const Params& p, double mu) {
    const double t = p.tau;
    const double z = z_of(p.mu0, mu);
    return balance(p, 2 * mu - 1, t / (t + (1 - t) * z) - t / (t + (1 - t) / mu));
}

// Preference and consequence concealed, lobbyist-A informs.
inline double hidden_both_residual(const Params& p, double mu) {
    const double t = p.tau;
    const double g = p.gamma;
    const double z = z_of(p.mu0, mu);
    return balance(p, 2 * mu - 1,
                   t / (t + (1 - t) * (g * z + (1 - g) / (1 - p.mu0))) - t / (t + (1 - t) * g / mu));
}

// Club condition, left minus right side.
inline double club(const Params& p) {
    const double t = p.tau;
    const double g = p.gamma;
    return balance(p, 2 * p.mu0 - 1,
                   (1 - p.mu0) * t / (t + (1 - t) * (1 - g)) - p.mu0 * t / (t + (1 - t) * g));
}

} // namespace lobby::fixtures
