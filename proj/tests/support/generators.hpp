#pragma once

// Seeded parameter draws shared by the property tests.

#include <cstdint>
#include <random>

#include "lobby/model.hpp"

namespace lobby::fixtures {

class Draws {
public:
    explicit Draws(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

    // mu0 in (0.05, 0.45), tau in (0.05, 0.95), gamma in (0.05, 0.95).
    Params params(double theta_lo = 0.05, double theta_hi = 8.0) {
        Params p;
        p.mu0 = uniform(0.05, 0.45);
        p.tau = uniform(0.05, 0.95);
        p.theta = Theta(uniform(theta_lo, theta_hi));
        p.gamma = uniform(0.05, 0.95);
        return p;
    }

    Experiment experiment() { return {uniform(0.0, 1.0), uniform(0.0, 1.0)}; }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

} // namespace lobby::fixtures
