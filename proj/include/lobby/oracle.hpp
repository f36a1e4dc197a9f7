#pragma once

// Brute-force checks that do not reuse the solvers' algebra: payoff
// enumeration for the politician, experiment grid search for the lobbyist,
// and a Monte Carlo simulation of the reputation updating.

#include <array>
#include <cmath>
#include <cstdint>
#include <future>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lobby/best_response.hpp"
#include "lobby/equilibrium.hpp"
#include "lobby/model.hpp"
#include "lobby/numeric.hpp"
#include "lobby/public_persuasion.hpp"

namespace lobby {

inline constexpr double kDeviationTolerance = 1e-7;

struct PoliticianWitness {
    LobbyistType type = LobbyistType::A;
    Recommendation rec = Recommendation::a;
    double candidate_q = 0.0;  // candidate probability of choosing a
    double best_q = 0.0;
};

struct LobbyistWitness {
    LobbyistType type = LobbyistType::A;
    Experiment candidate;
    Experiment best;
    double candidate_payoff = 0.0;
    double best_payoff = 0.0;
};

struct DeviationReport {
    double max_politician_gain = 0.0;
    double max_lobbyist_gain = 0.0;
    std::optional<PoliticianWitness> politician_witness;
    std::optional<LobbyistWitness> lobbyist_witness;
    int grid_resolution = 0;
    long long mc_samples = 0;
    std::uint64_t seed = 0;

    bool certified(double tol = kDeviationTolerance) const {
        return max_politician_gain <= tol && max_lobbyist_gain <= tol;
    }
};

// ---- politician ---------------------------------------------------------

namespace detail {

// Reputations the politician faces after `rec`, held at the public's beliefs.
inline ReputationProfile held_reputations(const Params& params, const Regime& regime, const Profile& beliefs,
                                          LobbyistType type, Recommendation rec) {
    if (regime.persuasion == Persuasion::FullyPublic) {
        return recommendation_reputation(params.tau, beliefs.of(type).strategy.prob_a(rec));
    }
    return to_profile(reputation_masses(params.mu0, params.tau, regime.consequence, beliefs));
}

// Expected utility of choosing a with probability q at posterior mu.
inline double politician_utility(const Params& params, double mu, double q, const ReputationProfile& reps,
                                 const ReputationCurve& f) {
    const double quality = q * mu + (1.0 - q) * (1.0 - mu);
    const double rep_if_a = mu * f(reps.a_A) + (1.0 - mu) * f(reps.a_B);
    const double rep_if_b = mu * f(reps.b_A) + (1.0 - mu) * f(reps.b_B);
    const double rep = q * rep_if_a + (1.0 - q) * rep_if_b;
    return params.theta.quality_weight() * quality + params.theta.reputation_weight() * rep;
}

} // namespace detail

/// Largest utility gain from changing the politician's choice after any
/// recommendation of any lobbyist type with positive weight. Candidate
/// responses are compared with pure choices and a `grid`-point mix grid;
/// gains are weighted by the probability of reaching the recommendation.
inline DeviationReport verify_politician(const Params& params, const Regime& regime, const Profile& candidate,
                                         const ReputationCurve& curve, int grid = 1000) {
    validate_environment(params);
    validate(candidate);
    DeviationReport out;
    out.grid_resolution = grid;
    for (LobbyistType t : {LobbyistType::A, LobbyistType::B}) {
        const double w = candidate.weight(t);
        if (w <= 0.0) continue;
        const TypeProfile& tp = candidate.of(t);
        for (Recommendation rec : {Recommendation::a, Recommendation::b}) {
            const double reach = tp.experiment.marginal(params.mu0, rec);
            if (reach <= 0.0) continue;
            const double mu = *posterior(params.mu0, tp.experiment, rec);
            const ReputationProfile reps = detail::held_reputations(params, regime, candidate, t, rec);
            const double q0 = tp.strategy.prob_a(rec);
            const double base = detail::politician_utility(params, mu, q0, reps, curve);
            auto probe = [&](double q) {
                const double gain = w * reach * (detail::politician_utility(params, mu, q, reps, curve) - base);
                if (gain > out.max_politician_gain) {
                    out.max_politician_gain = gain;
                    out.politician_witness = PoliticianWitness{t, rec, q0, q};
                }
            };
            probe(0.0);
            probe(1.0);
            for (int i = 1; i < grid; ++i) probe(static_cast<double>(i) / grid);
        }
    }
    return out;
}

// ---- lobbyist ---------------------------------------------------------------

namespace detail {

// Politician's choice at a privately offered experiment, reputations held
// fixed: a iff the net gain is positive, ties go to the recommendation.
inline PoliticianStrategy private_response(const Params& params, const Experiment& e, const ReputationProfile& reps,
                                           const ReputationCurve& curve) {
    PoliticianStrategy s;
    const Canonical c = canonicalize(params.mu0, e);
    for (Recommendation rec : {Recommendation::a, Recommendation::b}) {
        const auto mu = posterior(params.mu0, c.experiment, rec);
        double choose_a = rec == Recommendation::a ? 1.0 : 0.0;
        if (mu) {
            const double g = net_gain(*mu, reputation_loss(params, *mu, reps, curve));
            if (g > 0.0) choose_a = 1.0;
            if (g < 0.0) choose_a = 0.0;
        }
        s.prob_a(rec) = choose_a;
    }
    if (c.swapped) std::swap(s.after_a, s.after_b);
    return s;
}

inline PoliticianStrategy fully_public_response(const Params& params, const Experiment& e,
                                                const ReputationCurve& curve) {
    PoliticianStrategy s;
    for (Recommendation rec : {Recommendation::a, Recommendation::b}) {
        const auto mu = posterior(params.mu0, e, rec);
        if (mu) s.prob_a(rec) = solve_p_star_public(params, *mu, curve);
    }
    return s;
}

} // namespace detail

/// Payoff of `type` from offering `probe` when the public's beliefs are
/// `beliefs`. Under private persuasion reputations stay at the beliefs;
/// with a public experiment they follow the probe.
inline double probe_payoff(const Params& params, const Regime& regime, const Profile& beliefs, LobbyistType type,
                           const Experiment& probe, const ReputationCurve& curve) {
    const Action preferred = preferred_action(type);
    switch (regime.persuasion) {
        case Persuasion::Private: {
            const ReputationProfile reps =
                detail::to_profile(detail::reputation_masses(params.mu0, params.tau, regime.consequence, beliefs));
            return lobbyist_payoff(params.mu0, probe, detail::private_response(params, probe, reps, curve), preferred);
        }
        case Persuasion::ExperimentPublic: {
            if (type == LobbyistType::A) {
                const BestResponse br = public_experiment_response(params, probe, curve, false);
                return lobbyist_payoff(params.mu0, probe, br.strategy, preferred);
            }
            const Params frame = mirrored(params);
            const BestResponse br = public_experiment_response(frame, mirror(probe), curve, false);
            return lobbyist_payoff(frame.mu0, mirror(probe), br.strategy, Action::a);
        }
        case Persuasion::FullyPublic:
            return lobbyist_payoff(params.mu0, probe, detail::fully_public_response(params, probe, curve), preferred);
    }
    return 0.0;
}

/// Grid search over experiments (pi(a~|A), pi(a~|B)) on a grid x grid lattice
/// plus a zoom x zoom lattice spanning one coarse cell around the candidate.
inline DeviationReport verify_lobbyist(const Params& params, const Regime& regime, const Profile& candidate,
                                       const ReputationCurve& curve, int grid = 300, int zoom = 101) {
    validate_environment(params);
    validate(candidate);
    DeviationReport out;
    out.grid_resolution = grid;
    for (LobbyistType t : {LobbyistType::A, LobbyistType::B}) {
        if (candidate.weight(t) <= 0.0) continue;
        const TypeProfile& tp = candidate.of(t);
        const double base = lobbyist_payoff(params.mu0, tp.experiment, tp.strategy, preferred_action(t));
        const auto consider = [&](double x, double y) {
            const Experiment probe{x, y};
            const double v = probe_payoff(params, regime, candidate, t, probe, curve);
            if (v - base > out.max_lobbyist_gain) {
                out.max_lobbyist_gain = v - base;
                out.lobbyist_witness = LobbyistWitness{t, tp.experiment, probe, base, v};
            }
        };
        const std::vector<double> coarse = numeric::linspace(0.0, 1.0, static_cast<std::size_t>(grid));
        for (double x : coarse) {
            for (double y : coarse) consider(x, y);
        }
        const double h = 1.0 / (grid - 1);
        const auto local = [&](double c) {
            return numeric::linspace(std::max(0.0, c - h), std::min(1.0, c + h), static_cast<std::size_t>(zoom));
        };
        const std::vector<double> xs = local(tp.experiment.a_given_A);
        const std::vector<double> ys = local(tp.experiment.a_given_B);
        for (double x : xs) {
            for (double y : ys) consider(x, y);
        }
    }
    return out;
}

/// Politician and lobbyist checks combined. For a preference-revealed
/// outcome only the type selected by weight_a is checked.
inline DeviationReport verify_equilibrium(const Params& params, const RegimeEquilibrium& eq,
                                          const ReputationCurve& curve, int grid = 300, int zoom = 101) {
    const Profile p = eq.outcome.profile();
    DeviationReport out = verify_politician(params, eq.regime, p, curve);
    const DeviationReport l = verify_lobbyist(params, eq.regime, p, curve, grid, zoom);
    out.max_lobbyist_gain = l.max_lobbyist_gain;
    out.lobbyist_witness = l.lobbyist_witness;
    out.grid_resolution = grid;
    return out;
}

// ---- Monte Carlo ------------------------------------------------------------

struct McCell {
    long long count = 0;
    long long high = 0;

    std::optional<double> frequency() const {
        if (count == 0) return std::nullopt;
        return static_cast<double>(high) / static_cast<double>(count);
    }
};

struct MonteCarloReport {
    // Observable cells by (action, state); under fully public persuasion
    // indexed again by the recommendation.
    std::array<std::array<std::array<McCell, 2>, 2>, 2> by_rec{};  // [rec][action][state]
    std::array<std::array<McCell, 2>, 2> cells{};                  // [action][state], consequence folded when concealed
    long long samples = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> empty_cells;
};

namespace detail {

// SplitMix64 step, used only to derive independent shard seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace detail

/// Simulates ability, state, lobbyist type, recommendation and action, and
/// tallies how often the politician is high ability in each cell the public
/// can observe. Deterministic given `seed` and `shards`.
inline MonteCarloReport monte_carlo_reputation(const Params& params, const Regime& regime, const Profile& profile,
                                               long long samples, std::uint64_t seed, int shards = 8) {
    validate_environment(params);
    validate(profile);
    if (samples <= 0) throw ModelError("monte carlo: sample count must be positive");
    using Tally = std::array<std::array<std::array<std::array<long long, 2>, 2>, 2>, 2>;  // [rec][x][s][high]
    std::uint64_t state = seed;
    std::vector<std::uint64_t> seeds;
    for (int i = 0; i < shards; ++i) seeds.push_back(detail::splitmix64(state));

    const auto run_shard = [&](std::uint64_t shard_seed, long long n) {
        std::mt19937_64 rng(shard_seed);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        Tally t{};
        for (long long i = 0; i < n; ++i) {
            const bool high = u(rng) < params.tau;
            const State s = u(rng) < params.mu0 ? State::A : State::B;
            const LobbyistType type = u(rng) < profile.weight_a ? LobbyistType::A : LobbyistType::B;
            const TypeProfile& tp = profile.of(type);
            const Recommendation rec = u(rng) < tp.experiment.prob(Recommendation::a, s) ? Recommendation::a
                                                                                          : Recommendation::b;
            Action x = matching_action(s);
            if (!high) x = u(rng) < tp.strategy.prob_a(rec) ? Action::a : Action::b;
            ++t[rec == Recommendation::a ? 0 : 1][index(x)][index(s)][high ? 1 : 0];
        }
        return t;
    };

    std::vector<std::future<Tally>> jobs;
    for (int i = 0; i < shards; ++i) {
        const long long n = samples / shards + (i < samples % shards ? 1 : 0);
        jobs.push_back(std::async(std::launch::async, run_shard, seeds[static_cast<std::size_t>(i)], n));
    }
    Tally total{};
    for (auto& j : jobs) {
        const Tally t = j.get();
        for (int r = 0; r < 2; ++r)
            for (int x = 0; x < 2; ++x)
                for (int s = 0; s < 2; ++s)
                    for (int h = 0; h < 2; ++h) total[r][x][s][h] += t[r][x][s][h];
    }

    MonteCarloReport rep;
    rep.samples = samples;
    rep.seed = seed;
    for (int r = 0; r < 2; ++r) {
        for (int x = 0; x < 2; ++x) {
            for (int s = 0; s < 2; ++s) {
                McCell& c = rep.by_rec[r][x][s];
                c.high = total[r][x][s][1];
                c.count = total[r][x][s][0] + total[r][x][s][1];
                McCell& folded = rep.cells[x][s];
                folded.high += c.high;
                folded.count += c.count;
            }
        }
    }
    if (regime.consequence == Transparency::Concealed) {
        for (int x = 0; x < 2; ++x) {
            McCell both{rep.cells[x][0].count + rep.cells[x][1].count, rep.cells[x][0].high + rep.cells[x][1].high};
            rep.cells[x][0] = both;
            rep.cells[x][1] = both;
        }
    }
    const char* names[2][2] = {{"a,A", "a,B"}, {"b,A", "b,B"}};
    for (int x = 0; x < 2; ++x) {
        for (int s = 0; s < 2; ++s) {
            if (rep.cells[x][s].count == 0) rep.empty_cells.emplace_back(names[x][s]);
        }
    }
    return rep;
}

struct McComparison {
    bool within = true;
    double worst_z = 0.0;  // largest |freq - analytic| / s.e. over non-empty cells
    std::vector<std::string> empty_cells;
};

/// Compares Monte Carlo frequencies with analytic reputations using the
/// standard error sqrt(r(1-r)/n) of the analytic value r.
inline McComparison compare_reputations(const MonteCarloReport& mc, const ReputationProfile& analytic,
                                        double z_limit = 3.0) {
    McComparison out;
    out.empty_cells = mc.empty_cells;
    for (Action x : {Action::a, Action::b}) {
        for (State s : {State::A, State::B}) {
            const McCell& c = mc.cells[index(x)][index(s)];
            const auto freq = c.frequency();
            if (!freq) continue;
            const double r = analytic.at(x, s);
            const double se = std::sqrt(r * (1.0 - r) / static_cast<double>(c.count));
            double z = 0.0;
            if (se > 0.0) {
                z = std::abs(*freq - r) / se;
            } else if (*freq != r) {
                z = std::numeric_limits<double>::infinity();
            }
            out.worst_z = std::max(out.worst_z, z);
        }
    }
    out.within = out.worst_z <= z_limit;
    return out;
}

} // namespace lobby
