#pragma once

// Informativeness comparisons, the four-regime welfare table, and parameter
// sweeps.

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <future>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "lobby/equilibrium.hpp"
#include "lobby/model.hpp"
#include "lobby/public_persuasion.hpp"

namespace lobby {

/// Any supported regime at the given parameters.
inline RegimeEquilibrium solve_regime(const Params& params, const Regime& regime,
                                      const ReputationCurve& curve = ReputationCurve::linear()) {
    validate(regime);
    switch (regime.persuasion) {
        case Persuasion::FullyPublic: return fully_public_equilibrium(params, curve);
        case Persuasion::ExperimentPublic: {
            // The experiment the public sees equals the one it would have
            // believed, so the private characterization carries over.
            RegimeEquilibrium eq = solve_baseline(params, curve);
            eq.regime = regime;
            return eq;
        }
        case Persuasion::Private: break;
    }
    if (regime.intent == Transparency::Revealed) {
        return solve_revealed_intent(params, regime.consequence, LobbyistType::A, curve);
    }
    if (regime.consequence == Transparency::Revealed) return solve_concealed_intent(params, curve);
    return solve_consequence_concealed(params, Transparency::Concealed, curve);
}

// ---- Blackwell order ------------------------------------------------------

enum class BlackwellRelation { Dominates, DominatedBy, Equal, Incomparable };

inline std::string to_string(BlackwellRelation r) {
    switch (r) {
        case BlackwellRelation::Dominates: return "Dominates";
        case BlackwellRelation::DominatedBy: return "DominatedBy";
        case BlackwellRelation::Equal: return "Equal";
        case BlackwellRelation::Incomparable: return "Incomparable";
    }
    return "?";
}

using Matrix2 = std::array<std::array<double, 2>, 2>;

struct BlackwellVerdict {
    BlackwellRelation relation = BlackwellRelation::Incomparable;
    // Row-stochastic G with (second experiment) = (first) * G, or the reverse
    // factorization when the first is dominated.
    std::optional<Matrix2> garbling_witness;
};

inline constexpr double kGarblingTolerance = 1e-10;

// Rows are states (A, B), columns recommendations (a~, b~).
inline Matrix2 as_matrix(const Experiment& e) {
    return {{{e.a_given_A, e.b_given_A()}, {e.a_given_B, e.b_given_B()}}};
}

/// Stochastic G with to = from * G, if one exists.
inline std::optional<Matrix2> garbling(const Experiment& from, const Experiment& to) {
    const Matrix2 p = as_matrix(from);
    const Matrix2 q = as_matrix(to);
    const double det = p[0][0] * p[1][1] - p[0][1] * p[1][0];
    if (std::abs(det) <= kGarblingTolerance) {
        // Uninformative source: only uninformative targets are reachable,
        // through the constant kernel that reproduces them.
        if (std::abs(to.a_given_A - to.a_given_B) > kGarblingTolerance) return std::nullopt;
        const double a = 0.5 * (to.a_given_A + to.a_given_B);
        return Matrix2{{{a, 1.0 - a}, {a, 1.0 - a}}};
    }
    const Matrix2 inv{{{p[1][1] / det, -p[0][1] / det}, {-p[1][0] / det, p[0][0] / det}}};
    Matrix2 g{};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) g[i][j] = inv[i][0] * q[0][j] + inv[i][1] * q[1][j];
    }
    for (const auto& row : g) {
        for (double v : row) {
            if (v < -kGarblingTolerance || v > 1.0 + kGarblingTolerance) return std::nullopt;
        }
    }
    return g;
}

/// Compares two experiments by factorizing one through the other.
inline BlackwellVerdict blackwell_compare(const Experiment& e1, const Experiment& e2, double prior) {
    if (!(prior > 0.0 && prior < 1.0)) throw ModelError("prior must lie in (0, 1)");
    const auto down = garbling(e1, e2);
    const auto up = garbling(e2, e1);
    if (down && up) return {BlackwellRelation::Equal, down};
    if (down) return {BlackwellRelation::Dominates, down};
    if (up) return {BlackwellRelation::DominatedBy, up};
    return {BlackwellRelation::Incomparable, std::nullopt};
}

/// Shortcut for experiments whose b~ reveals B (posterior 0): the higher
/// posterior at a~ is the more informative one.
inline BlackwellRelation blackwell_by_posterior(const Experiment& e1, const Experiment& e2, double prior,
                                                double tol = 1e-12) {
    const double m1 = posterior(prior, e1, Recommendation::a).value_or(prior);
    const double m2 = posterior(prior, e2, Recommendation::a).value_or(prior);
    if (std::abs(m1 - m2) <= tol) return BlackwellRelation::Equal;
    return m1 > m2 ? BlackwellRelation::Dominates : BlackwellRelation::DominatedBy;
}

// ---- four-regime welfare table ---------------------------------------------

inline constexpr double kSignDeadBand = 1e-9;

inline int dead_band_sign(double v, double band = kSignDeadBand) {
    if (std::abs(v) <= band) return 0;
    return v > 0.0 ? 1 : -1;
}

inline std::string sign_label(int s) { return s > 0 ? "+" : (s < 0 ? "-" : "≈0"); }

struct Figure1Table {
    // welfare[intent][consequence], index 0 = revealed, 1 = concealed.
    // Rows with a revealed preference are ex-ante gamma-mixtures of the two
    // lobbyist types' equilibria.
    std::array<std::array<double, 2>, 2> welfare{};
    std::array<std::array<RegimeEquilibrium, 2>, 2> equilibria{};
    // Welfare with the dimension revealed minus welfare with it concealed.
    std::array<double, 2> intent_effect{};       // per consequence column
    std::array<double, 2> consequence_effect{};  // per intent row
    std::array<int, 2> intent_sign{};
    std::array<int, 2> consequence_sign{};
};

/// Solves all four private-persuasion regimes. Throws AssumptionViolated
/// when the concealed-preference/concealed-consequence cell is undefined.
inline Figure1Table figure1_table(const Params& params, const ReputationCurve& curve = ReputationCurve::linear()) {
    validate(params);
    Figure1Table t;
    for (int c = 0; c < 2; ++c) {
        const Transparency cons = c == 0 ? Transparency::Revealed : Transparency::Concealed;
        t.equilibria[0][c] = solve_revealed_intent(params, cons, LobbyistType::A, curve);
        t.welfare[0][c] = revealed_intent_welfare(params, cons, curve);
        t.equilibria[1][c] = solve_regime(params, {Transparency::Concealed, cons, Persuasion::Private}, curve);
        t.welfare[1][c] = t.equilibria[1][c].outcome.welfare;
    }
    for (int i = 0; i < 2; ++i) {
        t.intent_effect[i] = t.welfare[0][i] - t.welfare[1][i];
        t.consequence_effect[i] = t.welfare[i][0] - t.welfare[i][1];
        t.intent_sign[i] = dead_band_sign(t.intent_effect[i]);
        t.consequence_sign[i] = dead_band_sign(t.consequence_effect[i]);
    }
    return t;
}

// ---- sweeps -----------------------------------------------------------------

enum class Axis { Theta, Gamma, Mu0, Tau };

inline std::string to_string(Axis a) {
    switch (a) {
        case Axis::Theta: return "theta";
        case Axis::Gamma: return "gamma";
        case Axis::Mu0: return "mu0";
        case Axis::Tau: return "tau";
    }
    return "?";
}

inline std::optional<Axis> axis_from_string(std::string_view s) {
    for (Axis a : {Axis::Theta, Axis::Gamma, Axis::Mu0, Axis::Tau}) {
        if (to_string(a) == s) return a;
    }
    return std::nullopt;
}

inline Params with_axis(Params p, Axis axis, double v) {
    switch (axis) {
        case Axis::Theta: p.theta = std::isinf(v) ? Theta::infinity() : Theta(v); break;
        case Axis::Gamma: p.gamma = v; break;
        case Axis::Mu0: p.mu0 = v; break;
        case Axis::Tau: p.tau = v; break;
    }
    return p;
}

struct SweepPoint {
    double value = 0.0;
    Params params;
    std::optional<RegimeEquilibrium> equilibrium;
    std::string error;  // set when the point failed; the sweep goes on
};

struct SweepResult {
    Axis axis = Axis::Theta;
    Regime regime;
    std::vector<SweepPoint> points;
    bool mu_info_nondecreasing = true;
    bool welfare_nondecreasing = true;
    bool mu_info_nonincreasing = true;
    bool welfare_nonincreasing = true;
};

/// Solves `regime` at every grid value of `axis`. Points run concurrently in
/// `workers` chunks; results keep grid order.
inline SweepResult sweep(const Params& base, const Regime& regime, Axis axis, const std::vector<double>& grid,
                         const ReputationCurve& curve = ReputationCurve::linear(), unsigned workers = 0) {
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) throw ModelError("sweep grid must be strictly ascending");
    }
    SweepResult out;
    out.axis = axis;
    out.regime = regime;
    out.points.resize(grid.size());
    const auto solve_one = [&](std::size_t i) {
        SweepPoint& pt = out.points[i];
        pt.value = grid[i];
        try {
            pt.params = with_axis(base, axis, grid[i]);
            validate(pt.params);
            pt.equilibrium = solve_regime(pt.params, regime, curve);
        } catch (const std::exception& e) {
            pt.error = e.what();
        }
    };
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(grid.size(), 1)));
    std::vector<std::future<void>> jobs;
    for (unsigned w = 0; w < workers; ++w) {
        jobs.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t i = w; i < grid.size(); i += workers) solve_one(i);
        }));
    }
    for (auto& j : jobs) j.get();

    const SweepPoint* prev = nullptr;
    for (const SweepPoint& pt : out.points) {
        if (!pt.equilibrium) continue;
        if (prev) {
            const EquilibriumOutcome& a = prev->equilibrium->outcome;
            const EquilibriumOutcome& b = pt.equilibrium->outcome;
            // Bisection noise is far below this.
            constexpr double eps = 1e-12;
            if (b.posterior_info < a.posterior_info - eps) out.mu_info_nondecreasing = false;
            if (b.posterior_info > a.posterior_info + eps) out.mu_info_nonincreasing = false;
            if (b.welfare < a.welfare - eps) out.welfare_nondecreasing = false;
            if (b.welfare > a.welfare + eps) out.welfare_nonincreasing = false;
        }
        prev = &pt;
    }
    return out;
}

} // namespace lobby
