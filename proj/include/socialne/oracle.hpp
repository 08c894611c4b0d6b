#pragma once

// Centralized, full-information equilibrium solvers and NE certificates.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "socialne/errors.hpp"
#include "socialne/game.hpp"
#include "socialne/step_schedule.hpp"

namespace socialne {

inline constexpr double kBisectionTolerance = 1e-10;

struct SolverOptions {
    double tol = 1e-10;           // max per-sweep action change
    double residual_tol = 1e-8;   // KKT residual required to report convergence
    std::size_t max_sweeps = 10000;

    friend bool operator==(const SolverOptions&, const SolverOptions&) = default;
};

struct NEReport {
    ActionProfile profile;
    double residual = 0.0;   // KKT violation, cost-gradient units
    double br_gap = 0.0;     // max |x_i - BR_i(x)|, action units
    std::size_t iterations = 0;
    bool converged = false;
};

// Minimizer of x_i -> J_i over [0, x_max] with the other entries of x fixed.
// J_i is convex in x_i: a single follower admits a closed form, otherwise the
// monotone own-gradient is bisected.
inline double best_response(const Game& game, NodeId i, std::span<const double> x) {
    const auto audience = game.audience(i);
    if (audience.empty()) return 0.0; // gradient is h_i > 0 everywhere

    if (audience.size() == 1) {
        const Link& l = audience.front();
        const double root = game.L(l.node) * l.q / (2.0 * game.h(i));
        const double target = root * root; // feed mass where the marginal gain equals h_i
        // Below the guard the guarded gradient never changes sign.
        if (target <= kFeedMassGuard) return 0.0;
        const double others = feed_mass_without(game, l.node, i, x);
        return std::clamp((target - others) / l.q, 0.0, game.x_max());
    }

    if (own_gradient_at(game, i, x, 0.0) >= 0.0) return 0.0;
    if (own_gradient_at(game, i, x, game.x_max()) <= 0.0) return game.x_max();
    double lo = 0.0;
    double hi = game.x_max();
    while (hi - lo > kBisectionTolerance) {
        const double mid = 0.5 * (lo + hi);
        if (own_gradient_at(game, i, x, mid) > 0.0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Projected-gradient stationarity violation, max over players.
inline double ne_residual(const Game& game, std::span<const double> x) {
    double worst = 0.0;
    for (NodeId i = 0; i < game.size(); ++i) {
        const double g = own_gradient(game, i, x);
        double r;
        if (x[i] <= 0.0) {
            r = std::max(0.0, -g);
        } else if (x[i] >= game.x_max()) {
            r = std::max(0.0, g);
        } else {
            r = std::abs(g);
        }
        worst = std::max(worst, r);
    }
    return worst;
}

inline double br_gap(const Game& game, std::span<const double> x) {
    double worst = 0.0;
    for (NodeId i = 0; i < game.size(); ++i) {
        worst = std::max(worst, std::abs(x[i] - best_response(game, i, x)));
    }
    return worst;
}

namespace detail {

inline void require_profile(const Game& game, std::span<const double> x) {
    if (!is_valid_profile(game, x)) {
        throw InputError("starting profile must have one entry per player, each in [0, x_max]");
    }
}

inline NEReport finish_report(const Game& game, ActionProfile x, std::size_t iterations) {
    NEReport report;
    report.residual = ne_residual(game, x);
    report.br_gap = br_gap(game, x);
    report.iterations = iterations;
    report.profile = std::move(x);
    return report;
}

} // namespace detail

// Gauss-Seidel best-response sweeps in ascending player order. Running out of
// sweeps is reported through `converged`, not thrown.
inline NEReport best_response_iteration(const Game& game, std::span<const double> x0,
                                        const SolverOptions& options = {}) {
    detail::require_profile(game, x0);
    ActionProfile x(x0.begin(), x0.end());
    std::size_t sweeps = 0;
    bool settled = false;
    while (sweeps < options.max_sweeps && !settled) {
        ++sweeps;
        double change = 0.0;
        for (NodeId i = 0; i < game.size(); ++i) {
            const double next = best_response(game, i, x);
            change = std::max(change, std::abs(next - x[i]));
            x[i] = next;
        }
        settled = change < options.tol;
    }
    NEReport report = detail::finish_report(game, std::move(x), sweeps);
    report.converged = settled && report.residual <= options.residual_tol;
    return report;
}

// Simultaneous projected gradient steps x <- clamp(x - alpha(k) grad, 0, x_max),
// k = 1..iterations, every player seeing the true profile.
inline NEReport full_info_projected_gradient(const Game& game, std::span<const double> x0,
                                             const StepSchedule& schedule, std::size_t iterations,
                                             double residual_tol = SolverOptions{}.residual_tol) {
    detail::require_profile(game, x0);
    schedule.validate();
    ActionProfile x(x0.begin(), x0.end());
    std::vector<double> grad(game.size());
    for (std::size_t k = 1; k <= iterations; ++k) {
        for (NodeId i = 0; i < game.size(); ++i) grad[i] = own_gradient(game, i, x);
        const double alpha = schedule(k);
        for (NodeId i = 0; i < game.size(); ++i) {
            x[i] = std::clamp(x[i] - alpha * grad[i], 0.0, game.x_max());
        }
    }
    NEReport report = detail::finish_report(game, std::move(x), iterations);
    report.converged = report.residual <= residual_tol;
    return report;
}

} // namespace socialne
