#pragma once

// Numerical self-checks used by the CLI (`interference --check`, `validate`).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include "socialne/digraph.hpp"
#include "socialne/game.hpp"

namespace socialne {

// Edge j->i wherever bumping x_j by `delta` moves J_i by more than `threshold`.
// Meaningful at interior profiles where every x_i > 0 (at x_i = 0 the
// attention term of i vanishes identically).
inline Digraph dependence_graph(const Game& game, std::span<const double> x, double delta = 1e-3,
                                double threshold = 1e-9) {
    const std::size_t n = game.size();
    std::vector<double> probe(x.begin(), x.end());
    std::vector<Edge> edges;
    for (NodeId j = 0; j < n; ++j) {
        probe[j] = x[j] + delta;
        for (NodeId i = 0; i < n; ++i) {
            if (i == j) continue;
            if (std::abs(total_cost(game, i, probe) - total_cost(game, i, x)) > threshold) {
                edges.push_back({j, i});
            }
        }
        probe[j] = x[j];
    }
    return Digraph(n, std::move(edges));
}

// Central difference of J_i along x_i.
inline double own_gradient_fd(const Game& game, NodeId i, std::span<const double> x, double step = 1e-6) {
    std::vector<double> probe(x.begin(), x.end());
    probe[i] = x[i] + step;
    const double up = total_cost(game, i, probe);
    probe[i] = x[i] - step;
    const double down = total_cost(game, i, probe);
    return (up - down) / (2.0 * step);
}

// Uniform profile in [lo, hi] (clipped to x_max).
template <class Rng>
std::vector<double> random_interior_profile(const Game& game, Rng& rng, double lo = 0.5, double hi = 3.0) {
    hi = std::min(hi, game.x_max());
    lo = std::min(lo, hi);
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> x(game.size());
    for (double& v : x) v = dist(rng);
    return x;
}

} // namespace socialne
