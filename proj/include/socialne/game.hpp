#pragma once

// The information-production game on a follower graph.
//
// Player i posts x_i units of information and pays h_i per unit. Follower l
// weighs what reaches its feed by interest q_jl, giving the feed mass
//
//     sigma_l(x) = sum_{j -> l} q_jl x_j,
//
// and enjoys L_l sqrt(sigma_l). Player i's cost is
//
//     J_i(x) = h_i x_i - L_i sqrt(sigma_i(x))
//                      - sum_{l : i -> l} L_l (sqrt(sigma_l(x)) - sqrt(sigma_l^{-i}(x)))
//
// where sigma_l^{-i} omits i's term. The last sum is the attention i draws:
// how much its followers' utility would drop without its posts.

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "socialne/digraph.hpp"
#include "socialne/errors.hpp"

namespace socialne {

using ActionProfile = std::vector<double>;

inline constexpr double kDefaultActionBound = 10.0;

// Floor on feed mass inside the gradient. d/dx sqrt(x) is unbounded at 0.
inline constexpr double kFeedMassGuard = 1e-12;

struct GameParams {
    std::vector<double> h;         // production cost per unit, > 0
    std::vector<double> L;         // utility scale, > 0
    std::map<Edge, double> q;      // interest q_jl on each follower edge j->l, > 0
    double x_max = kDefaultActionBound;
};

// A weighted follower link seen from one side.
struct Link {
    NodeId node = 0;
    double q = 0.0;
};

class Game {
public:
    // Validates parameters against the follower graph and derives the
    // interference graph. Throws InputError.
    Game(Digraph follower, GameParams params)
        : follower_(std::move(follower)), params_(std::move(params)) {
        const std::size_t n = follower_.size();
        if (n == 0) throw InputError("game needs at least one player");
        if (params_.h.size() != n) throw InputError("h: expected " + std::to_string(n) + " values");
        if (params_.L.size() != n) throw InputError("L: expected " + std::to_string(n) + " values");
        for (std::size_t i = 0; i < n; ++i) {
            if (!(params_.h[i] > 0.0)) throw InputError("h[" + std::to_string(i + 1) + "] must be > 0");
            if (!(params_.L[i] > 0.0)) throw InputError("L[" + std::to_string(i + 1) + "] must be > 0");
        }
        if (!(params_.x_max > 0.0) || !std::isfinite(params_.x_max)) {
            throw InputError("x_max must be a positive finite number");
        }
        for (const auto& [e, w] : params_.q) {
            if (!follower_.has_edge(e.from, e.to)) {
                throw InputError("q given on non-edge " + std::to_string(e.from + 1) + "->" +
                                 std::to_string(e.to + 1));
            }
            if (!(w > 0.0)) {
                throw InputError("q[" + std::to_string(e.from + 1) + "->" + std::to_string(e.to + 1) +
                                 "] must be > 0");
            }
        }
        if (params_.q.size() != follower_.edge_count()) {
            throw InputError("q must be given on every follower edge");
        }
        if (!is_strongly_connected(follower_)) throw InputError("G_C not strongly connected");

        interference_ = build_interference(follower_);
        feeders_.assign(n, {});
        audience_.assign(n, {});
        for (const auto& [e, w] : params_.q) {
            feeders_[e.to].push_back({e.from, w});
            audience_[e.from].push_back({e.to, w});
        }
    }

    std::size_t size() const noexcept { return follower_.size(); }
    const Digraph& follower() const noexcept { return follower_; }
    const Digraph& interference() const noexcept { return interference_; }
    const GameParams& params() const noexcept { return params_; }

    double h(NodeId i) const { return params_.h.at(i); }
    double L(NodeId i) const { return params_.L.at(i); }
    double x_max() const noexcept { return params_.x_max; }

    // Off-edge lookups are errors, not zero.
    double q(NodeId producer, NodeId follower) const {
        const auto it = params_.q.find(Edge{producer, follower});
        if (it == params_.q.end()) {
            throw InputError("no follower edge " + std::to_string(producer + 1) + "->" +
                             std::to_string(follower + 1));
        }
        return it->second;
    }

    // Producers in l's feed with their weights q_jl, ascending by producer.
    std::span<const Link> feeders(NodeId l) const { return feeders_.at(l); }

    // Followers of i with weights q_il, ascending by follower.
    std::span<const Link> audience(NodeId i) const { return audience_.at(i); }

private:
    Digraph follower_;
    Digraph interference_;
    GameParams params_;
    std::vector<std::vector<Link>> feeders_;
    std::vector<std::vector<Link>> audience_;
};

inline bool is_valid_profile(const Game& game, std::span<const double> x) {
    if (x.size() != game.size()) return false;
    for (double v : x) {
        if (!(v >= 0.0 && v <= game.x_max())) return false;
    }
    return true;
}

inline double feed_mass(const Game& game, NodeId l, std::span<const double> x) {
    assert(x.size() == game.size());
    double s = 0.0;
    for (const Link& f : game.feeders(l)) s += f.q * x[f.node];
    return s;
}

// sigma_l with producer `excluded` left out.
inline double feed_mass_without(const Game& game, NodeId l, NodeId excluded, std::span<const double> x) {
    assert(x.size() == game.size());
    double s = 0.0;
    for (const Link& f : game.feeders(l)) {
        if (f.node != excluded) s += f.q * x[f.node];
    }
    return s;
}

inline double production_cost(const Game& game, NodeId i, double x_i) { return game.h(i) * x_i; }

inline double info_utility(const Game& game, NodeId i, std::span<const double> x) {
    return game.L(i) * std::sqrt(feed_mass(game, i, x));
}

inline double attention_utility(const Game& game, NodeId i, std::span<const double> x) {
    double total = 0.0;
    for (const Link& l : game.audience(i)) {
        total += game.L(l.node) *
                 (std::sqrt(feed_mass(game, l.node, x)) - std::sqrt(feed_mass_without(game, l.node, i, x)));
    }
    return total;
}

inline double total_cost(const Game& game, NodeId i, std::span<const double> x) {
    return production_cost(game, i, x[i]) - info_utility(game, i, x) - attention_utility(game, i, x);
}

// dJ_i/dx_i with x_i replaced by `own`; the rest of x is read as given.
// i never feeds itself, so only the attention term depends on x_i.
inline double own_gradient_at(const Game& game, NodeId i, std::span<const double> x, double own) {
    double g = game.h(i);
    for (const Link& l : game.audience(i)) {
        const double sigma = feed_mass_without(game, l.node, i, x) + l.q * own;
        g -= game.L(l.node) * l.q / (2.0 * std::sqrt(std::max(sigma, kFeedMassGuard)));
    }
    return g;
}

inline double own_gradient(const Game& game, NodeId i, std::span<const double> x) {
    double g = game.h(i);
    for (const Link& l : game.audience(i)) {
        const double sigma = feed_mass(game, l.node, x);
        g -= game.L(l.node) * l.q / (2.0 * std::sqrt(std::max(sigma, kFeedMassGuard)));
    }
    return g;
}

} // namespace socialne
