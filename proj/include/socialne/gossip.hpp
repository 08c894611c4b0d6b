#pragma once

// Distributed NE seeking with partial-decision information.
//
// Every player keeps an estimate of the whole action profile. When a
// communication link {i, j} fires, both endpoints average their estimates of
// everyone else, then each takes a projected gradient step on its own cost
// evaluated at its own estimate vector, using a step size driven by its local
// update counter. Follower edges are used as two-way channels for the exchange;
// the follower direction only matters inside the cost model.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "socialne/digraph.hpp"
#include "socialne/errors.hpp"
#include "socialne/game.hpp"
#include "socialne/oracle.hpp"
#include "socialne/step_schedule.hpp"

namespace socialne {

enum class GossipMode { AsynchronousEdge, Synchronous };

struct GossipConfig {
    GossipMode mode = GossipMode::AsynchronousEdge;
    StepSchedule step{};
    std::size_t max_iterations = 200000;
    std::size_t record_every = 100;
    std::uint64_t seed = 42;
    std::optional<ActionProfile> reference;
    // Ablation hook: false replaces every gradient by zero, leaving pure averaging.
    bool gradient_enabled = true;

    void validate() const {
        step.validate();
        if (record_every == 0) throw InputError("record_every must be >= 1");
    }

    friend bool operator==(const GossipConfig&, const GossipConfig&) = default;
};

struct PlayerState {
    NodeId id = 0;
    double own_action = 0.0;
    std::vector<double> estimates; // estimates[id] mirrors own_action
    std::size_t update_count = 0;
};

struct TrajectoryRecord {
    std::size_t iteration = 0;
    ActionProfile actions;
    double consensus_error = 0.0;
    double residual = 0.0;
    std::optional<double> dist_to_reference;
};

// Records at iteration 0, every record_every iterations, and at the last
// iteration when it is not already on the stride.
struct Trajectory {
    std::vector<TrajectoryRecord> records;
};

// Called at every recorded iteration with the full player state.
using StateObserver = std::function<void(std::size_t iteration, std::span<const PlayerState>)>;

inline std::vector<PlayerState> init_states(const Game& game, std::span<const double> x0) {
    detail::require_profile(game, x0);
    std::vector<PlayerState> states(game.size());
    for (NodeId i = 0; i < game.size(); ++i) {
        states[i].id = i;
        states[i].own_action = x0[i];
        states[i].estimates.assign(x0.begin(), x0.end());
    }
    return states;
}

inline ActionProfile actions_of(std::span<const PlayerState> states) {
    ActionProfile x(states.size());
    for (const PlayerState& s : states) x[s.id] = s.own_action;
    return x;
}

// max_{i,m} |estimates_i[m] - own_action_m|
inline double consensus_error(std::span<const PlayerState> states) {
    double worst = 0.0;
    for (const PlayerState& s : states) {
        for (std::size_t m = 0; m < states.size(); ++m) {
            worst = std::max(worst, std::abs(s.estimates[m] - states[m].own_action));
        }
    }
    return worst;
}

namespace detail {

inline void local_step(PlayerState& s, const Game& game, const GossipConfig& config) {
    ++s.update_count;
    const double g = config.gradient_enabled ? own_gradient(game, s.id, s.estimates) : 0.0;
    s.own_action = std::clamp(s.own_action - config.step(s.update_count) * g, 0.0, game.x_max());
    s.estimates[s.id] = s.own_action;
}

inline bool communicates(const Game& game, NodeId i, NodeId j) {
    return i != j && i < game.size() && j < game.size() &&
           (game.follower().has_edge(i, j) || game.follower().has_edge(j, i));
}

} // namespace detail

// One activation of communication link {i, j}.
inline void gossip_step(std::vector<PlayerState>& states, NodeId i, NodeId j, const Game& game,
                        const GossipConfig& config) {
    if (!detail::communicates(game, i, j)) {
        throw InputError("players " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                         " share no follower edge");
    }
    PlayerState& a = states[i];
    PlayerState& b = states[j];
    for (std::size_t m = 0; m < states.size(); ++m) {
        const double avg = 0.5 * (a.estimates[m] + b.estimates[m]);
        if (m != i) a.estimates[m] = avg;
        if (m != j) b.estimates[m] = avg;
    }
    detail::local_step(a, game, config);
    detail::local_step(b, game, config);
}

// Metropolis weights on the undirected support of the follower graph:
// w_ij = 1 / (1 + max(deg_i, deg_j)) on links, w_ii = 1 - sum_j w_ij.
// Symmetric and doubly stochastic.
inline std::vector<std::vector<double>> metropolis_weights(const Digraph& g) {
    const std::size_t n = g.size();
    const auto links = undirected_support(g);
    std::vector<std::size_t> degree(n, 0);
    for (const auto& [u, v] : links) {
        ++degree[u];
        ++degree[v];
    }
    std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
    for (const auto& [u, v] : links) {
        const double weight = 1.0 / (1.0 + static_cast<double>(std::max(degree[u], degree[v])));
        w[u][v] = weight;
        w[v][u] = weight;
    }
    for (std::size_t i = 0; i < n; ++i) {
        double off = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) off += w[i][j];
        }
        w[i][i] = 1.0 - off;
    }
    return w;
}

// All players mix estimates with their neighbors at once, then all step.
// Every player's counter advances together, so it equals the round number.
inline void synchronous_round(std::vector<PlayerState>& states, const Game& game, const GossipConfig& config,
                              const std::vector<std::vector<double>>& weights) {
    const std::size_t n = states.size();
    std::vector<std::vector<double>> mixed(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const double w = weights[i][k];
            if (w == 0.0) continue;
            for (std::size_t m = 0; m < n; ++m) mixed[i][m] += w * states[k].estimates[m];
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        mixed[i][i] = states[i].own_action;
        states[i].estimates = std::move(mixed[i]);
    }
    for (PlayerState& s : states) detail::local_step(s, game, config);
}

inline void synchronous_round(std::vector<PlayerState>& states, const Game& game, const GossipConfig& config) {
    synchronous_round(states, game, config, metropolis_weights(game.follower()));
}

inline TrajectoryRecord make_record(std::size_t iteration, const Game& game, std::span<const PlayerState> states,
                                    const std::optional<ActionProfile>& reference) {
    TrajectoryRecord r;
    r.iteration = iteration;
    r.actions = actions_of(states);
    r.consensus_error = consensus_error(states);
    r.residual = ne_residual(game, r.actions);
    if (reference) {
        double d = 0.0;
        for (std::size_t i = 0; i < r.actions.size(); ++i) d = std::max(d, std::abs(r.actions[i] - (*reference)[i]));
        r.dist_to_reference = d;
    }
    return r;
}

// Deterministic for a fixed (game, x0, config). Asynchronous mode draws one
// link per iteration uniformly from the undirected support, using mt19937_64
// reduced modulo the link count, so runs are reproducible across platforms.
inline Trajectory run(const Game& game, std::span<const double> x0, const GossipConfig& config,
                      const StateObserver& observer = {}) {
    config.validate();
    if (config.reference && config.reference->size() != game.size()) {
        throw InputError("reference profile must have one entry per player");
    }
    auto states = init_states(game, x0);
    Trajectory trajectory;
    auto record = [&](std::size_t iteration) {
        trajectory.records.push_back(make_record(iteration, game, states, config.reference));
        if (observer) observer(iteration, states);
    };
    record(0);

    const std::size_t last = config.max_iterations;
    auto due = [&](std::size_t it) { return it % config.record_every == 0 || it == last; };

    if (config.mode == GossipMode::AsynchronousEdge) {
        const auto links = undirected_support(game.follower());
        if (links.empty() && last > 0) throw InputError("asynchronous gossip needs at least one link");
        std::mt19937_64 rng(config.seed);
        for (std::size_t it = 1; it <= last; ++it) {
            const auto& [i, j] = links[static_cast<std::size_t>(rng() % links.size())];
            gossip_step(states, i, j, game, config);
            if (due(it)) record(it);
        }
    } else {
        const auto weights = metropolis_weights(game.follower());
        for (std::size_t it = 1; it <= last; ++it) {
            synchronous_round(states, game, config, weights);
            if (due(it)) record(it);
        }
    }
    return trajectory;
}

} // namespace socialne
