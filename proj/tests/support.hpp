#pragma once

// Fixtures, random generators and independent oracles shared by the test
// binaries. The oracles here never call the code path they are used to check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <random>
#include <string>
#include <vector>

#include "socialne/socialne.hpp"

namespace socialne::testing {

// 1-based user label -> library index.
constexpr NodeId user(std::size_t label) { return label - 1; }

inline Edge edge(std::size_t from, std::size_t to) { return {user(from), user(to)}; }

inline std::string data_path(const std::string& name) { return std::string(SOCIALNE_DATA_DIR) + "/" + name; }

// Bundled follower topology and the published parameter block, built in code.
inline Digraph fig2_follower() {
    return Digraph(5, {edge(1, 3), edge(2, 1), edge(3, 2), edge(3, 5), edge(4, 1), edge(4, 3), edge(4, 5), edge(5, 4)});
}

inline Game fig2_game(double x_max = kDefaultActionBound) {
    const Digraph g = fig2_follower();
    GameParams p;
    p.h.assign(5, 2.0);
    p.L.assign(5, 1.5);
    p.x_max = x_max;
    for (const Edge& e : g.edges()) p.q[e] = 1.0;
    p.q[edge(4, 1)] = 1.75;
    p.q[edge(4, 5)] = 1.75;
    p.q[edge(3, 2)] = 2.0;
    p.q[edge(4, 3)] = 2.0;
    return Game(g, p);
}

inline const ActionProfile kPublishedEquilibrium{0.0, 0.0, 0.42, 2.24, 0.14};

// Equilibrium computed independently (plain-Python best-response sweeps with
// bisection to 1e-11), frozen here.
inline const ActionProfile kFig2Equilibrium{0.0, 0.0, 0.4181728230969384, 2.2440417238476584, 0.140625};

inline Digraph two_cycle() { return Digraph(2, {{0, 1}, {1, 0}}); }

inline Game uniform_game(const Digraph& g, double h = 2.0, double L = 1.5, double q = 1.0,
                         double x_max = kDefaultActionBound) {
    GameParams p;
    p.h.assign(g.size(), h);
    p.L.assign(g.size(), L);
    p.x_max = x_max;
    for (const Edge& e : g.edges()) p.q[e] = q;
    return Game(g, p);
}

// Reachability by BFS from every node.
inline bool strongly_connected_by_bfs(const Digraph& g) {
    const std::size_t n = g.size();
    for (NodeId s = 0; s < n; ++s) {
        std::vector<bool> seen(n, false);
        std::deque<NodeId> queue{s};
        seen[s] = true;
        while (!queue.empty()) {
            const NodeId v = queue.front();
            queue.pop_front();
            for (const Edge& e : g.edges()) {
                if (e.from == v && !seen[e.to]) {
                    seen[e.to] = true;
                    queue.push_back(e.to);
                }
            }
        }
        for (bool b : seen) {
            if (!b) return false;
        }
    }
    return true;
}

// Two-clause rule expanded by brute force over every (j, i, l).
inline std::vector<Edge> interference_by_enumeration(const Digraph& g) {
    std::vector<Edge> out;
    const std::size_t n = g.size();
    for (NodeId j = 0; j < n; ++j) {
        for (NodeId i = 0; i < n; ++i) {
            if (i == j) continue;
            bool dep = g.has_edge(j, i);
            for (NodeId l = 0; l < n && !dep; ++l) dep = g.has_edge(i, l) && g.has_edge(j, l);
            if (dep) out.push_back({j, i});
        }
    }
    return out;
}

// Finite-difference dependence: j->i iff bumping x_j by delta moves J_i.
inline std::vector<Edge> dependence_by_perturbation(const Game& game, const std::vector<double>& x, double delta,
                                                    double threshold) {
    std::vector<Edge> out;
    for (NodeId j = 0; j < game.size(); ++j) {
        std::vector<double> bumped = x;
        bumped[j] += delta;
        for (NodeId i = 0; i < game.size(); ++i) {
            if (i != j && std::abs(total_cost(game, i, bumped) - total_cost(game, i, x)) > threshold) {
                out.push_back({j, i});
            }
        }
    }
    return out;
}

inline double central_difference(const Game& game, NodeId i, std::vector<double> x, double step) {
    const double base = x[i];
    x[i] = base + step;
    const double up = total_cost(game, i, x);
    x[i] = base - step;
    const double down = total_cost(game, i, x);
    return (up - down) / (2.0 * step);
}

// argmin of J_i over [0, x_max]: grid at 1e-3, then 1e-5 around the best cell.
inline double best_response_by_grid(const Game& game, NodeId i, std::vector<double> x) {
    auto cost = [&](double v) {
        x[i] = v;
        return total_cost(game, i, x);
    };
    auto scan = [&](double lo, double hi, double step) {
        double best = lo;
        double best_cost = cost(lo);
        const auto steps = static_cast<std::size_t>(std::llround((hi - lo) / step));
        for (std::size_t k = 1; k <= steps; ++k) {
            const double v = std::min(hi, lo + static_cast<double>(k) * step);
            const double c = cost(v);
            if (c < best_cost) {
                best_cost = c;
                best = v;
            }
        }
        return best;
    };
    const double coarse = scan(0.0, game.x_max(), 1e-3);
    return scan(std::max(0.0, coarse - 2e-3), std::min(game.x_max(), coarse + 2e-3), 1e-5);
}

// Random digraph on n nodes that is strongly connected: a random Hamiltonian
// cycle plus extra edges with probability p.
template <class Rng>
Digraph random_strongly_connected(Rng& rng, std::size_t n, double p = 0.3) {
    std::vector<NodeId> perm(n);
    for (std::size_t k = 0; k < n; ++k) perm[k] = k;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Edge> edges;
    for (std::size_t k = 0; k < n; ++k) edges.push_back({perm[k], perm[(k + 1) % n]});
    std::bernoulli_distribution extra(p);
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = 0; v < n; ++v) {
            if (u == v) continue;
            const Edge e{u, v};
            if (std::find(edges.begin(), edges.end(), e) == edges.end() && extra(rng)) edges.push_back(e);
        }
    }
    return Digraph(n, std::move(edges));
}

// Arbitrary digraph (may be disconnected).
template <class Rng>
Digraph random_digraph(Rng& rng, std::size_t n, double p) {
    std::bernoulli_distribution coin(p);
    std::vector<Edge> edges;
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = 0; v < n; ++v) {
            if (u != v && coin(rng)) edges.push_back({u, v});
        }
    }
    return Digraph(n, std::move(edges));
}

template <class Rng>
Game random_game(Rng& rng, const Digraph& g, double x_max = kDefaultActionBound) {
    std::uniform_real_distribution<double> h(0.5, 3.0), L(0.5, 3.0), q(0.2, 3.0);
    GameParams p;
    for (std::size_t i = 0; i < g.size(); ++i) {
        p.h.push_back(h(rng));
        p.L.push_back(L(rng));
    }
    for (const Edge& e : g.edges()) p.q[e] = q(rng);
    p.x_max = x_max;
    return Game(g, p);
}

template <class Rng>
std::vector<double> uniform_profile(Rng& rng, std::size_t n, double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    std::vector<double> x(n);
    for (double& v : x) v = d(rng);
    return x;
}

} // namespace socialne::testing
