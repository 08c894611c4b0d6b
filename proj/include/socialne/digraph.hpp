#pragma once

// Directed graphs over players: the follower graph (edge u->v: v follows u and
// sees u's posts) and the interference graph derived from it.
//
// Node ids are 0-based inside the library. Every external format (edge lists,
// scenario files, CLI output) is 1-based; conversion happens at the I/O layer.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "socialne/errors.hpp"

namespace socialne {

using NodeId = std::size_t;

struct Edge {
    NodeId from = 0;
    NodeId to = 0;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

class Digraph {
public:
    Digraph() = default;

    // Throws InputError on self-loops, duplicates or out-of-range endpoints.
    Digraph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
        std::sort(edges_.begin(), edges_.end());
        for (std::size_t k = 0; k < edges_.size(); ++k) {
            const Edge& e = edges_[k];
            if (e.from >= n_ || e.to >= n_) {
                throw InputError("edge (" + std::to_string(e.from + 1) + "," +
                                 std::to_string(e.to + 1) + ") has an endpoint outside 1.." +
                                 std::to_string(n_));
            }
            if (e.from == e.to) {
                throw InputError("self-loop at node " + std::to_string(e.from + 1));
            }
            if (k > 0 && edges_[k - 1] == e) {
                throw InputError("duplicate edge (" + std::to_string(e.from + 1) + "," +
                                 std::to_string(e.to + 1) + ")");
            }
        }
        in_.assign(n_, {});
        out_.assign(n_, {});
        for (const Edge& e : edges_) {
            out_[e.from].push_back(e.to);
            in_[e.to].push_back(e.from);
        }
        for (auto& v : in_) std::sort(v.begin(), v.end());
    }

    std::size_t size() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    // Canonical (lexicographically sorted) edge order.
    std::span<const Edge> edges() const noexcept { return edges_; }

    bool has_edge(NodeId from, NodeId to) const {
        return std::binary_search(edges_.begin(), edges_.end(), Edge{from, to});
    }

    // { j : j->i }: the users i follows.
    std::span<const NodeId> in_neighbors(NodeId i) const {
        check(i);
        return in_[i];
    }

    // { j : i->j }: the followers of i.
    std::span<const NodeId> out_neighbors(NodeId i) const {
        check(i);
        return out_[i];
    }

    friend bool operator==(const Digraph& a, const Digraph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    void check(NodeId i) const {
        if (i >= n_) {
            throw InputError("node " + std::to_string(i + 1) + " outside 1.." +
                             std::to_string(n_));
        }
    }

    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<NodeId>> in_;
    std::vector<std::vector<NodeId>> out_;
};

// Tarjan's algorithm, iterative. Returns the component index of every node;
// indices are assigned in reverse topological order of the condensation.
inline std::vector<std::size_t> strongly_connected_components(const Digraph& g) {
    constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
    const std::size_t n = g.size();
    std::vector<std::size_t> index(n, unvisited), low(n, 0), comp(n, unvisited);
    std::vector<bool> on_stack(n, false);
    std::vector<NodeId> stack;
    std::vector<std::pair<NodeId, std::size_t>> call; // (node, next out-neighbor slot)
    std::size_t next_index = 0;
    std::size_t next_comp = 0;

    for (NodeId root = 0; root < n; ++root) {
        if (index[root] != unvisited) continue;
        call.emplace_back(root, 0);
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;

        while (!call.empty()) {
            auto& [v, slot] = call.back();
            const auto succ = g.out_neighbors(v);
            if (slot < succ.size()) {
                const NodeId w = succ[slot++];
                if (index[w] == unvisited) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            const NodeId done = v;
            if (low[done] == index[done]) {
                NodeId w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = next_comp;
                } while (w != done);
                ++next_comp;
            }
            call.pop_back();
            if (!call.empty()) {
                NodeId parent = call.back().first;
                low[parent] = std::min(low[parent], low[done]);
            }
        }
    }
    return comp;
}

inline bool is_strongly_connected(const Digraph& g) {
    if (g.size() <= 1) return true;
    const auto comp = strongly_connected_components(g);
    return std::all_of(comp.begin(), comp.end(), [&](std::size_t c) { return c == comp[0]; });
}

// Interference graph: j->i iff x_j appears in J_i, i.e. i follows j, or i and j
// share a follower l (both feed l, so x_j moves l's attention share of i).
// No self-loops.
inline Digraph build_interference(const Digraph& follower) {
    const std::size_t n = follower.size();
    std::vector<Edge> edges(follower.edges().begin(), follower.edges().end());
    for (NodeId l = 0; l < n; ++l) {
        const auto feeders = follower.in_neighbors(l);
        for (NodeId i : feeders) {
            for (NodeId j : feeders) {
                if (i != j) edges.push_back({j, i});
            }
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return Digraph(n, std::move(edges));
}

// Edge set containment, a ⊆ b.
inline bool is_subgraph(const Digraph& a, const Digraph& b) {
    if (a.size() != b.size()) return false;
    return std::includes(b.edges().begin(), b.edges().end(), a.edges().begin(), a.edges().end());
}

// Communication pairs {u,v} (u < v) obtained by forgetting edge direction.
inline std::vector<std::pair<NodeId, NodeId>> undirected_support(const Digraph& g) {
    std::vector<std::pair<NodeId, NodeId>> pairs;
    pairs.reserve(g.edge_count());
    for (const Edge& e : g.edges()) pairs.emplace_back(std::min(e.from, e.to), std::max(e.from, e.to));
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    return pairs;
}

} // namespace socialne
