#pragma once

// Recovering a follower graph from partial structural knowledge plus a
// published equilibrium.
//
// Some out-edges are known, and each node's out-degree is pinned. Every way of
// filling the missing out-edges is enumerated; a completion survives when its
// graph is strongly connected and its equilibrium, rounded to the published
// precision, equals the target profile.
//
// JSON form (1-based ids):
//
//   {
//     "n": 5,
//     "known_out": {"4": [1, 3, 5], "3": [2, 5]},
//     "out_degree": {"1": 1, "2": 1, "3": 2, "4": 3, "5": 1},
//     "h": [...], "L": [...], "default_q": 1, "q": [[4, 1, 1.75], ...],
//     "x_max": 10,
//     "target": [0, 0, 0.42, 2.24, 0.14],
//     "decimals": 2
//   }
//
// Nodes without an out_degree entry keep exactly their known out-edges.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "socialne/digraph.hpp"
#include "socialne/errors.hpp"
#include "socialne/game.hpp"
#include "socialne/oracle.hpp"
#include "socialne/scenario.hpp"

namespace socialne {

struct ReconstructionSpec {
    std::size_t n = 0;
    std::vector<std::vector<NodeId>> known_out;            // per node
    std::vector<std::optional<std::size_t>> out_degree;    // per node; nullopt = known set is complete
    std::vector<double> h;
    std::vector<double> L;
    double default_q = 1.0;
    std::map<Edge, double> q;                              // overrides, applied when the edge is present
    double x_max = kDefaultActionBound;
    ActionProfile target;
    int decimals = 2;
    SolverOptions solver;
};

struct ReconstructionCandidate {
    Digraph follower;
    std::vector<Edge> added;   // edges beyond the known ones
    NEReport equilibrium;
};

struct ReconstructionResult {
    std::size_t completions = 0;        // all degree-respecting completions
    std::size_t strongly_connected = 0; // of which strongly connected
    std::vector<ReconstructionCandidate> survivors;
    std::vector<Edge> forced;           // added edges common to every survivor
};

inline void validate(const ReconstructionSpec& spec) {
    const std::size_t n = spec.n;
    if (n == 0) throw LoadError("n", "must be >= 1");
    if (spec.known_out.size() != n || spec.out_degree.size() != n) throw LoadError("known_out", "expected n entries");
    if (spec.h.size() != n) throw LoadError("h", "expected " + std::to_string(n) + " entries");
    if (spec.L.size() != n) throw LoadError("L", "expected " + std::to_string(n) + " entries");
    if (spec.target.size() != n) throw LoadError("target", "expected " + std::to_string(n) + " entries");
    if (spec.decimals < 0 || spec.decimals > 12) throw LoadError("decimals", "must lie in 0..12");
    for (NodeId u = 0; u < n; ++u) {
        const auto& known = spec.known_out[u];
        for (NodeId v : known) {
            if (v >= n || v == u) throw LoadError("known_out", "bad out-edge of node " + std::to_string(u + 1));
        }
        if (spec.out_degree[u]) {
            if (*spec.out_degree[u] < known.size()) {
                throw LoadError("out_degree", "node " + std::to_string(u + 1) + " already has more known out-edges");
            }
            if (*spec.out_degree[u] > n - 1) {
                throw LoadError("out_degree", "node " + std::to_string(u + 1) + " cannot have that many followers");
            }
        }
    }
    for (const auto& [e, w] : spec.q) {
        if (e.from >= n || e.to >= n || e.from == e.to) throw LoadError("q", "bad edge");
        if (!(w > 0.0)) throw LoadError("q", "values must be > 0");
    }
}

namespace detail {

// All k-subsets of `pool`, each sorted.
inline void subsets(const std::vector<NodeId>& pool, std::size_t k, std::size_t start, std::vector<NodeId>& cur,
                    std::vector<std::vector<NodeId>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t p = start; p < pool.size(); ++p) {
        cur.push_back(pool[p]);
        subsets(pool, k, p + 1, cur, out);
        cur.pop_back();
    }
}

inline bool rounds_to(std::span<const double> x, std::span<const double> target, int decimals) {
    const double scale = std::pow(10.0, decimals);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (std::llround(x[i] * scale) != std::llround(target[i] * scale)) return false;
    }
    return true;
}

} // namespace detail

inline ReconstructionResult reconstruct(const ReconstructionSpec& spec) {
    validate(spec);
    const std::size_t n = spec.n;

    // Per node, the list of ways to complete its out-set.
    std::vector<std::vector<std::vector<NodeId>>> options(n);
    for (NodeId u = 0; u < n; ++u) {
        const std::set<NodeId> known(spec.known_out[u].begin(), spec.known_out[u].end());
        const std::size_t missing = spec.out_degree[u] ? *spec.out_degree[u] - known.size() : 0;
        std::vector<NodeId> pool;
        for (NodeId v = 0; v < n; ++v) {
            if (v != u && !known.contains(v)) pool.push_back(v);
        }
        std::vector<NodeId> cur;
        detail::subsets(pool, missing, 0, cur, options[u]);
    }

    ReconstructionResult result;
    const ActionProfile start(n, std::min(1.0, spec.x_max));
    std::vector<std::size_t> pick(n, 0);
    // Odometer over the per-node choices, last node fastest.
    auto advance = [&] {
        for (std::size_t u = n; u-- > 0;) {
            if (++pick[u] < options[u].size()) return true;
            pick[u] = 0;
        }
        return false;
    };
    const bool any = std::all_of(options.begin(), options.end(), [](const auto& o) { return !o.empty(); });

    if (any) {
        do {
            std::vector<Edge> edges;
            std::vector<Edge> added;
            for (NodeId u = 0; u < n; ++u) {
                for (NodeId v : spec.known_out[u]) edges.push_back({u, v});
                for (NodeId v : options[u][pick[u]]) {
                    edges.push_back({u, v});
                    added.push_back({u, v});
                }
            }
            ++result.completions;
            Digraph g(n, edges);
            if (!is_strongly_connected(g)) continue;
            ++result.strongly_connected;

            GameParams params{spec.h, spec.L, {}, spec.x_max};
            for (const Edge& e : g.edges()) {
                const auto it = spec.q.find(e);
                params.q[e] = it != spec.q.end() ? it->second : spec.default_q;
            }
            const Game game(g, std::move(params));
            NEReport ne = best_response_iteration(game, start, spec.solver);
            if (ne.converged && detail::rounds_to(ne.profile, spec.target, spec.decimals)) {
                std::sort(added.begin(), added.end());
                result.survivors.push_back({std::move(g), std::move(added), std::move(ne)});
            }
        } while (advance());
    }

    if (!result.survivors.empty()) {
        result.forced = result.survivors.front().added;
        for (const auto& c : result.survivors) {
            std::vector<Edge> common;
            std::set_intersection(result.forced.begin(), result.forced.end(), c.added.begin(), c.added.end(),
                                  std::back_inserter(common));
            result.forced = std::move(common);
        }
    }
    return result;
}

inline ReconstructionSpec parse_reconstruction(const Json& j) {
    if (!j.is_object()) throw LoadError("<root>", "expected a JSON object");
    ReconstructionSpec spec;
    spec.n = detail::as_count(detail::require(j, "n"), "n");
    if (spec.n == 0) throw LoadError("n", "must be >= 1");
    const std::size_t n = spec.n;
    spec.known_out.assign(n, {});
    spec.out_degree.assign(n, std::nullopt);

    auto node_key = [n](const std::string& key, const std::string& field) -> NodeId {
        std::size_t id = 0;
        try {
            std::size_t used = 0;
            id = std::stoul(key, &used);
            if (used != key.size()) throw std::invalid_argument(key);
        } catch (const std::exception&) {
            throw LoadError(field, "key \"" + key + "\" is not a node id");
        }
        if (id < 1 || id > n) throw LoadError(field, "node id outside 1.." + std::to_string(n));
        return id - 1;
    };

    if (j.contains("known_out")) {
        const Json& known = j["known_out"];
        if (!known.is_object()) throw LoadError("known_out", "expected an object keyed by node id");
        for (const auto& [key, value] : known.items()) {
            const std::string field = "known_out." + key;
            const NodeId u = node_key(key, "known_out");
            if (!value.is_array()) throw LoadError(field, "expected an array of node ids");
            for (const Json& v : value) spec.known_out[u].push_back(detail::as_node(v, n, field));
            std::sort(spec.known_out[u].begin(), spec.known_out[u].end());
            if (std::adjacent_find(spec.known_out[u].begin(), spec.known_out[u].end()) != spec.known_out[u].end()) {
                throw LoadError(field, "duplicate follower");
            }
        }
    }
    if (j.contains("out_degree")) {
        const Json& deg = j["out_degree"];
        if (!deg.is_object()) throw LoadError("out_degree", "expected an object keyed by node id");
        for (const auto& [key, value] : deg.items()) {
            spec.out_degree[node_key(key, "out_degree")] = detail::as_count(value, "out_degree." + key);
        }
    }
    spec.h = detail::as_numbers(detail::require(j, "h"), "h");
    spec.L = detail::as_numbers(detail::require(j, "L"), "L");
    if (j.contains("default_q")) spec.default_q = detail::as_number(j["default_q"], "default_q");
    if (j.contains("q")) {
        const Json& q = j["q"];
        if (!q.is_array()) throw LoadError("q", "expected an array of [from, to, q]");
        for (std::size_t k = 0; k < q.size(); ++k) {
            const std::string field = "q[" + std::to_string(k + 1) + "]";
            if (!q[k].is_array() || q[k].size() != 3) throw LoadError(field, "expected [from, to, q]");
            spec.q[Edge{detail::as_node(q[k][0], n, field), detail::as_node(q[k][1], n, field)}] =
                detail::as_number(q[k][2], field);
        }
    }
    if (j.contains("x_max")) spec.x_max = detail::as_number(j["x_max"], "x_max");
    spec.target = detail::as_numbers(detail::require(j, "target"), "target");
    if (j.contains("decimals")) spec.decimals = static_cast<int>(detail::as_count(j["decimals"], "decimals"));
    validate(spec);
    return spec;
}

} // namespace socialne
