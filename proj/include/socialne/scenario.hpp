#pragma once

// Scenario files (JSON). Node ids are 1-based on disk.
//
//   {
//     "n": 5,
//     "h": [2, 2, 2, 2, 2],
//     "L": [1.5, 1.5, 1.5, 1.5, 1.5],
//     "default_q": 1.0,
//     "edges": [[4, 1], [4, 3, 2.0], ...],       // [from, to] or [from, to, q]
//     "q": [[4, 1, 1.75], ...],                  // optional overrides, edges only
//     "x_max": 10,
//     "solver": {"tol": 1e-10, "residual_tol": 1e-8, "max_sweeps": 10000},
//     "gossip": {"mode": "async", "step_a": 1, "step_b": 10, "step_tau": 0.7,
//                "max_iterations": 200000, "record_every": 100, "seed": 42},
//     "reference": [0, 0, 0.42, 2.24, 0.14]      // optional
//   }

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "socialne/diagnostics.hpp"
#include "socialne/digraph.hpp"
#include "socialne/errors.hpp"
#include "socialne/game.hpp"
#include "socialne/gossip.hpp"
#include "socialne/oracle.hpp"

namespace socialne {

using Json = nlohmann::json;

struct ScenarioEdge {
    Edge edge;
    std::optional<double> q;

    friend bool operator==(const ScenarioEdge&, const ScenarioEdge&) = default;
};

struct Scenario {
    std::size_t n = 0;
    std::vector<double> h;
    std::vector<double> L;
    double default_q = 1.0;
    std::vector<ScenarioEdge> edges;
    double x_max = kDefaultActionBound;
    SolverOptions solver;
    GossipConfig gossip;
    std::optional<ActionProfile> reference;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

namespace detail {

inline const Json& require(const Json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end()) throw LoadError(key, "missing");
    return *it;
}

inline double as_number(const Json& j, const std::string& field) {
    if (!j.is_number()) throw LoadError(field, "expected a number");
    return j.get<double>();
}

inline std::uint64_t as_count(const Json& j, const std::string& field) {
    if (!j.is_number_unsigned()) throw LoadError(field, "expected a non-negative integer");
    return j.get<std::uint64_t>();
}

inline std::vector<double> as_numbers(const Json& j, const std::string& field) {
    if (!j.is_array()) throw LoadError(field, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t k = 0; k < j.size(); ++k) {
        out.push_back(as_number(j[k], field + "[" + std::to_string(k + 1) + "]"));
    }
    return out;
}

inline NodeId as_node(const Json& j, std::size_t n, const std::string& field) {
    const auto id = as_count(j, field);
    if (id < 1 || id > n) throw LoadError(field, "node id outside 1.." + std::to_string(n));
    return static_cast<NodeId>(id - 1);
}

inline Json edge_json(const Edge& e) { return Json::array({e.from + 1, e.to + 1}); }

} // namespace detail

inline const char* to_string(GossipMode mode) {
    return mode == GossipMode::Synchronous ? "sync" : "async";
}

inline GossipMode parse_gossip_mode(const std::string& s) {
    if (s == "async") return GossipMode::AsynchronousEdge;
    if (s == "sync") return GossipMode::Synchronous;
    throw LoadError("gossip.mode", "expected \"async\" or \"sync\", got \"" + s + "\"");
}

// Structural parse: types, arity, id ranges, q overrides landing on declared
// edges. Value constraints (positivity, connectivity, ...) are left to
// check_scenario so `validate` can report them one by one.
inline Scenario parse_scenario(const Json& j) {
    if (!j.is_object()) throw LoadError("<root>", "expected a JSON object");
    Scenario s;
    s.n = detail::as_count(detail::require(j, "n"), "n");
    if (s.n == 0) throw LoadError("n", "must be >= 1");
    s.h = detail::as_numbers(detail::require(j, "h"), "h");
    s.L = detail::as_numbers(detail::require(j, "L"), "L");
    if (j.contains("default_q")) s.default_q = detail::as_number(j["default_q"], "default_q");
    if (j.contains("x_max")) s.x_max = detail::as_number(j["x_max"], "x_max");

    const Json& edges = detail::require(j, "edges");
    if (!edges.is_array()) throw LoadError("edges", "expected an array of [from, to(, q)]");
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const std::string field = "edges[" + std::to_string(k + 1) + "]";
        const Json& e = edges[k];
        if (!e.is_array() || e.size() < 2 || e.size() > 3) throw LoadError(field, "expected [from, to(, q)]");
        ScenarioEdge se;
        se.edge = {detail::as_node(e[0], s.n, field), detail::as_node(e[1], s.n, field)};
        if (e.size() == 3) se.q = detail::as_number(e[2], field);
        s.edges.push_back(se);
    }

    if (j.contains("q")) {
        const Json& q = j["q"];
        if (!q.is_array()) throw LoadError("q", "expected an array of [from, to, q]");
        for (std::size_t k = 0; k < q.size(); ++k) {
            const std::string field = "q[" + std::to_string(k + 1) + "]";
            if (!q[k].is_array() || q[k].size() != 3) throw LoadError(field, "expected [from, to, q]");
            const Edge e{detail::as_node(q[k][0], s.n, field), detail::as_node(q[k][1], s.n, field)};
            const double value = detail::as_number(q[k][2], field);
            auto it = std::find_if(s.edges.begin(), s.edges.end(), [&](const ScenarioEdge& se) { return se.edge == e; });
            if (it == s.edges.end()) {
                throw LoadError(field, "q on non-edge " + std::to_string(e.from + 1) + "->" + std::to_string(e.to + 1));
            }
            it->q = value;
        }
    }

    if (j.contains("solver")) {
        const Json& sv = j["solver"];
        if (!sv.is_object()) throw LoadError("solver", "expected an object");
        if (sv.contains("tol")) s.solver.tol = detail::as_number(sv["tol"], "solver.tol");
        if (sv.contains("residual_tol")) s.solver.residual_tol = detail::as_number(sv["residual_tol"], "solver.residual_tol");
        if (sv.contains("max_sweeps")) s.solver.max_sweeps = detail::as_count(sv["max_sweeps"], "solver.max_sweeps");
    }

    if (j.contains("gossip")) {
        const Json& g = j["gossip"];
        if (!g.is_object()) throw LoadError("gossip", "expected an object");
        if (g.contains("mode")) {
            if (!g["mode"].is_string()) throw LoadError("gossip.mode", "expected a string");
            s.gossip.mode = parse_gossip_mode(g["mode"].get<std::string>());
        }
        if (g.contains("step_a")) s.gossip.step.a = detail::as_number(g["step_a"], "gossip.step_a");
        if (g.contains("step_b")) s.gossip.step.b = detail::as_number(g["step_b"], "gossip.step_b");
        if (g.contains("step_tau")) s.gossip.step.tau = detail::as_number(g["step_tau"], "gossip.step_tau");
        if (g.contains("max_iterations")) {
            s.gossip.max_iterations = detail::as_count(g["max_iterations"], "gossip.max_iterations");
        }
        if (g.contains("record_every")) s.gossip.record_every = detail::as_count(g["record_every"], "gossip.record_every");
        if (g.contains("seed")) s.gossip.seed = detail::as_count(g["seed"], "gossip.seed");
    }

    if (j.contains("reference")) s.reference = detail::as_numbers(j["reference"], "reference");
    return s;
}

inline Json to_json(const Scenario& s) {
    Json edges = Json::array();
    for (const ScenarioEdge& se : s.edges) {
        Json e = detail::edge_json(se.edge);
        if (se.q) e.push_back(*se.q);
        edges.push_back(std::move(e));
    }
    Json j = {
        {"n", s.n},
        {"h", s.h},
        {"L", s.L},
        {"default_q", s.default_q},
        {"edges", std::move(edges)},
        {"x_max", s.x_max},
        {"solver", {{"tol", s.solver.tol}, {"residual_tol", s.solver.residual_tol}, {"max_sweeps", s.solver.max_sweeps}}},
        {"gossip",
         {{"mode", to_string(s.gossip.mode)},
          {"step_a", s.gossip.step.a},
          {"step_b", s.gossip.step.b},
          {"step_tau", s.gossip.step.tau},
          {"max_iterations", s.gossip.max_iterations},
          {"record_every", s.gossip.record_every},
          {"seed", s.gossip.seed}}},
    };
    if (s.reference) j["reference"] = *s.reference;
    return j;
}

inline Digraph follower_graph(const Scenario& s) {
    std::vector<Edge> edges;
    edges.reserve(s.edges.size());
    for (const ScenarioEdge& se : s.edges) edges.push_back(se.edge);
    return Digraph(s.n, std::move(edges));
}

inline GameParams game_params(const Scenario& s) {
    GameParams p;
    p.h = s.h;
    p.L = s.L;
    p.x_max = s.x_max;
    for (const ScenarioEdge& se : s.edges) p.q[se.edge] = se.q.value_or(s.default_q);
    return p;
}

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

// Every structural and numerical check `validate` reports. Checks that need a
// constructed game are marked failed when an earlier check already failed.
inline std::vector<Check> check_scenario(const Scenario& s) {
    std::vector<Check> checks;
    auto add = [&](std::string name, bool ok, std::string detail = {}) {
        checks.push_back({std::move(name), ok, std::move(detail)});
        return ok;
    };

    {
        std::string why;
        if (s.h.size() != s.n) why = "h has " + std::to_string(s.h.size()) + " entries";
        else if (s.L.size() != s.n) why = "L has " + std::to_string(s.L.size()) + " entries";
        else if (s.reference && s.reference->size() != s.n) why = "reference has " + std::to_string(s.reference->size()) + " entries";
        add("list lengths equal n", why.empty(), why);
    }
    {
        std::string why;
        for (std::size_t i = 0; i < s.h.size() && why.empty(); ++i) {
            if (!(s.h[i] > 0.0)) why = "h[" + std::to_string(i + 1) + "] must be > 0";
        }
        for (std::size_t i = 0; i < s.L.size() && why.empty(); ++i) {
            if (!(s.L[i] > 0.0)) why = "L[" + std::to_string(i + 1) + "] must be > 0";
        }
        if (why.empty() && !(s.default_q > 0.0)) why = "default_q must be > 0";
        for (const ScenarioEdge& se : s.edges) {
            if (why.empty() && se.q && !(*se.q > 0.0)) {
                why = "q on " + std::to_string(se.edge.from + 1) + "->" + std::to_string(se.edge.to + 1) + " must be > 0";
            }
        }
        if (why.empty() && !(s.x_max > 0.0 && std::isfinite(s.x_max))) why = "x_max must be > 0";
        add("positivity", why.empty(), why);
    }
    {
        std::string why;
        try {
            s.gossip.validate();
        } catch (const InputError& e) {
            why = e.what();
        }
        if (why.empty() && !(s.solver.tol > 0.0 && s.solver.residual_tol > 0.0)) why = "solver tolerances must be > 0";
        add("solver and gossip settings", why.empty(), why);
    }

    std::optional<Digraph> follower;
    try {
        follower = follower_graph(s);
        add("graph invariants", true);
    } catch (const InputError& e) {
        add("graph invariants", false, e.what());
    }
    if (!follower) {
        for (const char* name : {"G_C strongly connected", "G_I strongly connected", "G_C subset of G_I",
                                 "own gradient matches finite differences"}) {
            add(name, false, "skipped: graph invalid");
        }
        return checks;
    }
    const Digraph interference = build_interference(*follower);
    const bool gc_connected = is_strongly_connected(*follower);
    const bool gi_connected = is_strongly_connected(interference);
    const bool contained = is_subgraph(*follower, interference);
    add("G_C strongly connected", gc_connected, gc_connected ? "" : "G_C not strongly connected");
    add("G_I strongly connected", gi_connected, gi_connected ? "" : "G_I not strongly connected");
    add("G_C subset of G_I", contained, contained ? "" : "some follower edge is missing from G_I");

    const bool game_ok = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
    if (!game_ok) {
        add("own gradient matches finite differences", false, "skipped: earlier check failed");
        return checks;
    }
    const Game game(*follower, game_params(s));
    std::mt19937_64 rng(2024);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const auto x = random_interior_profile(game, rng);
        for (NodeId i = 0; i < game.size(); ++i) {
            const double analytic = own_gradient(game, i, x);
            const double numeric = own_gradient_fd(game, i, x);
            worst = std::max(worst, std::abs(analytic - numeric) / std::max(1.0, std::abs(analytic)));
        }
    }
    std::ostringstream detail;
    detail << "max relative error " << worst;
    add("own gradient matches finite differences", worst < 1e-6, detail.str());
    return checks;
}

// Fully validated game. Throws LoadError naming the first failing check.
inline Game make_game(const Scenario& s) {
    for (const Check& c : check_scenario(s)) {
        if (c.name == "own gradient matches finite differences") continue;
        if (!c.passed) throw LoadError(c.name, c.detail.empty() ? "failed" : c.detail);
    }
    return Game(follower_graph(s), game_params(s));
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline Json read_json_file(const std::string& path) {
    const std::string text = read_text_file(path);
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw LoadError(path, std::string("invalid JSON: ") + e.what());
    }
}

inline Scenario read_scenario(const std::string& path) { return parse_scenario(read_json_file(path)); }

inline void write_scenario(const Scenario& s, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << to_json(s).dump(2) << '\n';
}

} // namespace socialne
