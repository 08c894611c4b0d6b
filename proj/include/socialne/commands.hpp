#pragma once

// Implementations behind the `socialne` CLI subcommands. Each takes parsed
// inputs plus an output stream and returns the process exit code.

#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "socialne/diagnostics.hpp"
#include "socialne/digraph.hpp"
#include "socialne/edge_list.hpp"
#include "socialne/errors.hpp"
#include "socialne/game.hpp"
#include "socialne/gossip.hpp"
#include "socialne/oracle.hpp"
#include "socialne/reconstruct.hpp"
#include "socialne/scenario.hpp"

namespace socialne {

enum ExitCode : int {
    kExitOk = 0,
    kExitValidationFailure = 1,
    kExitNoConvergence = 2,
    kExitIo = 3,
    kExitInterferenceMismatch = 4,
    kExitReconstructionUnsatisfiable = 5,
};

// %.9g
inline std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

inline std::string format_fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

inline std::string format_edge(const Edge& e) { return std::to_string(e.from + 1) + "->" + std::to_string(e.to + 1); }

// Header `iter,x1..xn,consensus_error,residual,dist_to_ref`, '\n' line ends.
// dist_to_ref is left empty when the run had no reference.
inline std::string trajectory_csv(const Trajectory& t, std::size_t n) {
    std::string out = "iter";
    for (std::size_t i = 1; i <= n; ++i) out += ",x" + std::to_string(i);
    out += ",consensus_error,residual,dist_to_ref\n";
    for (const TrajectoryRecord& r : t.records) {
        out += std::to_string(r.iteration);
        for (double v : r.actions) out += "," + format_number(v);
        out += "," + format_number(r.consensus_error);
        out += "," + format_number(r.residual);
        out += ",";
        if (r.dist_to_reference) out += format_number(*r.dist_to_reference);
        out += '\n';
    }
    return out;
}

inline ActionProfile default_start(const Game& game) { return ActionProfile(game.size(), std::min(1.0, game.x_max())); }

inline int cmd_solve(const Scenario& scenario, std::ostream& out, NEReport* report_out = nullptr) {
    const Game game = make_game(scenario);
    const NEReport report = best_response_iteration(game, default_start(game), scenario.solver);
    out << "player  action\n";
    for (std::size_t i = 0; i < report.profile.size(); ++i) {
        char line[64];
        std::snprintf(line, sizeof line, "%6zu  %s\n", i + 1, format_fixed(report.profile[i], 6).c_str());
        out << line;
    }
    char tail[160];
    std::snprintf(tail, sizeof tail, "residual  %.3e\nbr_gap    %.3e\nsweeps    %zu\nstatus    %s\n", report.residual,
                  report.br_gap, report.iterations, report.converged ? "converged" : "not converged");
    out << tail;
    const int code = report.converged ? kExitOk : kExitNoConvergence;
    if (report_out) *report_out = report;
    return code;
}

struct SimulateOptions {
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> iterations;
    std::optional<GossipMode> mode;
};

// Runs the gossip scheme with the scenario's config, overridden by `options`.
// The distance reference is the scenario's `reference` if present, else the
// oracle equilibrium.
inline Trajectory simulate(const Scenario& scenario, const SimulateOptions& options = {}) {
    const Game game = make_game(scenario);
    GossipConfig config = scenario.gossip;
    if (options.seed) config.seed = *options.seed;
    if (options.iterations) config.max_iterations = *options.iterations;
    if (options.mode) config.mode = *options.mode;
    if (scenario.reference) {
        config.reference = scenario.reference;
    } else {
        config.reference = best_response_iteration(game, default_start(game), scenario.solver).profile;
    }
    return run(game, default_start(game), config);
}

inline int cmd_simulate(const Scenario& scenario, const SimulateOptions& options, const std::string& out_path,
                        std::ostream& log) {
    const Trajectory t = simulate(scenario, options);
    const std::string csv = trajectory_csv(t, scenario.n);
    if (out_path.empty() || out_path == "-") {
        log << csv;
        return kExitOk;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw IoError("cannot write " + out_path);
    file << csv;
    file.close();
    if (!file) throw IoError("failed writing " + out_path);
    const TrajectoryRecord& last = t.records.back();
    log << "wrote " << t.records.size() << " rows to " << out_path << "\n";
    log << "final iteration " << last.iteration << ", consensus_error " << format_number(last.consensus_error)
        << ", dist_to_ref " << (last.dist_to_reference ? format_number(*last.dist_to_reference) : "n/a") << "\n";
    return kExitOk;
}

inline int cmd_interference(const Scenario& scenario, bool check, std::ostream& out) {
    const Game game = make_game(scenario);
    const Digraph& gi = game.interference();
    out << format_edge_list(gi);
    out << "# G_C ⊆ G_I: " << (is_subgraph(game.follower(), gi) ? "yes" : "no") << "\n";
    if (!check) return kExitOk;

    std::mt19937_64 rng(7);
    bool ok = true;
    for (int trial = 0; trial < 5; ++trial) {
        const auto x = random_interior_profile(game, rng);
        const Digraph dep = dependence_graph(game, x);
        if (dep == gi) continue;
        ok = false;
        for (const Edge& e : gi.edges()) {
            if (!dep.has_edge(e.from, e.to)) out << "# mismatch: " << format_edge(e) << " in G_I but J has no dependence\n";
        }
        for (const Edge& e : dep.edges()) {
            if (!gi.has_edge(e.from, e.to)) out << "# mismatch: " << format_edge(e) << " dependence missing from G_I\n";
        }
    }
    out << "# dependence check: " << (ok ? "ok" : "MISMATCH") << "\n";
    return ok ? kExitOk : kExitInterferenceMismatch;
}

inline int cmd_reconstruct(const ReconstructionSpec& spec, std::ostream& out, ReconstructionResult* result_out = nullptr) {
    ReconstructionResult result = reconstruct(spec);
    out << "completions " << result.completions << ", strongly connected " << result.strongly_connected
        << ", survivors " << result.survivors.size() << "\n";
    std::size_t k = 0;
    for (const auto& c : result.survivors) {
        out << "survivor " << ++k << ": added";
        for (const Edge& e : c.added) out << ' ' << format_edge(e);
        out << " | x =";
        for (double v : c.equilibrium.profile) out << ' ' << format_fixed(v, 4);
        out << "\n";
    }
    if (result.survivors.empty()) {
        out << "no completion reproduces the target profile\n";
    } else {
        out << "forced:";
        for (const Edge& e : result.forced) out << ' ' << format_edge(e);
        if (result.forced.empty()) out << " (none)";
        out << "\n";
    }
    const int code = result.survivors.empty() ? kExitReconstructionUnsatisfiable : kExitOk;
    if (result_out) *result_out = std::move(result);
    return code;
}

inline int cmd_validate(const Scenario& scenario, std::ostream& out) {
    bool all = true;
    for (const Check& c : check_scenario(scenario)) {
        all = all && c.passed;
        out << (c.passed ? "PASS " : "FAIL ") << c.name;
        if (!c.detail.empty()) out << " (" << c.detail << ")";
        out << "\n";
    }
    return all ? kExitOk : kExitValidationFailure;
}

} // namespace socialne
