// socialne: command-line harness for the information-production game.
//
//   socialne solve <scenario>
//   socialne simulate <scenario> [--seed N] [--iters N] [--mode async|sync] [--out file.csv]
//   socialne interference <scenario|edge-list> [--check]
//   socialne reconstruct <reconstruction.json>
//   socialne validate <scenario>
//
// A bare name such as `fig2` resolves to the bundled data directory.

#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "socialne/socialne.hpp"

#ifndef SOCIALNE_DATA_DIR
#define SOCIALNE_DATA_DIR "data"
#endif

namespace fs = std::filesystem;
using namespace socialne;

namespace {

std::string resolve(const std::string& arg) {
    if (fs::exists(arg)) return arg;
    for (const char* ext : {".json", ""}) {
        const fs::path bundled = fs::path(SOCIALNE_DATA_DIR) / (arg + ext);
        if (fs::exists(bundled)) return bundled.string();
    }
    throw IoError("no such file: " + arg);
}

bool looks_like_json(const std::string& text) {
    const auto pos = text.find_first_not_of(" \t\r\n");
    return pos != std::string::npos && text[pos] == '{';
}

// A bare edge list gets unit parameters so it can still be checked numerically.
Scenario scenario_from_edge_list(const Digraph& g) {
    Scenario s;
    s.n = g.size();
    s.h.assign(s.n, 1.0);
    s.L.assign(s.n, 1.0);
    for (const Edge& e : g.edges()) s.edges.push_back({e, std::nullopt});
    return s;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nash equilibria of an information-production game on a follower graph"};
    app.require_subcommand(1);

    std::string scenario_arg;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> iters;
    std::string mode;
    std::string out_path;
    bool check = false;

    auto* solve = app.add_subcommand("solve", "Best-response iteration from all-ones; prints the equilibrium");
    solve->add_option("scenario", scenario_arg, "Scenario JSON (or bundled name)")->required();

    auto* sim = app.add_subcommand("simulate", "Run the distributed gossip scheme and write a trajectory CSV");
    sim->add_option("scenario", scenario_arg, "Scenario JSON (or bundled name)")->required();
    sim->add_option("--seed", seed, "Activation RNG seed");
    sim->add_option("--iters", iters, "Number of iterations");
    sim->add_option("--mode", mode, "async or sync")->check(CLI::IsMember({"async", "sync"}));
    sim->add_option("--out", out_path, "Output CSV path (stdout if omitted)");

    auto* interf = app.add_subcommand("interference", "Print the interference graph as an edge list");
    interf->add_option("scenario", scenario_arg, "Scenario JSON, edge list, or bundled name")->required();
    interf->add_flag("--check", check, "Cross-check against finite-difference dependence");

    auto* recon = app.add_subcommand("reconstruct", "Enumerate follower graphs consistent with a target equilibrium");
    recon->add_option("spec", scenario_arg, "Reconstruction JSON (or bundled name)")->required();

    auto* validate = app.add_subcommand("validate", "Run structural and numerical checks on a scenario");
    validate->add_option("scenario", scenario_arg, "Scenario JSON (or bundled name)")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        const std::string path = resolve(scenario_arg);
        if (solve->parsed()) return cmd_solve(read_scenario(path), std::cout);
        if (sim->parsed()) {
            SimulateOptions options{seed, iters, std::nullopt};
            if (!mode.empty()) options.mode = parse_gossip_mode(mode);
            return cmd_simulate(read_scenario(path), options, out_path, std::cout);
        }
        if (interf->parsed()) {
            const std::string text = read_text_file(path);
            const Scenario s = looks_like_json(text) ? parse_scenario(Json::parse(text))
                                                     : scenario_from_edge_list(parse_edge_list(text));
            return cmd_interference(s, check, std::cout);
        }
        if (recon->parsed()) return cmd_reconstruct(parse_reconstruction(read_json_file(path)), std::cout);
        if (validate->parsed()) return cmd_validate(read_scenario(path), std::cout);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidationFailure;
    }
    return kExitOk;
}
