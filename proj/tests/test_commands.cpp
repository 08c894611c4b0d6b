#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "socialne/commands.hpp"
#include "support.hpp"

using namespace socialne;
using namespace socialne::testing;

namespace {

Scenario fig2() { return read_scenario(data_path("fig2.json")); }

} // namespace

TEST(CmdSolve, PrintsSixDecimalTable) {
    std::ostringstream out;
    NEReport report;
    EXPECT_EQ(cmd_solve(fig2(), out, &report), kExitOk);
    const std::string text = out.str();
    EXPECT_NE(text.find("     3  0.418173"), std::string::npos) << text;
    EXPECT_NE(text.find("     4  2.244042"), std::string::npos) << text;
    EXPECT_NE(text.find("     5  0.140625"), std::string::npos) << text;
    EXPECT_NE(text.find("status    converged"), std::string::npos);
    EXPECT_LT(report.residual, 1e-8);
}

TEST(CmdSolve, TinyUtilityGivesZeroEquilibrium) {
    Scenario s = read_scenario(data_path("two_cycle.json"));
    s.L = {1e-9, 1e-9};
    std::ostringstream out;
    NEReport report;
    EXPECT_EQ(cmd_solve(s, out, &report), kExitOk);
    EXPECT_EQ(report.profile, (ActionProfile{0.0, 0.0}));
    EXPECT_NE(out.str().find("     1  0.000000\n     2  0.000000\n"), std::string::npos);
}

TEST(CmdSolve, NonConvergenceExitsTwo) {
    Scenario s = fig2();
    s.solver.max_sweeps = 1;
    std::ostringstream out;
    EXPECT_EQ(cmd_solve(s, out), kExitNoConvergence);
    EXPECT_NE(out.str().find("not converged"), std::string::npos);
}

TEST(TrajectoryCsv, HeaderAndNumberFormat) {
    Trajectory t;
    t.records.push_back({0, {1.0, 0.123456789012}, 0.0, 1.5, 2.0 / 3.0});
    t.records.push_back({100, {0.0, 1e-12}, 1e-7, 0.25, std::nullopt});
    EXPECT_EQ(trajectory_csv(t, 2),
              "iter,x1,x2,consensus_error,residual,dist_to_ref\n"
              "0,1,0.123456789,0,1.5,0.666666667\n"
              "100,0,1e-12,1e-07,0.25,\n");
}

TEST(CmdSimulate, ZeroIterationsWritesOneRow) {
    std::ostringstream out;
    SimulateOptions options;
    options.iterations = 0;
    EXPECT_EQ(cmd_simulate(fig2(), options, "-", out), kExitOk);
    const std::string csv = out.str();
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
    EXPECT_TRUE(csv.starts_with("iter,x1,x2,x3,x4,x5,consensus_error,residual,dist_to_ref\n0,1,1,1,1,1,0,"));
}

TEST(CmdSimulate, DeterministicBytes) {
    SimulateOptions options;
    options.iterations = 5000;
    options.seed = 9;
    std::ostringstream a, b;
    cmd_simulate(fig2(), options, "-", a);
    cmd_simulate(fig2(), options, "-", b);
    EXPECT_EQ(a.str(), b.str());
}

TEST(CmdSimulate, UnwritablePathIsIoError) {
    std::ostringstream out;
    SimulateOptions options;
    options.iterations = 10;
    EXPECT_THROW(cmd_simulate(fig2(), options, "/nonexistent-dir/x.csv", out), IoError);
}

TEST(CmdSimulate, WritesFile) {
    const auto path = (std::filesystem::temp_directory_path() / "socialne_sim.csv").string();
    std::ostringstream log;
    SimulateOptions options;
    options.iterations = 1000;
    EXPECT_EQ(cmd_simulate(fig2(), options, path, log), kExitOk);
    const std::string csv = read_text_file(path);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 12); // header + 0..1000 by 100
    std::filesystem::remove(path);
}

TEST(CmdInterference, Fig2) {
    std::ostringstream out;
    EXPECT_EQ(cmd_interference(fig2(), true, out), kExitOk);
    const std::string text = out.str();
    EXPECT_EQ(parse_edge_list(text).edge_count(), 12u);
    EXPECT_NE(text.find("G_C ⊆ G_I: yes"), std::string::npos);
    EXPECT_NE(text.find("dependence check: ok"), std::string::npos);
}

TEST(CmdInterference, TwoCycle) {
    std::ostringstream out;
    EXPECT_EQ(cmd_interference(read_scenario(data_path("two_cycle.json")), false, out), kExitOk);
    EXPECT_EQ(parse_edge_list(out.str()), two_cycle());
}

TEST(CmdReconstruct, Fig2AndUnsatisfiable) {
    Json j = read_json_file(data_path("fig2_reconstruct.json"));
    std::ostringstream out;
    EXPECT_EQ(cmd_reconstruct(parse_reconstruction(j), out), kExitOk);
    EXPECT_NE(out.str().find("forced: 5->4"), std::string::npos) << out.str();
    EXPECT_NE(out.str().find("survivor 15:"), std::string::npos);

    j["target"] = Json::array({0, 0, 0, 0, 0});
    std::ostringstream none;
    EXPECT_EQ(cmd_reconstruct(parse_reconstruction(j), none), kExitReconstructionUnsatisfiable);
}

TEST(CmdValidate, Fig2PassesAndZeroCostFails) {
    std::ostringstream out;
    EXPECT_EQ(cmd_validate(fig2(), out), kExitOk);
    EXPECT_EQ(out.str().find("FAIL"), std::string::npos) << out.str();

    Scenario s = fig2();
    s.h[1] = 0.0;
    std::ostringstream bad;
    EXPECT_EQ(cmd_validate(s, bad), kExitValidationFailure);
    EXPECT_NE(bad.str().find("FAIL positivity (h[2] must be > 0)"), std::string::npos) << bad.str();
}

TEST(CmdValidate, EveryBundledScenarioPasses) {
    for (const char* name : {"fig2.json", "two_cycle.json"}) {
        std::ostringstream out;
        EXPECT_EQ(cmd_validate(read_scenario(data_path(name)), out), kExitOk) << name << "\n" << out.str();
    }
}
