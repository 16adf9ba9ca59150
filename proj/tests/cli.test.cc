// Copyright 2026 The pitomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "pitomo/analysis.h"
#include "pitomo/cli.h"
#include "pitomo/experiment_sim.h"
#include "pitomo/io.h"
#include "pitomo/pi_algebra.h"

using namespace pitomo;

namespace {

class Cli : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = std::filesystem::temp_directory_path() /
               ("pitomo_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        std::filesystem::remove_all(dir_);
        std::filesystem::create_directories(dir_);
    }
    void TearDown() override {
        std::filesystem::remove_all(dir_);
    }

    std::string path(const std::string &name) const {
        return (dir_ / name).string();
    }

    int run(std::vector<std::string> args) const {
        args.insert(args.begin(), "pitomo");
        std::vector<const char *> argv;
        for (const auto &a : args) {
            argv.push_back(a.c_str());
        }
        return run_cli(static_cast<int>(argv.size()), argv.data());
    }

    static std::string slurp(const std::string &p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    std::filesystem::path dir_;
};

}  // namespace

TEST_F(Cli, DesignWritesFullScheme) {
    ASSERT_EQ(run({"design", "--qubits", "4", "--lambda", "2050", "--budget", "2000", "--out", path("s4.json")}), 0);
    const Scheme s = scheme_from_json(read_json_file(path("s4.json")));
    EXPECT_EQ(s.num_settings(), 15U);
    ASSERT_EQ(run({"design", "-N", "1", "--lambda", "100", "--out", path("s1.json")}), 0);
    EXPECT_EQ(scheme_from_json(read_json_file(path("s1.json"))).num_settings(), 3U);
}

TEST_F(Cli, CommandsAreDeterministic) {
    ASSERT_EQ(run({"design", "-N", "3", "--lambda", "500", "--budget", "1500", "--seed", "9", "--out", path("a.json")}), 0);
    ASSERT_EQ(run({"design", "-N", "3", "--lambda", "500", "--budget", "1500", "--seed", "9", "--out", path("b.json")}), 0);
    EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
    ASSERT_EQ(run({"simulate", "--scheme", path("a.json"), "--state", "dicke", "--noise", "0.2", "--lambda", "1000",
                   "--seed", "4", "--out", path("c1.json")}),
              0);
    ASSERT_EQ(run({"simulate", "--scheme", path("a.json"), "--state", "dicke", "--noise", "0.2", "--lambda", "1000",
                   "--seed", "4", "--out", path("c2.json")}),
              0);
    EXPECT_EQ(slurp(path("c1.json")), slurp(path("c2.json")));
}

TEST_F(Cli, ReconstructRoundTrip) {
    ASSERT_EQ(run({"design", "-N", "4", "--lambda", "1000000", "--budget", "2000", "--out", path("s.json")}), 0);
    ASSERT_EQ(run({"simulate", "--scheme", path("s.json"), "--state", "dicke", "--noise", "0.1", "--lambda", "1e6",
                   "--out", path("c.json")}),
              0);
    ASSERT_EQ(run({"reconstruct", "--scheme", path("s.json"), "--counts", path("c.json"), "--out", path("b.json"),
                   "--physical-out", path("p.json"), "--ml-out", path("m.json")}),
              0);
    const BlochVector b = bloch_from_json(read_json_file(path("b.json")));
    const BlochVector truth = StateSpec::dicke(4, 2, 0.1).bloch_vector();
    for (std::size_t i = 0; i < b.size(); ++i) {
        // statistical error dominates; allow 5 sigma with a small floor
        EXPECT_NEAR(b.values()[i], truth.values()[i], std::max(1e-3, 5 * b.sigmas()[i]));
    }
    ASSERT_EQ(run({"analyze", "--dense", path("p.json"), "--reference", path("m.json"), "--out", path("an.json")}), 0);
    const Json an = read_json_file(path("an.json"));
    EXPECT_GE(an["reference_fidelity"].get<double>(), 0.0);
    EXPECT_LE(an["reference_fidelity"].get<double>(), 1.0);
    ASSERT_EQ(run({"analyze", "--bloch", path("b.json"), "--reference", path("b.json"), "--out", path("an2.json")}), 0);
    EXPECT_NEAR(read_json_file(path("an2.json"))["reference_fidelity"].get<double>(), 1.0, 1e-9);
}

TEST_F(Cli, AnalyzeIdealDicke) {
    write_json_file(path("d.json"), dense_to_json(DensityMatrix::pure(dicke_state(4, 2))));
    ASSERT_EQ(run({"analyze", "--dense", path("d.json"), "--out", path("an.json")}), 0);
    const Json an = read_json_file(path("an.json"));
    EXPECT_NEAR(an["dicke_fidelities"][2]["value"].get<double>(), 1.0, 1e-12);
    EXPECT_NEAR(an["ps"]["value"].get<double>(), 1.0, 1e-12);
    EXPECT_TRUE(an.contains("witness_fidelity_bound"));
    EXPECT_NEAR(an["report"]["fidelity_lower_obs2"]["value"].get<double>(), 1.0, 1e-12);
}

TEST_F(Cli, CheckSymmetry) {
    ASSERT_EQ(run({"simulate", "--settings", "xyz", "-N", "4", "--state", "dicke", "--lambda", "1e6", "--out",
                   path("xyz.json")}),
              0);
    ASSERT_EQ(run({"check-symmetry", "--counts", path("xyz.json"), "--out", path("r.json")}), 0);
    const Json r = read_json_file(path("r.json"));
    EXPECT_NEAR(r["ps_lower"]["value"].get<double>(), 1.0, 0.01);
    for (const char *key : {"ps_lower", "fidelity_lower_obs2", "fidelity_lower_strong", "trace_bound"}) {
        EXPECT_TRUE(r[key].contains("sigma")) << key;
    }

    ASSERT_EQ(run({"simulate", "--settings", "xz", "-N", "4", "--lambda", "100", "--out", path("xz.json")}), 0);
    EXPECT_EQ(run({"check-symmetry", "--counts", path("xz.json"), "--out", path("r2.json")}), 3);

    ASSERT_EQ(run({"simulate", "--settings", "xyz", "-N", "5", "--lambda", "100", "--out", path("n5.json")}), 0);
    ASSERT_EQ(run({"check-symmetry", "--counts", path("n5.json"), "--out", path("r5.json")}), 0);
    const Json r5 = read_json_file(path("r5.json"));
    EXPECT_TRUE(r5["ps_lower"].is_null());
    EXPECT_TRUE(r5.contains("note"));
}

TEST_F(Cli, ExitCodes) {
    EXPECT_EQ(run({}), kUsageExitCode);
    EXPECT_EQ(run({"design", "--qubits", "4"}), kUsageExitCode);
    EXPECT_EQ(run({"design", "-N", "4", "--lambda", "1", "--out", path("x.json")}), exit_code(ErrorKind::InvalidArgument));
    EXPECT_EQ(run({"reconstruct", "--scheme", path("missing.json"), "--counts", path("c.json"), "--out", path("o.json")}),
              kUsageExitCode);
    {
        std::ofstream(path("broken.json")) << "{";
    }
    EXPECT_EQ(run({"check-symmetry", "--counts", path("broken.json"), "--out", path("o.json")}),
              exit_code(ErrorKind::Io));
    EXPECT_EQ(exit_code(ErrorKind::IncompleteData), 3);
    EXPECT_EQ(exit_code(ErrorKind::OptimizationFailed), 5);
}

TEST_F(Cli, ConfigFileWithFlagOverride) {
    {
        std::ofstream cfg(path("run.toml"));
        cfg << "[design]\nqubits = 2\nlambda = 50\nout = \"" << path("from_config.json") << "\"\n";
    }
    ASSERT_EQ(run({"--config", path("run.toml"), "design", "--lambda", "80"}), 0);
    const Scheme s = scheme_from_json(read_json_file(path("from_config.json")));
    EXPECT_EQ(s.num_settings(), 6U);
    EXPECT_EQ(s.lambda(), 80);
}
