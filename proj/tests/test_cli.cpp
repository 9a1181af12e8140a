// Copyright 2026 The fequdit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "fequdit/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "fequdit/schedule_io.hpp"

namespace fequdit {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("fequdit_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return run_cli(args, out_, err_);
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const Json& j) { write_text_file(path(name), j.dump()); }
  Json read_json(const std::string& name) const { return Json::parse(read_text_file(path(name))); }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(CliTest, SimulateMonoEnergeticEmptySchedule) {
  write("c.json", {{"dim", 4}, {"initial", {{"kind", "mono_energetic"}}}});
  ASSERT_EQ(run({"simulate", "--config", path("c.json"), "--out", path("o")}), kExitOk)
      << err_.str();
  const Json state = read_json("o/state.json");
  for (const Json& a : state["alpha"]) {
    EXPECT_NEAR(a["re"].get<double>(), 0.5, 1e-15);
    EXPECT_NEAR(a["im"].get<double>(), 0.0, 1e-15);
  }
  EXPECT_TRUE(fs::exists(path("o/trajectory.csv")));
}

TEST_F(CliTest, SimulateBasisStateSpectrum) {
  write("c.json", {{"dim", 4}, {"initial", {{"kind", "basis"}, {"k", 0}}}});
  ASSERT_EQ(run({"simulate", "--config", path("c.json"), "--out", path("o")}), kExitOk);
  std::istringstream csv(read_text_file(path("o/spectrum.csv")));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "ell,prob,phase");
  while (std::getline(csv, line)) {
    const int ell = std::stoi(line.substr(0, line.find(',')));
    const double prob = std::stod(line.substr(line.find(',') + 1));
    EXPECT_NEAR(prob, (ell >= 0 && ell < 4) ? 0.25 : 0.0, 1e-15) << line;
  }
}

TEST_F(CliTest, SimulateBellProgram) {
  write("c.json", {{"program", "bell"}});
  ASSERT_EQ(run({"simulate", "--config", path("c.json"), "--out", path("o")}), kExitOk)
      << err_.str();
  EXPECT_GT(read_json("o/state.json")["fidelity"].get<double>(), 0.999999);
}

TEST_F(CliTest, SimulateRotationProgramTrajectory) {
  write("c.json", {{"program", "rotation"}});
  ASSERT_EQ(run({"simulate", "--config", path("c.json"), "--out", path("o")}), kExitOk)
      << err_.str();
  EXPECT_GT(read_json("o/state.json")["fidelity"].get<double>(), 0.999999);
  std::istringstream csv(read_text_file(path("o/trajectory.csv")));
  std::string line;
  int rows = 0;
  while (std::getline(csv, line)) ++rows;
  EXPECT_GE(rows, 3);
}

TEST_F(CliTest, SimulateExplicitStateAndInlineSchedule) {
  Json schedule{{"dim", 4}, {"steps", {{{"fsp", {{"steps", 8}}}}}}};
  write("c.json", {{"initial", {{"kind", "explicit"}, {"ell_min", -1}, {"psi", {{1, 0}, {0, 1}}}}},
                   {"schedule", schedule}});
  ASSERT_EQ(run({"simulate", "--config", path("c.json"), "--out", path("o")}), kExitOk)
      << err_.str();
  // Eight steps at d = 4 is z = z_D, a full revival: alpha_0 = (1 + i) / (2 sqrt 2).
  const Json state = read_json("o/state.json");
  EXPECT_NEAR(state["norm"].get<double>(), 1.0, 1e-14);
  EXPECT_NEAR(state["alpha"][0]["re"].get<double>(), 0.5 / std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(state["alpha"][0]["im"].get<double>(), 0.5 / std::sqrt(2.0), 1e-14);
}

TEST_F(CliTest, UnknownFieldIsRejected) {
  write("c.json", {{"dim", 4}, {"colour", "blue"}});
  EXPECT_EQ(run({"simulate", "--config", path("c.json"), "--out", path("o")}), kExitConfig);
  EXPECT_NE(err_.str().find("colour"), std::string::npos);
  EXPECT_EQ(run({"simulate", "--config", path("missing.json")}), kExitConfig);
  EXPECT_EQ(run({"frobnicate"}), kExitConfig);
}

TEST_F(CliTest, TruncationExitNamesRequiredWidth) {
  Json schedule{{"dim", 4},
                {"steps", {{{"pinem", {{"harmonics", {{{"j", 1}, {"g_re", 3.0}, {"g_im", 0.0}}}}}}}}}};
  write("c.json", {{"schedule", schedule}, {"half_width", 5}});
  EXPECT_EQ(run({"simulate", "--config", path("c.json"), "--out", path("o")}), kExitTruncation);
  EXPECT_NE(err_.str().find("required L"), std::string::npos);
}

TEST_F(CliTest, CompileRzIsOnePinem) {
  ASSERT_EQ(run({"compile", "rz", "--angles", "1.5707963", "-1.5707963", "--out", path("o")}),
            kExitOk)
      << err_.str();
  const Json report = read_json("o/report.json");
  EXPECT_EQ(report["pinem_count"].get<int>(), 1);
  EXPECT_LT(report["infidelity"].get<double>(), 1e-9);
  EXPECT_EQ(schedule_from_json(read_json("o/schedule.json")).steps.size(), 1u);
}

TEST_F(CliTest, CompileCnotAndNonConvergence) {
  ASSERT_EQ(run({"compile", "cnot21", "--out", path("o")}), kExitOk) << err_.str();
  const Json report = read_json("o/report.json");
  EXPECT_LE(report["pinem_count"].get<int>(), 3);
  EXPECT_LT(report["infidelity"].get<double>(), 1e-6);
  const GateSchedule stored = schedule_from_json(read_json("o/schedule.json"));
  EXPECT_NEAR(phase_dist(schedule_unitary(stored), named_gate_target(NamedGate::kCnot21)),
              report["infidelity"].get<double>(), 1e-12);

  EXPECT_EQ(run({"compile", "cnot21", "--n-pinem", "1", "--starts", "2", "--out", path("p")}),
            kExitNotConverged);
  EXPECT_EQ(run({"compile", "cnot21", "--n-pinem", "1", "--starts", "2", "--best-effort", "--out",
                 path("p")}),
            kExitOk);
}

TEST_F(CliTest, CompileIsByteIdenticalOnRerun) {
  ASSERT_EQ(run({"compile", "h1", "--seed", "3", "--out", path("a")}), kExitOk);
  ASSERT_EQ(run({"compile", "h1", "--seed", "3", "--out", path("b")}), kExitOk);
  EXPECT_EQ(read_text_file(path("a/report.json")), read_text_file(path("b/report.json")));
  EXPECT_EQ(read_text_file(path("a/schedule.json")), read_text_file(path("b/schedule.json")));
}

TEST_F(CliTest, VerifySuites) {
  EXPECT_EQ(run({"verify", "ladder", "--samples", "0", "--out", path("o")}), kExitOk);
  EXPECT_TRUE(read_json("o/verify_ladder.json")["all_passed"].get<bool>());
  EXPECT_EQ(run({"verify", "ladder", "--dims", "4,8", "--samples", "3", "--out", path("o")}),
            kExitOk)
      << out_.str();
  EXPECT_EQ(run({"verify", "qudit", "--dims", "2,4", "--samples", "3", "--out", path("o")}),
            kExitOk)
      << out_.str();
  EXPECT_EQ(run({"verify", "results", "--dims", "4,8", "--samples", "10", "--out", path("o")}),
            kExitOk);
  const Json results = read_json("o/verify_results.json");
  for (const Json& c : results["checks"]) EXPECT_LT(c["residual"].get<double>(), 1e-9);
  EXPECT_EQ(run({"verify", "nonsense", "--out", path("o")}), kExitConfig);
}

TEST_F(CliTest, ExportLengthAndWarnings) {
  Json schedule{{"dim", 4}, {"steps", {{{"fsp", {{"steps", 1}}}}}}};
  write("s.json", schedule);
  ASSERT_EQ(run({"export", "--schedule", path("s.json"), "--z-dispersion", "0.008", "--out",
                 path("o")}),
            kExitOk)
      << err_.str();
  const Json phys = read_json("o/physical.json");
  EXPECT_NEAR(phys["steps"][0]["drift"]["length_m"].get<double>(), 0.001, 1e-18);
  EXPECT_TRUE(phys["warnings"].empty());

  Json strong{{"dim", 4},
              {"steps", {{{"pinem", {{"harmonics", {{{"j", 1}, {"g_re", 3 * kPi}, {"g_im", 0.0}}}}}}}}}};
  write("c.json", {{"schedule", strong}, {"params", {{"kinetic_energy_ev", 200e3}}}});
  ASSERT_EQ(run({"export", "--config", path("c.json"), "--out", path("o")}), kExitOk);
  EXPECT_FALSE(read_json("o/physical.json")["warnings"].empty());
}

TEST_F(CliTest, OutDirFromEnvironment) {
  write("c.json", {{"dim", 4}});
  ::setenv(kOutDirEnv, path("env").c_str(), 1);
  const int code = run({"simulate", "--config", path("c.json")});
  ::unsetenv(kOutDirEnv);
  ASSERT_EQ(code, kExitOk);
  EXPECT_TRUE(fs::exists(path("env/state.json")));
}

TEST(ScheduleIoTest, RoundTripIsExact) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0.0, 3.0);
  GateSchedule s;
  s.dim = 8;
  for (int i = 0; i < 5; ++i) {
    s.steps.push_back(PinemStep{HarmonicDrive({{1, Complex(n(rng), n(rng))},
                                               {4, Complex(n(rng), 1e-300 * n(rng))}})});
    s.steps.push_back(FspStep{i + 1});
  }
  const std::string text = canonical_dump(schedule_to_json(s));
  const GateSchedule back = schedule_from_json(Json::parse(text));
  EXPECT_EQ(back, s);
  EXPECT_EQ(canonical_dump(schedule_to_json(back)), text);
}

TEST(ScheduleIoTest, RejectsMalformed) {
  EXPECT_THROW(schedule_from_json(Json::parse(R"({"dim":3,"steps":[]})")), std::invalid_argument);
  EXPECT_THROW(schedule_from_json(Json::parse(R"({"dim":4,"steps":[{"fsp":{"steps":-1}}]})")),
               std::invalid_argument);
  EXPECT_THROW(schedule_from_json(Json::parse(R"({"dim":4,"steps":[{"warp":{}}]})")),
               std::invalid_argument);
  EXPECT_THROW(schedule_from_json(Json::parse(R"({"dim":4,"steps":[],"x":1})")),
               std::invalid_argument);
}

TEST(ScheduleIoTest, CanonicalDumpSortsAndFormats) {
  const Json j = Json::parse(R"({"b":0.1,"a":[1,-0.0,1e-300],"c":{"z":true,"y":"s"}})");
  EXPECT_EQ(canonical_dump(j),
            "{\"a\":[1,0,1e-300],\"b\":0.10000000000000001,"
            "\"c\":{\"y\":\"s\",\"z\":true}}\n");
}

}  // namespace
}  // namespace fequdit
