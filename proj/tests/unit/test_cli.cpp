/*
 * Copyright 2026 The Recovery Lab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
// Drives the recovery_lab executable end to end and checks exit codes,
// output files and byte-identical reruns. Flag parsing helpers are tested
// directly.
#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "config.hpp"
#include "json.hpp"
#include "recovery/error.hpp"

namespace recovery::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const std::string kExe = RECOVERY_LAB_EXE;
const fs::path kData = RECOVERY_LAB_DATA_DIR;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() /
           ("recovery_lab_cli_" + std::string(info->name()) + "_" + std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  // Runs the tool with `args`; stdout and stderr land in files under dir_.
  int run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " '" + kExe + "' " + args + " > '" +
                            (dir_ / "stdout.txt").string() + "' 2> '" +
                            (dir_ / "stderr.txt").string() + "'";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  fs::path out(const std::string& name) const { return dir_ / name; }
  std::string data(const std::string& name) const { return "'" + (kData / name).string() + "'"; }

  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name) << text;
    return "'" + (dir_ / name).string() + "'";
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  static json load(const fs::path& p) { return json::parse(slurp(p)); }

  fs::path dir_;
};

// --- flag helpers ------------------------------------------------------------

TEST(Flags, OverrideParsing) {
  const auto [k, v] = parse_override("gamma=2.5");
  EXPECT_EQ(k, "gamma");
  EXPECT_EQ(v, 2.5);
  EXPECT_THROW(parse_override("gamma"), InputError);
  EXPECT_THROW(parse_override("=1"), InputError);
  EXPECT_THROW(parse_override("gamma=abc"), InputError);
  EXPECT_THROW(parse_override("gamma=1.0x"), InputError);
  EXPECT_THROW(parse_override("gamma=nan"), InputError);
}

TEST(Flags, HorizonGrid) {
  EXPECT_EQ(parse_horizons("12:60:12"), (std::vector<double>{12, 24, 36, 48, 60}));
  EXPECT_EQ(parse_horizons("1:2:0.5"), (std::vector<double>{1, 1.5, 2}));
  EXPECT_EQ(parse_horizons("5:5:1"), (std::vector<double>{5}));
  EXPECT_EQ(parse_horizons("0.1:0.3:0.1").size(), 3u);
  EXPECT_THROW(parse_horizons("1:10"), InputError);
  EXPECT_THROW(parse_horizons("10:1:1"), InputError);
  EXPECT_THROW(parse_horizons("1:10:0"), InputError);
  EXPECT_THROW(parse_horizons("1:10:1:2"), InputError);
}

TEST(Flags, ParameterSetRejectsUnusedKeys) {
  ParameterSet p({{"gamma", 3.0}, {"gama", 1.0}});
  double gamma = 0.0;
  p.apply("gamma", gamma);
  EXPECT_EQ(gamma, 3.0);
  EXPECT_THROW(p.finish(), InputError);
  long n = 0;
  ParameterSet q({{"n", 2.5}});
  EXPECT_THROW(q.apply("n", n), InputError);
}

// --- usage ----------------------------------------------------------------------

TEST_F(CliTest, HelpExitsZero) {
  EXPECT_EQ(run("--help"), 0);
  EXPECT_NE(slurp(out("stdout.txt")).find("recover"), std::string::npos);
  EXPECT_EQ(run("lrr --help"), 0);
  EXPECT_NE(slurp(out("stdout.txt")).find("--override"), std::string::npos);
}

TEST_F(CliTest, UsageErrorsExitOne) {
  EXPECT_EQ(run(""), 1);
  EXPECT_EQ(run("nonsense"), 1);
  EXPECT_EQ(run("recover --no-such-flag"), 1);
  EXPECT_EQ(run("recover"), 1);  // no --input
  EXPECT_EQ(run("recover --input " + write("bad.json", "{not json")), 1);
  EXPECT_EQ(run("recover --input '" + out("missing.json").string() + "'"), 1);
  EXPECT_EQ(run("forward --input " + data("power_2state.json") + " --horizons 1:5"), 1);
}

// --- recover -----------------------------------------------------------------------

TEST_F(CliTest, PowerExampleRecoversPhysicalTransition) {
  ASSERT_EQ(run("recover --input " + data("power_2state.json") + " --out '" + dir_.string() +
                "'"),
            0)
      << slurp(out("stderr.txt"));
  const json r = load(out("recovery.json"));
  EXPECT_LE(r["max_abs_p_hat_minus_p"].get<double>(), 1e-12);
  EXPECT_NEAR(r["eta_hat"].get<double>(), -0.02, 1e-13);
  EXPECT_TRUE(r["ergodicity"]["irreducible"].get<bool>());
  for (const auto& row : r["h_increments"]) {
    for (const auto& h : row) EXPECT_NEAR(h.get<double>(), 1.0, 1e-12);
  }
  EXPECT_TRUE(fs::exists(out("decomposition.csv")));
}

TEST_F(CliTest, RecursiveExampleMovesTheTransition) {
  ASSERT_EQ(run("recover --input " + data("recursive_2state.json") + " --out '" +
                dir_.string() + "'"),
            0);
  const json r = load(out("recovery.json"));
  // Frozen values from the independent oracle script.
  EXPECT_NEAR(r["p_hat"][0][0].get<double>(), 0.9399722006445844, 1e-10);
  EXPECT_NEAR(r["p_hat"][1][0].get<double>(), 0.16200205455675337, 1e-10);
  EXPECT_GT(r["max_abs_p_hat_minus_p"].get<double>(), 1e-2);
  const std::string table = slurp(out("decomposition.csv"));
  EXPECT_EQ(table.substr(0, table.find('\n')), "i,j,q,p_hat,r_infty,p,sdf,h_hat");
}

TEST_F(CliTest, GammaOverrideOnRecursiveExample) {
  ASSERT_EQ(run("recover --input " + data("recursive_2state.json") +
                " --override gamma=1 --out '" + dir_.string() + "'"),
            0);
  EXPECT_LE(load(out("recovery.json"))["max_abs_p_hat_minus_p"].get<double>(), 1e-10);
}

TEST_F(CliTest, BadOverridesExitOne) {
  const std::string base = "recover --input " + data("power_2state.json") + " --out '" +
                           dir_.string() + "' ";
  EXPECT_EQ(run(base + "--override nonsense=1"), 1);
  EXPECT_NE(slurp(out("stderr.txt")).find("nonsense"), std::string::npos);
  EXPECT_EQ(run(base + "--override gamma"), 1);
  EXPECT_EQ(run(base + "--override gamma=x"), 1);
  EXPECT_EQ(run(base + "--override gamma=1 --override gamma=2"), 1);
}

TEST_F(CliTest, NonPrimitivePricesExitTwo) {
  const auto input = write("reducible.json", R"({"prices": [[0.9, 0.0], [0.0, 0.8]]})");
  EXPECT_EQ(run("recover --input " + input + " --out '" + dir_.string() + "'"), 2);
  EXPECT_NE(slurp(out("stderr.txt")).find("primitive"), std::string::npos);
  const auto periodic = write("periodic.json", R"({"prices": [[0.0, 0.9], [0.9, 0.0]]})");
  EXPECT_EQ(run("recover --input " + periodic + " --out '" + dir_.string() + "'"), 2);
}

TEST_F(CliTest, PricesOnlyInput) {
  const auto input = write("q.json", R"({"prices": [[0.5, 0.4], [0.3, 0.6]]})");
  EXPECT_EQ(run("recover --input " + input + " --out '" + dir_.string() + "'"), 0);
  const json r = load(out("recovery.json"));
  EXPECT_FALSE(r.contains("h_increments"));
  // Yields need the physical transition.
  EXPECT_EQ(run("yields --input " + input + " --out '" + dir_.string() + "'"), 1);
}

TEST_F(CliTest, RerunsAreByteIdentical) {
  const fs::path a = dir_ / "a", b = dir_ / "b";
  const std::string args = "recover --input " + data("recursive_2state.json");
  ASSERT_EQ(run(args + " --out '" + a.string() + "'"), 0);
  ASSERT_EQ(run(args + " --out '" + b.string() + "'"), 0);
  EXPECT_EQ(slurp(a / "recovery.json"), slurp(b / "recovery.json"));
  EXPECT_EQ(slurp(a / "decomposition.csv"), slurp(b / "decomposition.csv"));
}

// --- forward and yields --------------------------------------------------------------

TEST_F(CliTest, ForwardAndYieldsWriteTables) {
  const std::string input = data("recursive_2state.json");
  ASSERT_EQ(run("forward --input " + input + " --horizons 1:200:199 --out '" + dir_.string() +
                "'"),
            0);
  const std::string summary = slurp(out("forward.csv"));
  const auto last = summary.substr(summary.rfind("200,"));
  EXPECT_LE(std::stod(last.substr(4)), 1e-8);

  ASSERT_EQ(run("yields --input " + input + " --horizons 1:500:499 --out '" + dir_.string() +
                "'"),
            0);
  EXPECT_TRUE(fs::exists(out("yields.csv")));
  EXPECT_NEAR(load(out("yields.json"))["long_horizon_limit"].get<double>(), 0.02, 1e-12);
  EXPECT_EQ(run("yields --input " + input + " --horizons 0.5:2:0.5 --out '" + dir_.string() +
                "'"),
            1);
}

// --- lrr -----------------------------------------------------------------------------

std::string small_lrr() {
  return " --override n_paths=400 --override burn_in=60 --override bins=8"
         " --override yield_states=50 --horizons 12:120:12";
}

TEST_F(CliTest, LrrWritesDensitiesAndYields) {
  ASSERT_EQ(run("lrr --seed 3 --out '" + dir_.string() + "'" + small_lrr()), 0)
      << slurp(out("stderr.txt"));
  for (const char* f : {"density_physical.csv", "density_recovered.csv",
                        "density_risk_neutral.csv", "yields_consumption.csv", "yields_bond.csv",
                        "lrr_summary.json"}) {
    EXPECT_TRUE(fs::exists(out(f))) << f;
  }
  const json s = load(out("lrr_summary.json"));
  EXPECT_NEAR(s["perron_frobenius"]["eta_hat"].get<double>(), -0.0003164273658773915, 1e-12);
  EXPECT_NEAR(s["value_function"]["v2"].get<double>(), -0.08709576952844825, 1e-12);
}

TEST_F(CliTest, LrrInputFileMatchesDefaults) {
  const fs::path a = dir_ / "a", b = dir_ / "b";
  ASSERT_EQ(run("lrr --out '" + a.string() + "'" + small_lrr()), 0);
  ASSERT_EQ(run("lrr --input " + data("lrr_default.json") + " --out '" + b.string() + "'" +
                small_lrr()),
            0);
  EXPECT_EQ(slurp(a / "lrr_summary.json"), slurp(b / "lrr_summary.json"));
}

TEST_F(CliTest, LrrLogUtilityDropsTheContinuationMartingale) {
  ASSERT_EQ(run("lrr --override gamma=1 --out '" + dir_.string() + "'" + small_lrr()), 0);
  const json s = load(out("lrr_summary.json"));
  // The sdf loading is then minus the consumption loading.
  EXPECT_EQ(s["sdf"]["alpha"][0].get<double>(), -0.0078);
  EXPECT_EQ(s["sdf"]["alpha"][2].get<double>(), 0.0);
  // Bond prices carry no growth, so the two bond bands coincide.
  std::ifstream in(out("yields_bond.csv"));
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<double> v;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) v.push_back(std::stod(cell));
    ASSERT_EQ(v.size(), 7u);
    for (int q = 1; q <= 3; ++q) EXPECT_NEAR(v[q], v[q + 3], 1e-15);
  }
}

TEST_F(CliTest, LrrValueFunctionFailureNamesGamma) {
  EXPECT_EQ(run("lrr --override gamma=40 --out '" + dir_.string() + "'" + small_lrr()), 2);
  const std::string err = slurp(out("stderr.txt"));
  EXPECT_NE(err.find("gamma = 40"), std::string::npos) << err;
  EXPECT_EQ(run("lrr --override gammma=4 --out '" + dir_.string() + "'" + small_lrr()), 1);
}

TEST_F(CliTest, LrrDeterministicAcrossThreadCaps) {
  const fs::path a = dir_ / "a", b = dir_ / "b";
  ASSERT_EQ(run("lrr --seed 9 --out '" + a.string() + "'" + small_lrr(),
                "RECOVERY_LAB_THREADS=1"),
            0);
  ASSERT_EQ(run("lrr --seed 9 --out '" + b.string() + "'" + small_lrr(),
                "RECOVERY_LAB_THREADS=3"),
            0);
  for (const char* f : {"density_physical.csv", "density_recovered.csv", "yields_consumption.csv",
                        "lrr_summary.json"}) {
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  }
}

// --- bounds ---------------------------------------------------------------------------

TEST_F(CliTest, BoundsOnEconomiesAndProblemFiles) {
  ASSERT_EQ(run("bounds --input " + data("recursive_2state.json") +
                " --theta -1 --theta 0 --theta 1 --out '" + dir_.string() + "'"),
            0)
      << slurp(out("stderr.txt"));
  const json r = load(out("bounds.json"));
  ASSERT_EQ(r["bounds"].size(), 3u);
  std::vector<double> from_economy;
  for (const auto& b : r["bounds"]) {
    EXPECT_GT(b["lambda_bar"].get<double>(), 0.0);
    EXPECT_LE(b["lambda_bar"].get<double>(), b["population_discrepancy"].get<double>() + 1e-12);
    from_economy.push_back(b["lambda_bar"].get<double>());
  }
  // The written problem reproduces the same bounds.
  const fs::path again = dir_ / "again";
  ASSERT_EQ(run("bounds --input '" + out("problem.csv").string() +
                "' --theta -1 --theta 0 --theta 1 --out '" + again.string() + "'"),
            0);
  const json r2 = load(again / "bounds.json");
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_NEAR(r2["bounds"][k]["lambda_bar"].get<double>(), from_economy[k], 1e-14);
  }
}

TEST_F(CliTest, BoundsVanishForPowerUtility) {
  ASSERT_EQ(run("bounds --input " + data("power_2state.json") + " --out '" + dir_.string() + "'"),
            0);
  for (const auto& b : load(out("bounds.json"))["bounds"]) {
    EXPECT_LE(std::abs(b["lambda_bar"].get<double>()), 1e-10);
  }
}

// --- sqrt and demo-approx ---------------------------------------------------------

TEST_F(CliTest, SquareRootSelection) {
  ASSERT_EQ(run("sqrt --input " + data("sqrt_priced_risk.json") +
                " --override n_paths=2000 --out '" + dir_.string() + "'"),
            0);
  const json r = load(out("sqrt.json"));
  EXPECT_NEAR(r["selected"]["upsilon"].get<double>(), -20.0 / 9.0, 1e-14);
  EXPECT_EQ(run("sqrt --override kappa=0.3 --override n_paths=100 --out '" + dir_.string() + "'"),
            2);
}

TEST_F(CliTest, DemoApproxIsDeterministicAndExactAtTheTrueZeta) {
  const fs::path a = dir_ / "a", b = dir_ / "b";
  ASSERT_EQ(run("demo-approx --seed 4 --out '" + a.string() + "'"), 0);
  ASSERT_EQ(run("demo-approx --seed 4 --out '" + b.string() + "'"), 0);
  EXPECT_EQ(slurp(a / "demo_approx.csv"), slurp(b / "demo_approx.csv"));
  EXPECT_EQ(slurp(a / "demo_approx.json"), slurp(b / "demo_approx.json"));

  // The candidate at the true exposure is an exact eigenfunction for every rho.
  const json r = load(a / "demo_approx.json");
  const double exposure = r["exposure"].get<double>();
  std::ifstream in(a / "demo_approx.csv");
  std::string line;
  std::getline(in, line);
  int exact_rows = 0;
  while (std::getline(in, line)) {
    std::vector<double> v;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) v.push_back(std::stod(cell));
    if (v[1] == exposure) {
      EXPECT_LE(v[3], 1e-10);
      ++exact_rows;
    }
  }
  EXPECT_EQ(exact_rows, 6);
  EXPECT_EQ(run("demo-approx --override y_states=4 --out '" + a.string() + "'"), 1);
}

}  // namespace
}  // namespace recovery::cli
