#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "test_support.hpp"
#include "tumorsim/cli.hpp"
#include "tumorsim/diagnostics.hpp"
#include "tumorsim/driver.hpp"
#include "tumorsim/errors.hpp"
#include "tumorsim/run_config.hpp"

using namespace tumorsim;
namespace fs = std::filesystem;

namespace {

const char* kMinimal = R"([model]
mode = particular

[params]
eta = 1
eps = 0.1
rho = 1
theta = 1
n = 1
n3 = 1

[profiles]
s_kind = exp-sine
s_amplitude = 2
b_kind = exp-sine
b_amplitude = 1

[grid]
size = 32

[initial]
preset = single-mode
mode = 2
amplitude = 0.05

[stepper]
scheme = etdrk2
dt = 0.001
t_end = 0.05
)";

const char* kRandom = R"([model]
mode = general

[params]
eta = 1
eps = 0.1
rho = 0.5
theta = 0.3
n1 = 0.8
n2 = 1.1
n3 = 0.2
tau = 0.7
alpha_ratio = 0.5

[profiles]
s_kind = exp-sine
s_amplitude = 2
s_modulation = 0:1:0, 1:0.1:0.05
b_kind = exp-sine
b_amplitude = 1

[grid]
size = 16

[initial]
preset = random-small
seed = 7
target_a1 = 0.05
max_mode = 4

[stepper]
dt = 0.01
t_end = 0.1

[output]
snapshot_every = 5
)";

const char* kBlowUp = R"([model]
mode = particular

[params]
eta = 1
eps = 1
n = 1

[profiles]
s_kind = exp-sine
s_amplitude = 0
b_kind = exp-sine
b_amplitude = 0

[grid]
size = 32

[initial]
preset = random-small
seed = 3
target_a1 = 100
max_mode = 10

[stepper]
scheme = if-euler
dt = 0.01
t_end = 5
)";

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("tumorsim_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) {
    std::ofstream(dir_ / name) << text;
    return dir_ / name;
  }

  int cli(std::vector<std::string> args) {
    args.insert(args.begin(), "tumorsim");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    out_.str("");
    err_.str("");
    return run_cli(static_cast<int>(argv.size()), argv.data(), out_, err_);
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

std::string config_error_key(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "";
}

}  // namespace

TEST(ParseConfig, MinimalParticularAccepted) {
  const auto cfg = parse_config(kMinimal);
  EXPECT_EQ(cfg.mode, ForcingMode::Particular);
  EXPECT_EQ(cfg.params.eta, 1.0);
  EXPECT_EQ(cfg.params.n1, 1.0);
  EXPECT_EQ(cfg.params.n2, 1.0);
  EXPECT_EQ(cfg.s_profile.amplitude, 2.0);
  EXPECT_EQ(cfg.b_profile.amplitude, 1.0);
  EXPECT_EQ(cfg.grid_size, 32);
  EXPECT_EQ(cfg.stepper.scheme, Scheme::Etdrk2);
}

TEST(ParseConfig, ZeroEtaNamesKey) {
  std::string text = kMinimal;
  text.replace(text.find("eta = 1"), 7, "eta = 0");
  try {
    parse_config(text);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "params.eta");
    EXPECT_NE(std::string(e.what()).find("eta"), std::string::npos);
  }
}

TEST(ParseConfig, DimensionalBlockMatchesHandArithmetic) {
  const std::string text = R"([model]
mode = general
[dimensional]
D = 2
delta = 0.3
lambda = 0.7
gamma = 0.4
chi = 1.5
mu = 0.25
nu = 6
sigma_tilde = 0.8
L = 2
H = 0.1
[profiles]
s_kind = exp-sine
s_amplitude = 1
b_kind = exp-sine
b_amplitude = 1
[stepper]
t_end = 1
)";
  const auto cfg = parse_config(text);
  const auto& p = cfg.params;
  EXPECT_NEAR(p.n1, 2 * 0.1 * (0.3 + 0.7) / 2, 1e-15);
  EXPECT_EQ(p.n1, p.n2);
  EXPECT_NEAR(p.n3, 0.4 * 0.2 / 2, 1e-15);
  EXPECT_NEAR(p.theta, 1.5 * 0.8 / 2, 1e-15);
  EXPECT_NEAR(p.rho, 0.25 * 0.8 * 4 / 2, 1e-15);
  EXPECT_NEAR(p.eta, 6 * 0.1 / (4 * 2), 1e-15);
  EXPECT_NEAR(p.eps, 0.05, 1e-15);
  EXPECT_EQ(p.alpha_ratio, 1.0);
  ASSERT_TRUE(cfg.dimensional.has_value());
  EXPECT_EQ(serialize(parse_config(serialize(cfg))), serialize(cfg));
}

TEST(ParseConfig, SerializeFixpoint) {
  for (const char* text : {kMinimal, kRandom, kBlowUp}) {
    const auto once = serialize(parse_config(text));
    EXPECT_EQ(serialize(parse_config(once)), once);
  }
}

TEST(ParseConfig, RandomPresetRequiresSeed) {
  std::string text = kRandom;
  text.erase(text.find("seed = 7\n"), 9);
  EXPECT_EQ(config_error_key(text), "initial.seed");
}

TEST(ParseConfig, UnknownKeyReportsLine) {
  std::string text = kMinimal;
  text.insert(text.find("[grid]"), "bogus = 1\n");
  try {
    parse_config(text);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "profiles.bogus");
    EXPECT_NE(std::string(e.what()).find("line 18"), std::string::npos) << e.what();
  }
}

TEST(ParseConfig, ErrorsNameKeys) {
  std::string text = kMinimal;
  EXPECT_EQ(config_error_key(std::string(kMinimal).replace(text.find("eps = 0.1"), 9, "eps = abc")), "params.eps");
  EXPECT_EQ(config_error_key(std::string(kMinimal).replace(text.find("size = 32"), 9, "size = 31")), "grid.size");
  EXPECT_EQ(config_error_key(std::string(kMinimal).replace(text.find("n = 1\n"), 6, "n1 = 1\nn2 = 2\n")), "params.n1");
  EXPECT_EQ(config_error_key(std::string(kMinimal).replace(text.find("etdrk2"), 6, "rk4")), "stepper.scheme");
  EXPECT_EQ(config_error_key(std::string(kMinimal).replace(text.find("eta = 1\n"), 8, "")), "params.eta");
}

TEST(ParseConfig, OverridesApply) {
  const auto cfg = parse_config(kMinimal, {{"params.eps", "0.25"}, {"initial.amplitude", "0.01"}});
  EXPECT_EQ(cfg.params.eps, 0.25);
  EXPECT_EQ(cfg.initial.amplitude, 0.01);
  EXPECT_THROW(parse_config(kMinimal, {{"eps", "0.25"}}), ConfigError);
  EXPECT_THROW(parse_config(kMinimal, {{"params.nope", "1"}}), ConfigError);
}

TEST(BuildInitial, DeterministicRandomPreset) {
  const auto cfg = parse_config(kRandom);
  const auto a = build_initial(cfg);
  const auto b = build_initial(cfg);
  EXPECT_EQ(tumorsim::testing::max_diff(a, b), 0.0);
  EXPECT_NEAR(wiener_norm(a, 1, true), 0.05, 1e-15);
  const auto other = build_initial(parse_config(kRandom, {{"initial.seed", "8"}}));
  EXPECT_GT(tumorsim::testing::max_diff(a, other), 0.0);
}

TEST_F(TempDir, ZeroSpanWritesInitialSnapshotOnly) {
  std::string text = kMinimal;
  text.replace(text.find("t_end = 0.05"), 12, "t_end = 0");
  const auto config = write("run.cfg", text);
  ASSERT_EQ(cli({"--config", config.string(), "--out", (dir_ / "out").string()}), kExitOk) << err_.str();
  EXPECT_TRUE(fs::exists(dir_ / "out" / "snap_000000.csv"));
  EXPECT_FALSE(fs::exists(dir_ / "out" / "snap_000001.csv"));
  std::ifstream diag(dir_ / "out" / "diagnostics.csv");
  const auto records = parse_csv(diag);
  ASSERT_EQ(records.size(), 1u);
  EXPECT_NEAR(records[0].a1_hom, 0.1, 1e-15);
  EXPECT_EQ(slurp(dir_ / "out" / "snap_000000.csv").substr(0, 9), "k,re,im\n0");
}

TEST_F(TempDir, BlowUpExitsWithPartialCsv) {
  const auto config = write("blow.cfg", kBlowUp);
  ASSERT_EQ(cli({"--config", config.string(), "--out", (dir_ / "out").string()}), kExitBlowUp) << out_.str();
  std::ifstream diag(dir_ / "out" / "diagnostics.csv");
  const auto records = parse_csv(diag);
  ASSERT_GE(records.size(), 1u);
  EXPECT_LT(records.back().t, 5.0);
  EXPECT_LT(records.front().smallness_margin, 0.0);
  const auto manifest = nlohmann::json::parse(slurp(dir_ / "out" / "manifest.json"));
  EXPECT_EQ(manifest["status"], "blow-up");
}

TEST_F(TempDir, SameSeedIsByteIdentical) {
  const auto config = write("run.cfg", kRandom);
  ASSERT_EQ(cli({"--config", config.string(), "--out", (dir_ / "a").string()}), kExitOk) << err_.str();
  ASSERT_EQ(cli({"--config", config.string(), "--out", (dir_ / "b").string()}), kExitOk) << err_.str();
  EXPECT_EQ(slurp(dir_ / "a" / "diagnostics.csv"), slurp(dir_ / "b" / "diagnostics.csv"));
  EXPECT_EQ(slurp(dir_ / "a" / "snap_000002.csv"), slurp(dir_ / "b" / "snap_000002.csv"));
  ASSERT_EQ(cli({"--config", config.string(), "--out", (dir_ / "c").string(), "--seed", "99"}), kExitOk);
  EXPECT_NE(slurp(dir_ / "a" / "diagnostics.csv"), slurp(dir_ / "c" / "diagnostics.csv"));
}

TEST_F(TempDir, ManifestAndArtifacts) {
  const auto config = write("run.cfg", kRandom);
  ASSERT_EQ(cli({"--config", config.string(), "--out", (dir_ / "out").string(), "--seed", "11"}), kExitOk);
  const auto manifest = nlohmann::json::parse(slurp(dir_ / "out" / "manifest.json"));
  EXPECT_EQ(manifest["version"], kVersion);
  EXPECT_EQ(manifest["initial"]["seed"], 11);
  EXPECT_EQ(manifest["status"], "completed");
  EXPECT_EQ(manifest["params"]["tau"], 0.7);
  EXPECT_EQ(manifest["steps"], 10);
  const auto echoed = parse_config(manifest["config"].get<std::string>());
  EXPECT_EQ(serialize(echoed), manifest["config"].get<std::string>());
  EXPECT_TRUE(fs::exists(dir_ / "out" / "plot.py"));
  const auto index = slurp(dir_ / "out" / "snapshots_index.csv");
  EXPECT_EQ(index.substr(0, index.find('\n')), "index,step,t,file");
  EXPECT_TRUE(fs::exists(dir_ / "out" / "snap_000002.csv"));
}

TEST_F(TempDir, ConfigErrorsExitTwo) {
  std::string text = kMinimal;
  text.replace(text.find("eta = 1"), 7, "eta = -1");
  const auto config = write("bad.cfg", text);
  EXPECT_EQ(cli({"--config", config.string(), "--out", (dir_ / "out").string()}), kExitConfig);
  EXPECT_NE(err_.str().find("eta"), std::string::npos);
  EXPECT_EQ(cli({"--config", (dir_ / "missing.cfg").string()}), kExitConfig);
  EXPECT_EQ(cli({"--bogus"}), kExitConfig);
  EXPECT_EQ(cli({}), kExitConfig);
}

TEST_F(TempDir, SweepRunsEachValue) {
  const auto config = write("run.cfg", kMinimal);
  ASSERT_EQ(cli({"--config", config.string(), "--out", (dir_ / "sweep").string(), "--sweep", "params.eps=0,0.1,0.2"}),
            kExitOk)
      << err_.str();
  for (const char* v : {"0", "0.1", "0.2"}) {
    const auto sub = dir_ / "sweep" / (std::string("params.eps=") + v);
    ASSERT_TRUE(fs::exists(sub / "diagnostics.csv")) << sub;
    const auto manifest = nlohmann::json::parse(slurp(sub / "manifest.json"));
    EXPECT_EQ(manifest["params"]["eps"], std::stod(v));
  }
  EXPECT_EQ(cli({"--config", config.string(), "--sweep", "params.eps"}), kExitConfig);
  EXPECT_EQ(cli({"--config", config.string(), "--sweep", "params.eta=1,0"}), kExitConfig);
}

TEST_F(TempDir, VerifySuitePasses) {
  EXPECT_EQ(cli({"--verify"}), kExitOk) << out_.str();
  EXPECT_NE(out_.str().find("PASS"), std::string::npos);
  EXPECT_EQ(out_.str().find("FAIL"), std::string::npos);
}

TEST_F(TempDir, TableProfileRelativeToConfig) {
  std::ofstream table(dir_ / "s.csv");
  table << "x2,value\n";
  for (int i = -200; i <= 0; ++i) table << i * 0.05 << "," << 2 * std::exp(i * 0.05) * std::sin(i * 0.05) << "\n";
  table.close();
  std::string text = kRandom;
  text.replace(text.find("s_kind = exp-sine\ns_amplitude = 2"), 32, "s_kind = table\ns_table = s.csv\ns_tail_rate = 1");
  const auto config = write("table.cfg", text);
  EXPECT_EQ(cli({"--config", config.string(), "--out", (dir_ / "out").string()}), kExitOk) << err_.str();
}
