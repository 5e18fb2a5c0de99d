#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "test_support.hpp"
#include "tumorsim/diagnostics.hpp"
#include "tumorsim/errors.hpp"
#include "tumorsim/oracles.hpp"

using namespace tumorsim;
using tumorsim::testing::cos_mode;
using tumorsim::testing::random_field;

namespace {

constexpr int kGrid = 32;

std::vector<DiagnosticsRecord> trajectory(const SpectralField& g, const StepperConfig& cfg, double eta,
                                          const NonlinearRhs& rhs) {
  std::vector<DiagnosticsRecord> records;
  run(SimState(g), cfg, eta, rhs, {[&](const SimState& s) { records.push_back(record(s)); }});
  finalize_balance(records, eta);
  return records;
}

}  // namespace

TEST(Record, ZeroField) {
  const auto r = record(SimState(SpectralField(kGrid)));
  EXPECT_EQ(r.a1, 0.0);
  EXPECT_EQ(r.a1_hom, 0.0);
  EXPECT_EQ(r.a4_hom, 0.0);
  EXPECT_EQ(r.smallness_margin, 1.0);
}

TEST(Record, SmallCosine) {
  const auto r = record(SimState(cos_mode(kGrid, 1, 0.1), 0.5));
  EXPECT_NEAR(r.a1_hom, 0.1, 1e-16);
  EXPECT_NEAR(r.smallness_margin, 0.8, 1e-15);
  EXPECT_EQ(r.t, 0.5);
}

TEST(Record, NormRelationsOnRandomFields) {
  std::mt19937_64 rng(60);
  for (int i = 0; i < 100; ++i) {
    const auto g = random_field(rng, kGrid, 15);
    const auto r = record(SimState(g));
    EXPECT_LE(r.a1_hom, r.a1);
    EXPECT_NEAR(r.a1, std::abs(g.mean()) + r.a1_hom, 1e-13);
    EXPECT_EQ(r.mean_re, g.mean());
    const double a3 = wiener_norm(g, 3, true);
    EXPECT_LE(a3, std::cbrt(r.a1_hom) * std::pow(r.a4_hom, 2.0 / 3.0) * (1 + 1e-12));
  }
}

TEST(Monitor, PureDissipationDecays) {
  std::mt19937_64 rng(61);
  StepperConfig cfg;
  cfg.dt = 1e-2;
  cfg.t_end = 2.0;
  const auto records = trajectory(random_field(rng, kGrid, 8, 0.01, false), cfg, 1.0, nullptr);
  ModelParams p;
  const auto report = dissipation_monitor(records, p);
  EXPECT_TRUE(report.decay_asserted);
  EXPECT_TRUE(report.passed());
  EXPECT_EQ(report.envelope_ratio.size(), records.size());
}

TEST(Monitor, ForcedRunsAreNotAsserted) {
  ModelParams p;
  p.rho = 1.0;
  std::vector<DiagnosticsRecord> records(3);
  records[1].t = 0.1;
  records[2].t = 0.2;
  records[2].a1_hom = 1.0;
  EXPECT_FALSE(dissipation_monitor(records, p).decay_asserted);
  EXPECT_TRUE(dissipation_monitor(records, p).passed());
  p.rho = 0.0;
  const auto report = dissipation_monitor(records, p);
  EXPECT_FALSE(report.passed());
  EXPECT_EQ(report.violations.front(), 2u);
  EXPECT_THROW(dissipation_monitor({records[0]}, p), InvalidInput);
}

TEST(Monitor, SingleModeDecayRate) {
  const int k = 3;
  const double eta = 0.05;
  StepperConfig cfg;
  cfg.dt = 1e-2;
  cfg.t_end = 1.0;
  const auto records = trajectory(cos_mode(kGrid, k, 0.1), cfg, eta, nullptr);
  const double slope = std::log(records.back().a1_hom / records.front().a1_hom) / (records.back().t - records.front().t);
  EXPECT_NEAR(slope, -eta * k * k * k, 1e-12);
  // The balance d/dt‖g‖ + cη‖g‖_{Ȧ⁴} with c = 1/2 is negative for a single mode.
  for (std::size_t i = 1; i + 1 < records.size(); ++i) EXPECT_LT(records[i].dissipation_balance, 0.0);
}

TEST(Monitor, ForcedMeanMatchesClosedForm) {
  ModelParams p;
  p.eta = 1.0;
  p.theta = 0.5;
  p.rho = 1.2;
  p.n1 = p.n2 = 0.7;
  p.n3 = 0.4;
  const double c_s = 2.0, c_b = 1.0;
  const auto g0 = cos_mode(kGrid, 2, 0.05);
  const NonlinearRhs rhs = [&](const SpectralField& g, double t) {
    return rhs_particular_nonstiff(g, g0, t, p, {c_s, c_b});
  };
  StepperConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 2.0;
  const auto records = trajectory(g0, cfg, p.eta, rhs);
  for (const auto& r : records) EXPECT_NEAR(r.mean_re, oracles::particular_mean(0.0, r.t, p, c_s, c_b), 1e-7);
}

TEST(Csv, HeaderAndRoundTrip) {
  std::mt19937_64 rng(62);
  StepperConfig cfg;
  cfg.dt = 0.1;
  cfg.t_end = 0.5;
  const auto records = trajectory(random_field(rng, kGrid, 5, 0.1), cfg, 1.0, nullptr);
  std::stringstream out;
  export_csv(out, records);
  std::string first;
  std::getline(out, first);
  EXPECT_EQ(first, diagnostics_header());
  EXPECT_EQ(first, "t,a1,a1_hom,a4_hom,mean_re,mean_im,smallness_margin,dissipation_balance");
  out.seekg(0);
  const auto back = parse_csv(out);
  ASSERT_EQ(back.size(), records.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].t, records[i].t);
    EXPECT_EQ(back[i].a1, records[i].a1);
    EXPECT_EQ(back[i].a4_hom, records[i].a4_hom);
    EXPECT_EQ(back[i].dissipation_balance, records[i].dissipation_balance);
  }
}

TEST(Csv, RejectsWrongHeader) {
  std::stringstream in("t,a1\n0,1\n");
  EXPECT_ANY_THROW(parse_csv(in));
}
