#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"
#include "tumorsim/errors.hpp"
#include "tumorsim/timestepper.hpp"

using namespace tumorsim;
using tumorsim::testing::cos_mode;
using tumorsim::testing::max_diff;
using tumorsim::testing::random_field;

namespace {

constexpr int kGrid = 16;
constexpr Scheme kSchemes[] = {Scheme::IfEuler, Scheme::IfRk2, Scheme::Etdrk2};

SpectralField exact_manufactured(double t) { return cos_mode(kGrid, 1, std::exp(-t)); }

NonlinearRhs manufactured_rhs(double eta) {
  return [eta](const SpectralField& g, double t) {
    const auto star = exact_manufactured(t);
    return cos_mode(kGrid, 1, (eta - 1.0) * std::exp(-t)) + multiply(g, g) - multiply(star, star);
  };
}

double manufactured_error(Scheme scheme, double dt) {
  const double eta = 0.5;
  StepperConfig cfg;
  cfg.dt = dt;
  cfg.scheme = scheme;
  cfg.t_end = 1.0;
  const auto final_state = run(SimState(exact_manufactured(0.0)), cfg, eta, manufactured_rhs(eta));
  return max_diff(final_state.g(), exact_manufactured(1.0));
}

}  // namespace

TEST(Step, ExactLinearPropagator) {
  for (Scheme s : kSchemes) {
    const auto next = step(SimState(cos_mode(kGrid, 2)), 0.1, s, 1.0, nullptr);
    EXPECT_LT(max_diff(next.g(), cos_mode(kGrid, 2, std::exp(-0.8))), 1e-16) << scheme_name(s);
    EXPECT_DOUBLE_EQ(next.t(), 0.1);
    EXPECT_EQ(next.step_index(), 1u);
  }
}

TEST(Step, ZeroRhsMatchesNullRhs) {
  std::mt19937_64 rng(50);
  const auto g = random_field(rng, kGrid, 7, 0.3);
  const NonlinearRhs zero = [](const SpectralField& u, double) { return SpectralField(u.grid_size()); };
  for (Scheme s : kSchemes) EXPECT_LT(max_diff(step(SimState(g), 0.05, s, 0.7, zero).g(), step(SimState(g), 0.05, s, 0.7, nullptr).g()), 1e-16);
}

TEST(Step, MeanFollowsIntegralOfForcing) {
  const NonlinearRhs forcing = [](const SpectralField& u, double t) {
    return SpectralField::constant(u.grid_size(), std::cos(t));
  };
  const double t0 = 0.3;
  for (Scheme s : {Scheme::IfRk2, Scheme::Etdrk2}) {
    double prev = 0.0;
    for (double h : {0.1, 0.05, 0.025}) {
      const auto next = step(SimState(SpectralField(kGrid), t0), h, s, 1.0, forcing);
      const double err = std::abs(next.g().mean() - (std::sin(t0 + h) - std::sin(t0)));
      if (prev > 0.0) EXPECT_GT(prev / err, 7.0) << scheme_name(s);
      prev = err;
    }
  }
  const auto euler = step(SimState(SpectralField(kGrid), t0), 0.1, Scheme::IfEuler, 1.0, forcing);
  EXPECT_DOUBLE_EQ(euler.g().mean(), 0.1 * std::cos(t0));
}

TEST(Step, ManufacturedSolutionOrders) {
  for (Scheme s : {Scheme::IfRk2, Scheme::Etdrk2}) {
    const double coarse = manufactured_error(s, 0.02);
    const double fine = manufactured_error(s, 0.01);
    EXPECT_GE(coarse / fine, 3.8) << scheme_name(s) << " " << coarse << " " << fine;
  }
  const double ratio = manufactured_error(Scheme::IfEuler, 0.02) / manufactured_error(Scheme::IfEuler, 0.01);
  EXPECT_GT(ratio, 1.8);
  EXPECT_LT(ratio, 2.2);
}

TEST(Step, BlowUpReportsStepAndNorms) {
  const NonlinearRhs explode = [](const SpectralField& u, double) {
    return SpectralField::constant(u.grid_size(), 1e7);
  };
  try {
    step(SimState(cos_mode(kGrid, 1, 0.1)), 1.0, Scheme::IfEuler, 1.0, explode);
    FAIL();
  } catch (const BlowUpError& e) {
    EXPECT_EQ(e.step_index(), 1u);
    EXPECT_NEAR(e.last_a1(), 0.1, 1e-15);
    EXPECT_NEAR(e.last_a1_hom(), 0.1, 1e-15);
  }
  const NonlinearRhs nan_rhs = [](const SpectralField& u, double) {
    return SpectralField::constant(u.grid_size(), std::nan(""));
  };
  EXPECT_THROW(step(SimState(cos_mode(kGrid, 1)), 0.1, Scheme::Etdrk2, 1.0, nan_rhs), BlowUpError);
}

TEST(Run, ZeroSpanReturnsInitial) {
  std::mt19937_64 rng(51);
  const SimState initial(random_field(rng, kGrid, 5, 0.1));
  StepperConfig cfg;
  cfg.t_end = 0.0;
  int seen = 0;
  const auto out = run(initial, cfg, 1.0, nullptr, {[&](const SimState&) { ++seen; }});
  EXPECT_EQ(seen, 1);
  EXPECT_EQ(out.step_index(), 0u);
  EXPECT_EQ(max_diff(out.g(), initial.g()), 0.0);
}

TEST(Run, LandsOnEndTime) {
  StepperConfig cfg;
  cfg.dt = 0.1;
  cfg.t_end = 0.35;
  std::vector<double> times;
  const auto out = run(SimState(cos_mode(kGrid, 1)), cfg, 1.0, nullptr, {[&](const SimState& s) { times.push_back(s.t()); }});
  EXPECT_EQ(out.step_index(), 4u);
  EXPECT_EQ(out.t(), 0.35);
  ASSERT_EQ(times.size(), 5u);
  EXPECT_NEAR(times[3], 0.3, 1e-15);
  EXPECT_LT(max_diff(out.g(), cos_mode(kGrid, 1, std::exp(-0.35))), 1e-15);
}

TEST(Run, HalfStepsAgreeToSecondOrder) {
  std::mt19937_64 rng(52);
  const auto g = random_field(rng, kGrid, 2, 0.2);
  const auto rhs = manufactured_rhs(0.5);
  double prev = 0.0;
  for (double h : {0.01, 0.005, 0.0025}) {
    const auto one = step(SimState(g), h, Scheme::IfEuler, 0.5, rhs);
    const auto two = step(step(SimState(g), h / 2, Scheme::IfEuler, 0.5, rhs), h / 2, Scheme::IfEuler, 0.5, rhs);
    const double diff = max_diff(one.g(), two.g());
    if (prev > 0.0) EXPECT_NEAR(prev / diff, 4.0, 0.3);
    prev = diff;
  }
}

TEST(Run, PureDissipationDecaysMonotonically) {
  std::mt19937_64 rng(53);
  StepperConfig cfg;
  cfg.dt = 1e-2;
  cfg.t_end = 5.0;
  double last = INFINITY;
  bool monotone = true;
  run(SimState(random_field(rng, kGrid, 7, 0.1)), cfg, 1.0, nullptr, {[&](const SimState& s) {
        const double a1 = wiener_norm(s.g(), 1, true);
        monotone = monotone && a1 <= last;
        last = a1;
      }});
  EXPECT_TRUE(monotone);
}

TEST(Run, BlowUpKeepsObserverOutput) {
  const NonlinearRhs grow = [](const SpectralField& u, double) { return 50.0 * u; };
  StepperConfig cfg;
  cfg.dt = 0.1;
  cfg.t_end = 10.0;
  std::size_t seen = 0;
  try {
    run(SimState(cos_mode(kGrid, 1, 0.1)), cfg, 1.0, grow, {[&](const SimState&) { ++seen; }});
    FAIL();
  } catch (const BlowUpError& e) {
    EXPECT_EQ(seen, e.step_index());
    EXPECT_GT(seen, 1u);
  }
}

TEST(Run, InitialInterfaceIsShared) {
  StepperConfig cfg;
  cfg.dt = 0.1;
  cfg.t_end = 0.3;
  const SimState initial(cos_mode(kGrid, 1));
  std::vector<const SpectralField*> g0s;
  run(initial, cfg, 1.0, nullptr, {[&](const SimState& s) { g0s.push_back(&s.g0()); }});
  for (const auto* p : g0s) EXPECT_EQ(p, &initial.g0());
}

TEST(StepperConfig, ValidationAndNames) {
  StepperConfig cfg;
  cfg.validate();
  cfg.dt = 0.0;
  EXPECT_THROW(cfg.validate(), InvalidInput);
  cfg.dt = 0.1;
  cfg.t_end = -1.0;
  EXPECT_THROW(cfg.validate(), InvalidInput);
  for (Scheme s : kSchemes) EXPECT_EQ(parse_scheme(scheme_name(s)), s);
  EXPECT_THROW(parse_scheme("rk4"), InvalidInput);
  EXPECT_NEAR(StepperConfig::default_dt(1.0, 16, 1.0), 0.5 / (7.0 * 7 * 7), 1e-16);
}
