#include "tumorsim/timestepper.hpp"

#include <cmath>
#include <vector>

#include "tumorsim/errors.hpp"

namespace tumorsim {
namespace {

// φ_n(z) = Σ_j z^j/(j+n)!; the series is used near z = 0 where the closed
// forms cancel.
double phi_series(double z, int n) {
  double factorial = 1.0;
  for (int j = 2; j <= n; ++j) factorial *= j;
  double term = 1.0 / factorial, sum = term;
  for (int j = 1; j < 16; ++j) {
    term *= z / (j + n);
    sum += term;
  }
  return sum;
}

double phi1(double z) { return std::abs(z) < 0.1 ? phi_series(z, 1) : std::expm1(z) / z; }

double phi2(double z) {
  return std::abs(z) < 0.1 ? phi_series(z, 2) : (std::expm1(z) - z) / (z * z);
}

SpectralField with_modes(const SpectralField& like, const std::vector<Complex>& modes) {
  return SpectralField::from_modes(like.grid_size(), modes);
}

}  // namespace

std::string scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::IfEuler:
      return "if-euler";
    case Scheme::IfRk2:
      return "if-rk2";
    case Scheme::Etdrk2:
      return "etdrk2";
  }
  return "etdrk2";
}

Scheme parse_scheme(const std::string& name) {
  if (name == "if-euler") return Scheme::IfEuler;
  if (name == "if-rk2") return Scheme::IfRk2;
  if (name == "etdrk2") return Scheme::Etdrk2;
  throw InvalidInput("unknown scheme '" + name + "' (expected if-euler, if-rk2 or etdrk2)");
}

void StepperConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidInput("dt: must be finite and > 0");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw InvalidInput("t_end: must be finite and >= 0");
  if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) throw InvalidInput("cfl_safety: must lie in (0, 1]");
}

double StepperConfig::default_dt(double eta, int grid_size, double cfl_safety) {
  const double kmax = grid_size / 2 - 1;
  return 0.5 / (eta * kmax * kmax * kmax) * cfl_safety;
}

SimState::SimState(SpectralField g, double t)
    : g_(g), t_(t), g0_(std::make_shared<const SpectralField>(std::move(g))), step_index_(0) {}

SimState::SimState(SpectralField g, double t, std::shared_ptr<const SpectralField> g0,
                   std::size_t step_index)
    : g_(std::move(g)), t_(t), g0_(std::move(g0)), step_index_(step_index) {
  if (!g0_ || g0_->grid_size() != g_.grid_size()) {
    throw InvalidInput("state: initial interface missing or on a different grid");
  }
}

SimState step(const SimState& state, double h, Scheme scheme, double eta, const NonlinearRhs& rhs) {
  const SpectralField& u = state.g();
  const double t = state.t();
  const int kmax = u.max_mode();
  std::vector<double> z(kmax + 1), e(kmax + 1);
  for (int k = 0; k <= kmax; ++k) {
    const double kk = k;
    z[k] = -eta * kk * kk * kk * h;
    e[k] = std::exp(z[k]);
  }
  std::vector<Complex> next(kmax + 1);

  if (rhs) {
    const SpectralField n0 = rhs(u, t);
    if (n0.grid_size() != u.grid_size()) throw InvalidInput("step: rhs returned another grid");
    switch (scheme) {
      case Scheme::IfEuler:
        for (int k = 0; k <= kmax; ++k) next[k] = e[k] * (u.coeff(k) + h * n0.coeff(k));
        break;
      case Scheme::IfRk2: {
        std::vector<Complex> a(kmax + 1);
        for (int k = 0; k <= kmax; ++k) a[k] = e[k] * (u.coeff(k) + h * n0.coeff(k));
        const SpectralField n1 = rhs(with_modes(u, a), t + h);
        for (int k = 0; k <= kmax; ++k) {
          next[k] = e[k] * u.coeff(k) + 0.5 * h * (e[k] * n0.coeff(k) + n1.coeff(k));
        }
        break;
      }
      case Scheme::Etdrk2: {
        std::vector<Complex> a(kmax + 1);
        for (int k = 0; k <= kmax; ++k) a[k] = e[k] * u.coeff(k) + h * phi1(z[k]) * n0.coeff(k);
        const SpectralField n1 = rhs(with_modes(u, a), t + h);
        for (int k = 0; k <= kmax; ++k) {
          next[k] = a[k] + h * phi2(z[k]) * (n1.coeff(k) - n0.coeff(k));
        }
        break;
      }
    }
  } else {
    for (int k = 0; k <= kmax; ++k) next[k] = e[k] * u.coeff(k);
  }

  SpectralField g = with_modes(u, next);
  const std::size_t index = state.step_index() + 1;
  if (!g.all_finite() || wiener_norm(g, 1.0, false) > kBlowUpThreshold) {
    throw BlowUpError("blow-up at step " + std::to_string(index) + ", t = " + std::to_string(t + h),
                      index, t + h, wiener_norm(u, 1.0, false), wiener_norm(u, 1.0, true));
  }
  return SimState(std::move(g), t + h, state.shared_g0(), index);
}

SimState step(const SimState& state, const StepperConfig& cfg, double eta, const NonlinearRhs& rhs) {
  cfg.validate();
  return step(state, cfg.dt, cfg.scheme, eta, rhs);
}

SimState run(const SimState& initial, const StepperConfig& cfg, double eta, const NonlinearRhs& rhs,
             const std::vector<Observer>& observers) {
  cfg.validate();
  if (!(eta > 0.0)) throw InvalidInput("eta: must be > 0");
  for (const auto& observe : observers) observe(initial);
  const double t0 = initial.t();
  const double span = cfg.t_end - t0;
  if (span <= 0.0) return initial;
  const auto steps = static_cast<std::size_t>(std::ceil(span / cfg.dt - 1e-9));
  SimState state = initial;
  for (std::size_t i = 0; i < steps; ++i) {
    const double target = i + 1 == steps ? cfg.t_end : t0 + static_cast<double>(i + 1) * cfg.dt;
    state = step(state, target - state.t(), cfg.scheme, eta, rhs);
    for (const auto& observe : observers) observe(state);
  }
  return state;
}

}  // namespace tumorsim
