#include "tumorsim/model_rhs.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "tumorsim/errors.hpp"

namespace tumorsim {
namespace {

void require_particular_params(const ModelParams& p) {
  if (std::abs(p.n1 - p.n2) > 1e-12 * std::max(1.0, std::abs(p.n1))) {
    throw InvalidInput("n1: particular mode requires n1 = n2");
  }
  if (std::abs(p.tau - 1.0) > 1e-12) throw InvalidInput("tau: particular mode requires tau = 1");
  if (std::abs(p.alpha_ratio - 1.0) > 1e-12) {
    throw InvalidInput("alpha_ratio: particular mode requires alpha_ratio = 1");
  }
}

void require_same_grid(const SpectralField& a, const SpectralField& b) {
  if (a.grid_size() != b.grid_size()) throw InvalidInput("rhs: g and g0 grid sizes differ");
}

}  // namespace

SpectralField commutator_term(const SpectralField& g) {
  const SpectralField hg3 = hilbert(derivative(g, 3));
  return derivative(hilbert(multiply(g, hg3)) - multiply(g, hilbert(hg3)), 1);
}

double particular_alpha(const ExpSineData& data, const ModelParams& p, double t) {
  return data.c_s - p.n3 * data.c_b * t;
}

SpectralField rhs_particular_nonstiff(const SpectralField& g, const SpectralField& g0, double t,
                                      const ModelParams& p, const ExpSineData& data) {
  require_particular_params(p);
  require_same_grid(g, g0);
  const int n = g.grid_size();
  const double e = std::exp(-p.n2 * t);
  const double alpha = particular_alpha(data, p, t);
  const double eps = p.eps;
  const SpectralField diff = g - g0;

  SpectralField out = (eps * p.eta) * commutator_term(g);
  out -= eps * ((2.0 * p.theta * e * alpha) * diff +
                SpectralField::constant(n, e * alpha * (2.0 * p.theta - p.rho) * t +
                                               p.rho * e * t * data.c_b));
  out += (p.theta * eps * e * 2.0 * alpha) * (diff + SpectralField::constant(n, t));
  out -= (eps * 0.5 * p.rho * alpha * e) * derivative(g, 2);
  out -= SpectralField::constant(n, 0.5 * e * p.rho * (alpha - data.c_b));
  return out;
}

SpectralField rhs_particular(const SpectralField& g, const SpectralField& g0, double t,
                             const ModelParams& p, const ExpSineData& data) {
  return rhs_particular_nonstiff(g, g0, t, p, data) - p.eta * lambda_pow(g, 3.0);
}

SpectralField rhs_particular_collapsed(const SpectralField& g, const SpectralField& g0, double t,
                                       const ModelParams& p, const ExpSineData& data) {
  require_particular_params(p);
  require_same_grid(g, g0);
  const int n = g.grid_size();
  const double e = std::exp(-p.n2 * t);
  const double alpha = particular_alpha(data, p, t);
  SpectralField out = -p.eta * lambda_pow(g, 3.0) + (p.eps * p.eta) * commutator_term(g);
  out += SpectralField::constant(n, p.eps * e * p.rho * t * (alpha - data.c_b));
  out -= (p.eps * e * 0.5 * p.rho * alpha) * derivative(g, 2);
  out -= SpectralField::constant(n, 0.5 * e * p.rho * (alpha - data.c_b));
  return out;
}

void RhsConfig::validate() const {
  params.validate();
  if (g0.grid_size() != profiles.grid_size()) {
    throw InvalidInput("g0 and profile modulations must share a grid");
  }
  if (mode == ForcingMode::Particular) require_particular_regime(profiles, params);
}

SpectralField rhs_general_nonstiff(const SpectralField& g, const SpectralField& g0, double t,
                                   const ForcingBundle& forcing) {
  require_same_grid(g, g0);
  const ModelParams& p = forcing.params();
  SpectralField out = forcing.k0(t);
  if (p.eps != 0.0) {
    out += (p.eps * p.eta) * commutator_term(g);
    if (p.theta != 0.0 && !forcing.data().depth_only()) {
      out -= (p.eps * p.theta) * multiply(g, forcing.l1_trace(t));
    }
    out += p.eps * forcing.k1_tilde(g, g0, t);
  }
  return out;
}

SpectralField rhs_general(const SpectralField& g, const SpectralField& g0, double t,
                          const ForcingBundle& forcing) {
  return rhs_general_nonstiff(g, g0, t, forcing) - forcing.params().eta * lambda_pow(g, 3.0);
}

SpectralField rhs_general(const SpectralField& g, const SpectralField& g0, double t,
                          const RhsConfig& cfg) {
  cfg.validate();
  const ForcingBundle forcing(cfg.profiles, cfg.params, ForcingMode::General);
  return rhs_general(g, g0, t, forcing);
}

NonlinearRhs make_nonstiff_rhs(const RhsConfig& cfg, int mode_cutoff) {
  cfg.validate();
  const SpectralField g0 = cfg.g0;
  if (cfg.mode == ForcingMode::Particular) {
    const auto& s = cfg.profiles.s.terms().front();
    const auto& b = cfg.profiles.b.terms().front();
    const ExpSineData data{s.coef * s.modulation.mean() * s.profile.amplitude(),
                           b.coef * b.modulation.mean() * b.profile.amplitude()};
    const ModelParams p = cfg.params;
    return [g0, p, data](const SpectralField& g, double t) {
      return rhs_particular_nonstiff(g, g0, t, p, data);
    };
  }
  auto forcing = std::make_shared<const ForcingBundle>(cfg.profiles, cfg.params,
                                                       ForcingMode::General, mode_cutoff);
  return [g0, forcing](const SpectralField& g, double t) {
    return rhs_general_nonstiff(g, g0, t, *forcing);
  };
}

}  // namespace tumorsim
