#include "tumorsim/forcing.hpp"

#include <cmath>
#include <functional>
#include <string>

#include <algorithm>

#include "tumorsim/depth_integral.hpp"
#include "tumorsim/errors.hpp"

namespace tumorsim {
namespace {

constexpr double kSeriesThreshold = 1e-2;
constexpr int kSeriesTerms = 14;

// (e^x - 1)/x
double expm1_ratio(double x) {
  if (std::abs(x) >= kSeriesThreshold) return std::expm1(x) / x;
  double term = 1.0, sum = 1.0;
  for (int n = 1; n < kSeriesTerms; ++n) {
    term *= x / (n + 1);
    sum += term;
  }
  return sum;
}

// (x e^x - e^x + 1)/x² = Σ_{n≥1} n x^{n-1}/(n+1)!
double m_ratio(double x) {
  if (std::abs(x) >= kSeriesThreshold) return (x * std::exp(x) - std::expm1(x)) / (x * x);
  double power = 1.0, factorial = 2.0, sum = 0.0;
  for (int n = 1; n < kSeriesTerms; ++n) {
    sum += n * power / factorial;
    power *= x;
    factorial *= n + 2;
  }
  return sum;
}

// e^{-N₂t} c(t), written without e^{(N₂-N₁)t} so it cannot overflow.
double decayed_l_coefficient(const ModelParams& p, double t) {
  const double d = p.n2 - p.n1;
  if (std::abs(d * t) < kSeriesThreshold) return p.n3 * t * std::exp(-p.n2 * t) * expm1_ratio(d * t);
  return p.n3 * (std::exp(-p.n1 * t) - std::exp(-p.n2 * t)) / d;
}

SpectralField mode_zero(int grid_size, double value) { return SpectralField::constant(grid_size, value); }

}  // namespace

ProfileData ProfileData::depth_only(int grid_size, const DepthProfile& s, const DepthProfile& b) {
  return {SeparableField::depth_only(grid_size, s), SeparableField::depth_only(grid_size, b)};
}

ProfileData ProfileData::modulated(const SpectralField& s_modulation, const DepthProfile& s,
                                   const SpectralField& b_modulation, const DepthProfile& b) {
  if (s_modulation.grid_size() != b_modulation.grid_size()) {
    throw InvalidInput("profile modulations must share a grid");
  }
  return {SeparableField::from_profile(s_modulation, s),
          SeparableField::from_profile(b_modulation, b)};
}

double kernel_L_coefficient(const ModelParams& p, double t) {
  return p.n3 * t * expm1_ratio((p.n2 - p.n1) * t);
}

double kernel_L(const DepthProfile& s, const DepthProfile& b, const ModelParams& p, double x2,
                double t) {
  if (x2 > 0.0) throw InvalidInput("kernel_L: x2 must be <= 0");
  if (t < 0.0) throw InvalidInput("kernel_L: t must be >= 0");
  return s(x2) - kernel_L_coefficient(p, t) * b(x2);
}

SeparableField kernel_L(const ProfileData& data, const ModelParams& p, double t) {
  return data.s - data.b.scaled(kernel_L_coefficient(p, t));
}

double m_of_t(const ModelParams& p, double t) {
  if (t < 0.0) throw InvalidInput("m_of_t: t must be >= 0");
  const double scale = p.n3 * (1.0 - p.alpha_ratio);
  if (scale == 0.0 || t == 0.0) return 0.0;
  const double d = p.n2 - p.n1;
  if (std::abs(d * t) < kSeriesThreshold) return scale * std::exp(-p.n2 * t) * t * t * m_ratio(d * t);
  return scale / d * (t * std::exp(-p.n1 * t) - (std::exp(-p.n1 * t) - std::exp(-p.n2 * t)) / d);
}

SeparableField nutrient_order0(const ProfileData& data, const ModelParams& p, double t) {
  return data.s.scaled(std::exp(-p.n2 * t)) - data.b.scaled(decayed_l_coefficient(p, t));
}

SeparableField inhibitor_order0(const ProfileData& data, const ModelParams& p, double t) {
  return data.b.scaled(std::exp(-p.n1 * t));
}

SeparableField pressure_source(const ProfileData& data, const ModelParams& p, double t) {
  const SeparableField s0 = nutrient_order0(data, p, t);
  const SeparableField b0 = inhibitor_order0(data, p, t);
  return s0.laplacian().scaled(p.theta) - s0.scaled(p.rho) + b0.scaled(p.rho * p.tau);
}

SpectralField k0_general(const ProfileData& data, const ModelParams& p, double t) {
  const SeparableField s0 = nutrient_order0(data, p, t);
  const SeparableField b0 = inhibitor_order0(data, p, t);
  SpectralField out = -p.theta * s0.laplacian().lift_integral();
  out += p.rho * (s0 - b0.scaled(p.tau)).lift_integral();
  out += p.theta * s0.d2().trace();
  return out;
}

SpectralField k1_tilde_1(const SpectralField& g, const SpectralField& g0, const ProfileData& data,
                         const ModelParams& p, double t) {
  if (g.grid_size() != g0.grid_size() || g.grid_size() != data.grid_size()) {
    throw InvalidInput("k1_tilde_1: grid sizes differ");
  }
  const SeparableField s0 = nutrient_order0(data, p, t);
  const SeparableField b0 = inhibitor_order0(data, p, t);
  const double m = m_of_t(p, t);

  SpectralField out = p.theta * q_alpha(g, g0, s0.laplacian(), 1.0, t).lift_integral();
  out -= p.rho * q_alpha(g, g0, s0, 1.0, t).lift_integral();
  out += p.rho * p.tau * q_alpha(g, g0, b0, p.alpha_ratio, t).lift_integral();
  out -= r1_operator(g, s0).lift_integral();
  if (m != 0.0) {
    const SeparableField lap_b = data.b.laplacian();
    out += (p.theta * m) * lap_b.laplacian().lift_integral();
    out -= (p.rho * m) * lap_b.lift_integral();
  }
  return out;
}

SpectralField k2_tilde_1(const SpectralField& g, const SpectralField& g0, const ProfileData& data,
                         const ModelParams& p, double t) {
  if (g.grid_size() != g0.grid_size() || g.grid_size() != data.grid_size()) {
    throw InvalidInput("k2_tilde_1: grid sizes differ");
  }
  if (p.theta == 0.0) return SpectralField(g.grid_size());
  const SeparableField s0 = nutrient_order0(data, p, t);
  SpectralField out = q_alpha(g, g0, s0.d2(), 1.0, t).trace();
  const double m = m_of_t(p, t);
  if (m != 0.0) out += m * data.b.laplacian().d2().trace();
  out -= multiply(derivative(g, 1), s0.d1().trace());
  return p.theta * out;
}

std::vector<Complex> pressure_depth_weights(const ProfileData& data, const ModelParams& p,
                                            double t) {
  const SpectralField moments = pressure_source(data, p, t).depth_moment();
  std::vector<Complex> weights(moments.modes().begin(), moments.modes().end());
  weights[0] *= -1.0;
  for (std::size_t m = 1; m < weights.size(); ++m) weights[m] *= -0.5;
  return weights;
}

SpectralField i_tilde(const SpectralField& g, const ProfileData& data, const ModelParams& p,
                      double t, int mode_cutoff) {
  if (g.grid_size() != data.grid_size()) throw InvalidInput("i_tilde: grid sizes differ");
  if (mode_cutoff < 0 || mode_cutoff > g.max_mode()) {
    throw InvalidInput("i_tilde: mode_cutoff must lie in [0, K_max]");
  }
  const std::vector<Complex> weights = pressure_depth_weights(data, p, t);
  const auto weight = [&](int m) { return m >= 0 ? weights[m] : std::conj(weights[-m]); };
  const int kmax = g.max_mode();
  std::vector<Complex> modes(kmax + 1);
  for (int k = 0; k <= kmax; ++k) {
    Complex sum{};
    for (int m = -mode_cutoff; m <= mode_cutoff; ++m) {
      const int q = k - m;
      if (std::abs(q) > kmax) continue;
      sum += static_cast<double>(q) * static_cast<double>(k + m) * g.coeff(q) * weight(m);
    }
    modes[k] = -sum;
  }
  return SpectralField::from_modes(g.grid_size(), modes);
}

SpectralField pressure_order0(const SpectralField& g0, const ProfileData& data,
                              const ModelParams& p, double t, double x2) {
  if (x2 > 0.0) throw InvalidInput("pressure_order0: x2 must be <= 0");
  if (g0.grid_size() != data.grid_size()) throw InvalidInput("pressure_order0: grid sizes differ");
  const SeparableField w = pressure_source(data, p, t);
  const int kmax = g0.max_mode();
  std::vector<Complex> modes(kmax + 1);
  for (int k = 0; k <= kmax; ++k) {
    const double mu = k;
    modes[k] = p.eta * mu * mu * g0.coeff(k) * std::exp(mu * x2);
  }
  for (const auto& term : w.terms()) {
    const DepthProfile& phi = term.profile;
    const int d = term.order;
    const TailBound tail = phi.tail(d);
    std::vector<double> cuts = phi.kind() == DepthProfile::Kind::Table ? phi.knots()
                                                                       : std::vector<double>{};
    cuts.push_back(x2);
    const double start = std::min(tail.start, x2);
    for (int k = 0; k <= kmax; ++k) {
      const Complex amp = term.coef * term.modulation.coeff(k);
      if (amp == Complex{}) continue;
      double value = 0.0;
      if (k == 0) {
        // u(x₂) = x₂∫_{-∞}^{x₂} w + ∫_{x₂}^0 y w(y) dy
        const TailBound bound{start, tail.rate,
                              tail.envelope * std::exp(tail.rate * (start - tail.start)) *
                                  std::max(std::abs(x2), 1e-300)};
        value = depth_integral(
            [&](double y) { return (y <= x2 ? x2 : y) * phi.derivative(y, d); }, 0, bound, cuts);
      } else {
        const double mu = k;
        const TailBound bound{start, tail.rate + mu,
                              tail.envelope * std::exp(tail.rate * (start - tail.start)) *
                                  std::exp(mu * (start - x2))};
        const double spread = depth_integral(
            [&](double y) { return std::exp(-mu * std::abs(x2 - y)) * phi.derivative(y, d); }, 0,
            bound, cuts);
        const double surface = DepthMomentCache::shared().moment(phi, d, k);
        value = (surface * std::exp(mu * x2) - spread) / (2.0 * mu);
      }
      modes[k] += amp * value;
    }
  }
  return SpectralField::from_modes(g0.grid_size(), modes);
}

void require_particular_regime(const ProfileData& data, const ModelParams& p) {
  if (!data.depth_only()) throw InvalidInput("particular mode: profiles must depend on depth only");
  for (const auto* field : {&data.s, &data.b}) {
    if (field->terms().size() != 1 || field->terms().front().order != 0 ||
        field->terms().front().profile.kind() != DepthProfile::Kind::ExpSine) {
      throw InvalidInput("particular mode: profiles must be exp-sine");
    }
  }
  if (std::abs(p.n1 - p.n2) > 1e-12 * std::max(1.0, std::abs(p.n1))) {
    throw InvalidInput("n1: particular mode requires n1 = n2");
  }
  if (std::abs(p.tau - 1.0) > 1e-12) throw InvalidInput("tau: particular mode requires tau = 1");
  if (std::abs(p.alpha_ratio - 1.0) > 1e-12) {
    throw InvalidInput("alpha_ratio: particular mode requires alpha_ratio = 1");
  }
}

namespace {

double exp_sine_amplitude(const SeparableField& field) {
  const auto& term = field.terms().front();
  return term.coef * term.modulation.mean() * term.profile.amplitude();
}

}  // namespace

ForcingBundle::ForcingBundle(ProfileData data, ModelParams params, ForcingMode mode,
                             int mode_cutoff)
    : data_(std::move(data)), params_(params), mode_(mode), mode_cutoff_(mode_cutoff) {
  params_.validate();
  const int kmax = data_.grid_size() / 2 - 1;
  if (mode_cutoff_ < 0) mode_cutoff_ = kmax;
  if (mode_cutoff_ > kmax) throw InvalidInput("mode_cutoff must be <= K_max");
  if (mode_ == ForcingMode::Particular) {
    require_particular_regime(data_, params_);
    c_s_ = exp_sine_amplitude(data_.s);
    c_b_ = exp_sine_amplitude(data_.b);
  }
}

SpectralField ForcingBundle::k0(double t) const {
  if (mode_ == ForcingMode::General) return k0_general(data_, params_, t);
  const double alpha = c_s_ - params_.n3 * c_b_ * t;
  return mode_zero(data_.grid_size(), -0.5 * std::exp(-params_.n2 * t) * params_.rho * (alpha - c_b_));
}

SpectralField ForcingBundle::k1_tilde(const SpectralField& g, const SpectralField& g0,
                                      double t) const {
  if (mode_ == ForcingMode::General) {
    SpectralField out = k2_tilde_1(g, g0, data_, params_, t);
    out -= k1_tilde_1(g, g0, data_, params_, t);
    out -= i_tilde(g, data_, params_, t, mode_cutoff_);
    return out;
  }
  const ModelParams& p = params_;
  const double e = std::exp(-p.n2 * t);
  const double alpha = c_s_ - p.n3 * c_b_ * t;
  const SpectralField diff = g - g0;
  const int n = g.grid_size();
  SpectralField k1 = (2.0 * p.theta * e * alpha) * diff +
                     mode_zero(n, e * alpha * (2.0 * p.theta - p.rho) * t + p.rho * e * t * c_b_);
  SpectralField k2 = (p.theta * e * 2.0 * alpha) * (diff + mode_zero(n, t));
  return k2 - k1 - (0.5 * p.rho * alpha * e) * derivative(g, 2);
}

SpectralField ForcingBundle::l1_trace(double t) const {
  if (mode_ == ForcingMode::Particular) return SpectralField(data_.grid_size());
  return nutrient_order0(data_, params_, t).d1().trace();
}

}  // namespace tumorsim
