#include "tumorsim/oracles.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "tumorsim/depth_integral.hpp"
#include "tumorsim/errors.hpp"
#include "tumorsim/forcing.hpp"
#include "tumorsim/model_rhs.hpp"

namespace tumorsim::oracles {
namespace {

using GL = boost::math::quadrature::gauss<double, 20>;

constexpr double kDepthCut = -40.0;

// Coefficients for k = -K..K stored at index k + K.
struct Modes {
  int kmax;
  std::vector<Complex> c;

  explicit Modes(int k) : kmax(k), c(2 * k + 1) {}
  Complex& at(int k) { return c[k + kmax]; }
  Complex get(int k) const { return std::abs(k) > kmax ? Complex{} : c[k + kmax]; }
};

Modes unpack(const SpectralField& f) {
  Modes m(f.max_mode());
  for (int k = -m.kmax; k <= m.kmax; ++k) m.at(k) = f.coeff(k);
  return m;
}

SpectralField pack(const Modes& m, int grid_size) {
  std::vector<Complex> modes(m.kmax + 1);
  for (int k = 0; k <= m.kmax; ++k) modes[k] = m.get(k);
  return SpectralField::from_modes(grid_size, modes);
}

Modes convolve(const Modes& f, const Modes& g) {
  Modes out(f.kmax);
  for (int k = -f.kmax; k <= f.kmax; ++k) {
    Complex sum{};
    for (int p = -f.kmax; p <= f.kmax; ++p) sum += f.get(p) * g.get(k - p);
    out.at(k) = sum;
  }
  return out;
}

Modes scale_modes(const Modes& f, const std::function<Complex(int)>& m) {
  Modes out(f.kmax);
  for (int k = -f.kmax; k <= f.kmax; ++k) out.at(k) = m(k) * f.get(k);
  return out;
}

Modes lambda_modes(const Modes& f, int power) {
  return scale_modes(f, [power](int k) { return Complex(std::pow(std::abs(k), power), 0.0); });
}

Modes d_modes(const Modes& f) {
  return scale_modes(f, [](int k) { return Complex(0.0, k); });
}

std::vector<SpectralField> random_fields(int count, int grid_size, int active, std::uint64_t seed,
                                         double scale) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<SpectralField> out;
  for (int i = 0; i < count; ++i) {
    std::vector<Complex> modes(grid_size / 2);
    modes[0] = u(rng) * scale;
    for (int k = 1; k <= active && k < grid_size / 2; ++k) modes[k] = {u(rng) * scale, u(rng) * scale};
    out.push_back(SpectralField::from_modes(grid_size, modes));
  }
  return out;
}

double max_coeff_error(const SpectralField& a, const SpectralField& b) {
  double err = 0.0;
  const int kmax = std::max(a.max_mode(), b.max_mode());
  for (int k = 0; k <= kmax; ++k) err = std::max(err, std::abs(a.coeff(k) - b.coeff(k)));
  return err;
}

double integrate(const std::function<double(double)>& f, double a, double b) {
  if (b <= a) return 0.0;
  double total = 0.0;
  const int pieces = std::max(1, static_cast<int>(std::ceil(b - a)));
  const double h = (b - a) / pieces;
  for (int i = 0; i < pieces; ++i) {
    const double lo = a + i * h;
    total += GL::integrate(f, lo, i + 1 == pieces ? b : lo + h);
  }
  return total;
}

}  // namespace

OracleReport make_report(std::string name, double max_error, double tolerance) {
  return {std::move(name), max_error, tolerance, std::isfinite(max_error) && max_error <= tolerance};
}

SpectralField convolve_direct(const SpectralField& f, const SpectralField& g) {
  if (f.grid_size() != g.grid_size()) throw InvalidInput("convolve_direct: grid sizes differ");
  if (f.max_mode() + 1 > 64) throw InvalidInput("convolve_direct: refuses more than 64 modes");
  return pack(convolve(unpack(f), unpack(g)), f.grid_size());
}

double depth_integral_closed(double a, Trig trig) {
  if (!(a > 0.0)) throw InvalidInput("depth_integral_closed: a must be > 0");
  return trig == Trig::Sin ? -1.0 / (a * a + 1.0) : a / (a * a + 1.0);
}

Complex trapezoid_coefficient(const std::function<double(double)>& f, int k, int points) {
  Complex sum{};
  for (int j = 0; j < points; ++j) {
    const double x = 2.0 * std::numbers::pi * j / points;
    sum += f(x) * std::polar(1.0, -k * x);
  }
  return sum / static_cast<double>(points);
}

SpectralField commutator_expanded(const SpectralField& g) {
  const Modes m = unpack(g);
  const Modes first = lambda_modes(convolve(m, lambda_modes(m, 3)), 1);
  const Modes second = convolve(m, lambda_modes(m, 4));
  const Modes third = convolve(d_modes(m), d_modes(lambda_modes(m, 2)));
  Modes out(m.kmax);
  for (int k = -m.kmax; k <= m.kmax; ++k) out.at(k) = -first.get(k) + second.get(k) - third.get(k);
  return pack(out, g.grid_size());
}

ParticularForms particular_closed_forms(const SpectralField& g, const SpectralField& g0, double t,
                                        const ModelParams& p, double c_s, double c_b) {
  const int n = g.grid_size();
  const double e = std::exp(-p.n2 * t);
  const double alpha = c_s - p.n3 * c_b * t;
  const Modes gm = unpack(g), g0m = unpack(g0);
  Modes k0(gm.kmax), k1(gm.kmax), k2(gm.kmax), it(gm.kmax);
  for (int k = -gm.kmax; k <= gm.kmax; ++k) {
    const Complex diff = gm.get(k) - g0m.get(k);
    const double one = k == 0 ? 1.0 : 0.0;
    k0.at(k) = one * (-e / 2.0 * p.rho * (alpha - c_b));
    k1.at(k) = 2.0 * p.theta * e * alpha * diff + one * (e * alpha * (2.0 * p.theta - p.rho) * t + p.rho * e * t * c_b);
    k2.at(k) = p.theta * e * 2.0 * alpha * (diff + one * t);
    // -(ρ/2)α e^{-Nt} g,₁₁ with g,₁₁ ↦ -k² ĝ
    it.at(k) = -(p.rho / 2.0) * alpha * e * (-static_cast<double>(k) * k) * gm.get(k);
  }
  return {pack(k0, n), pack(k1, n), pack(k2, n), pack(it, n)};
}

double particular_mean(double mean0, double t, const ModelParams& p, double c_s, double c_b) {
  const double n = p.n2;
  const double decay = std::exp(-n * t);
  return mean0 - (p.rho / 2.0) * ((c_s - c_b) * (1.0 - decay) / n -
                                  p.n3 * c_b * (1.0 - decay * (1.0 + n * t)) / (n * n));
}

double green_depth_weight(const std::function<double(double)>& w, int m) {
  const double mu = std::abs(m);
  if (m == 0) {
    const auto dp = [&](double y) { return integrate(w, kDepthCut, y); };
    return integrate(dp, kDepthCut, 0.0);
  }
  const double a = integrate([&](double y) { return w(y) * std::exp(mu * y); }, kDepthCut, 0.0);
  const auto dp = [&](double y) {
    const double below = integrate([&](double s) { return w(s) * std::exp(-mu * (y - s)); }, kDepthCut, y);
    const double above = integrate([&](double s) { return w(s) * std::exp(-mu * (s - y)); }, y, 0.0);
    return 0.5 * (a * std::exp(mu * y) + below - above);
  };
  return integrate([&](double y) { return std::exp(mu * y) * dp(y); }, kDepthCut, 0.0);
}

double green_pressure(const std::function<double(double)>& w, int m, double y) {
  const double mu = std::abs(m);
  if (m == 0) {
    return y * integrate(w, kDepthCut, y) + integrate([&](double r) { return r * w(r); }, y, 0.0);
  }
  const double a = integrate([&](double s) { return w(s) * std::exp(mu * s); }, kDepthCut, 0.0);
  const double spread = integrate([&](double s) { return w(s) * std::exp(-mu * std::abs(y - s)); }, kDepthCut, y) +
                        integrate([&](double s) { return w(s) * std::exp(-mu * std::abs(y - s)); }, y, 0.0);
  return (a * std::exp(mu * y) - spread) / (2.0 * mu);
}

std::vector<OracleReport> run_verify_suite() {
  std::vector<OracleReport> reports;

  {
    double err = 0.0;
    for (int grid : {16, 32, 64}) {
      const auto fs = random_fields(10, grid, grid / 2 - 1, 11 + grid, 1.0);
      const auto gs = random_fields(10, grid, grid / 2 - 1, 97 + grid, 1.0);
      for (std::size_t i = 0; i < fs.size(); ++i) {
        err = std::max(err, max_coeff_error(multiply(fs[i], gs[i]), convolve_direct(fs[i], gs[i])));
      }
    }
    reports.push_back(make_report("multiply vs direct convolution", err, 1e-13));
  }
  {
    double err = 0.0;
    for (const auto& g : random_fields(20, 32, 8, 5, 0.3)) {
      err = std::max(err, max_coeff_error(commutator_term(g), commutator_expanded(g)));
    }
    reports.push_back(make_report("commutator vs expanded form", err, 1e-12));
  }
  {
    double err = 0.0;
    for (int k = 1; k <= 3; ++k) {
      for (double a : {0.1, 1.0}) {
        std::vector<Complex> modes(16);
        modes[k] = a / 2.0;
        const SpectralField g = SpectralField::from_modes(32, modes);
        err = std::max(err, max_coeff_error(commutator_expanded(g), SpectralField(32)));
        err = std::max(err, max_coeff_error(commutator_term(g), SpectralField(32)));
      }
    }
    reports.push_back(make_report("commutator annihilates single modes", err, 1e-13));
  }
  {
    const auto f = [](double x) { return std::exp(std::sin(x)); };
    std::vector<double> samples(64);
    for (int j = 0; j < 64; ++j) samples[j] = f(2.0 * std::numbers::pi * j / 64);
    const SpectralField g = SpectralField::from_samples(samples);
    double err = 0.0;
    for (int k = 0; k <= g.max_mode(); ++k) err = std::max(err, std::abs(g.coeff(k) - trapezoid_coefficient(f, k, 4096)));
    reports.push_back(make_report("from_samples vs trapezoid quadrature", err, 1e-13));
  }
  {
    const DepthProfile s = DepthProfile::exp_sine(1.0);
    const TailBound tail = s.tail(0);
    double err = 0.0;
    for (int k : {0, 1, 2, 5, 12}) {
      const double fast = depth_integral([&](double y) { return s(y); }, k, tail);
      err = std::max(err, std::abs(fast - depth_integral_closed(1.0 + k, Trig::Sin)));
      const double fast_cos = depth_integral([](double y) { return std::exp(y) * std::cos(y); }, k, tail);
      err = std::max(err, std::abs(fast_cos - depth_integral_closed(1.0 + k, Trig::Cos)));
    }
    reports.push_back(make_report("depth_integral vs antiderivative", err, 1e-10));
  }

  ModelParams p;
  p.eps = 0.1;
  p.eta = 1.0;
  p.theta = 0.7;
  p.rho = 1.3;
  p.n1 = p.n2 = 0.8;
  p.n3 = 0.4;
  const double c_s = 2.0, c_b = 1.0;
  const int grid = 32;
  const ProfileData data =
      ProfileData::depth_only(grid, DepthProfile::exp_sine(c_s), DepthProfile::exp_sine(c_b));
  const auto gs = random_fields(5, grid, 6, 23, 0.05);
  const SpectralField g0 = random_fields(1, grid, 6, 29, 0.05).front();
  {
    double err = 0.0;
    for (double t : {0.0, 0.5, 1.0, 5.0}) {
      const auto closed = particular_closed_forms(g0, g0, t, p, c_s, c_b);
      err = std::max(err, max_coeff_error(k0_general(data, p, t), closed.k0));
    }
    reports.push_back(make_report("K0 general vs closed form", err, 1e-8));
  }
  {
    double err = 0.0;
    for (const auto& g : gs) {
      for (double t : {0.0, 0.7, 2.0}) {
        const auto closed = particular_closed_forms(g, g0, t, p, c_s, c_b);
        err = std::max(err, max_coeff_error(k1_tilde_1(g, g0, data, p, t), closed.k1_tilde_1));
        err = std::max(err, max_coeff_error(k2_tilde_1(g, g0, data, p, t), closed.k2_tilde_1));
      }
    }
    reports.push_back(make_report("K1, K2 general vs closed forms", err, 1e-8));
  }
  {
    // Depth weights D(m) of the bounded pressure against nested quadrature.
    ModelParams q = p;
    q.n2 = 1.1;
    q.tau = 0.6;
    const SpectralField mod_s = random_fields(1, grid, 3, 41, 0.5).front() + SpectralField::constant(grid, 1.0);
    const SpectralField mod_b = random_fields(1, grid, 3, 43, 0.5).front() + SpectralField::constant(grid, 1.0);
    const ProfileData modulated =
        ProfileData::modulated(mod_s, DepthProfile::exp_sine(c_s), mod_b, DepthProfile::exp_sine(c_b));
    const double t = 0.4;
    const auto weights = pressure_depth_weights(modulated, q, t);
    const SeparableField w = pressure_source(modulated, q, t);
    double err = 0.0;
    for (int m = 0; m <= 3; ++m) {
      for (int part = 0; part < 2; ++part) {
        const auto w_hat = [&](double y) {
          Complex sum{};
          for (const auto& term : w.terms()) {
            sum += term.coef * term.modulation.coeff(m) * term.profile.derivative(y, term.order);
          }
          return part == 0 ? sum.real() : sum.imag();
        };
        const double oracle = green_depth_weight(w_hat, m);
        const double fast = part == 0 ? weights[m].real() : weights[m].imag();
        err = std::max(err, std::abs(fast - oracle));
      }
    }
    reports.push_back(make_report("pressure depth weights vs Green quadrature", err, 1e-8));
  }
  {
    double err = 0.0;
    for (const auto& g : gs) {
      const SpectralField trace = pressure_order0(g, data, p, 0.3, 0.0);
      err = std::max(err, max_coeff_error(trace, -p.eta * derivative(g, 2)));
    }
    reports.push_back(make_report("pressure trace equals -eta g0,11", err, 1e-8));
  }
  {
    double err = 0.0;
    for (double t : {0.0, 1.0, 3.0}) {
      const double fast = m_of_t([&] {
        ModelParams q = p;
        q.n2 = q.n1 + 1e-9;
        q.alpha_ratio = 0.5;
        return q;
      }(), t);
      const double limit = p.n3 * 0.5 * t * t / 2.0 * std::exp(-p.n1 * t);
      err = std::max(err, std::abs(fast - limit));
    }
    reports.push_back(make_report("M(t) near-degenerate vs limit", err, 1e-8));
  }
  return reports;
}

}  // namespace tumorsim::oracles
