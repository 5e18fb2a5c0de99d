#include "tumorsim/spectral_field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fft_backend.hpp"
#include "tumorsim/errors.hpp"

namespace tumorsim {
namespace {

void check_grid(int grid_size) {
  if (grid_size < 4 || grid_size % 2 != 0) {
    throw InvalidInput("grid size must be even and at least 4, got " +
                       std::to_string(grid_size));
  }
}

// Smallest even padded length that keeps products of K_max-limited fields
// alias-free on the retained band (needs M > 3 K_max).
int padded_length(int grid_size) {
  int padded = (3 * grid_size) / 2;
  if (padded % 2 != 0) ++padded;
  return padded;
}

}  // namespace

SpectralField::SpectralField(int grid_size) : grid_size_(grid_size) {
  check_grid(grid_size);
  modes_.assign(static_cast<std::size_t>(grid_size / 2), Complex(0.0, 0.0));
}

SpectralField SpectralField::from_samples(std::span<const double> values) {
  const int n = static_cast<int>(values.size());
  check_grid(n);
  for (double v : values) {
    if (!std::isfinite(v)) throw InvalidInput("samples must be finite");
  }
  std::vector<Complex> bins(static_cast<std::size_t>(n / 2 + 1));
  detail::forward_real(values, bins);
  SpectralField out(n);
  const double scale = 1.0 / n;
  for (std::size_t k = 0; k < out.modes_.size(); ++k) out.modes_[k] = bins[k] * scale;
  out.modes_[0] = Complex(out.modes_[0].real(), 0.0);
  return out;
}

SpectralField SpectralField::from_modes(int grid_size, std::span<const Complex> modes) {
  SpectralField out(grid_size);
  if (modes.size() > out.modes_.size()) {
    throw InvalidInput("more modes than the grid can hold: " + std::to_string(modes.size()) +
                       " > " + std::to_string(out.modes_.size()));
  }
  std::copy(modes.begin(), modes.end(), out.modes_.begin());
  out.modes_[0] = Complex(out.modes_[0].real(), 0.0);
  return out;
}

SpectralField SpectralField::constant(int grid_size, double value) {
  SpectralField out(grid_size);
  out.modes_[0] = Complex(value, 0.0);
  return out;
}

Complex SpectralField::coeff(int k) const noexcept {
  const int kk = std::abs(k);
  if (kk > max_mode()) return {0.0, 0.0};
  const Complex c = modes_[static_cast<std::size_t>(kk)];
  return k < 0 ? std::conj(c) : c;
}

std::vector<double> SpectralField::to_samples() const {
  std::vector<Complex> bins(static_cast<std::size_t>(grid_size_ / 2 + 1), Complex(0.0, 0.0));
  std::copy(modes_.begin(), modes_.end(), bins.begin());
  std::vector<double> values(static_cast<std::size_t>(grid_size_));
  detail::inverse_real(bins, values);
  return values;
}

double SpectralField::evaluate(double x) const noexcept {
  double sum = modes_[0].real();
  for (std::size_t k = 1; k < modes_.size(); ++k) {
    const double phase = static_cast<double>(k) * x;
    sum += 2.0 * (modes_[k].real() * std::cos(phase) - modes_[k].imag() * std::sin(phase));
  }
  return sum;
}

SpectralField SpectralField::resized(int new_grid_size) const {
  SpectralField out(new_grid_size);
  const std::size_t n = std::min(out.modes_.size(), modes_.size());
  std::copy_n(modes_.begin(), n, out.modes_.begin());
  return out;
}

bool SpectralField::all_finite() const noexcept {
  return std::all_of(modes_.begin(), modes_.end(), [](const Complex& c) {
    return std::isfinite(c.real()) && std::isfinite(c.imag());
  });
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  if (other.grid_size_ != grid_size_) throw InvalidInput("grid size mismatch in addition");
  for (std::size_t k = 0; k < modes_.size(); ++k) modes_[k] += other.modes_[k];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  if (other.grid_size_ != grid_size_) throw InvalidInput("grid size mismatch in subtraction");
  for (std::size_t k = 0; k < modes_.size(); ++k) modes_[k] -= other.modes_[k];
  return *this;
}

SpectralField& SpectralField::operator*=(double scale) noexcept {
  for (auto& c : modes_) c *= scale;
  return *this;
}

SpectralField operator+(SpectralField lhs, const SpectralField& rhs) { return lhs += rhs; }
SpectralField operator-(SpectralField lhs, const SpectralField& rhs) { return lhs -= rhs; }
SpectralField operator-(SpectralField field) { return field *= -1.0; }
SpectralField operator*(double scale, SpectralField field) { return field *= scale; }
SpectralField operator*(SpectralField field, double scale) { return field *= scale; }

SpectralField hilbert(const SpectralField& g) {
  return g.apply_multiplier([](int k) { return k == 0 ? Complex(0.0, 0.0) : Complex(0.0, -1.0); });
}

SpectralField lambda_pow(const SpectralField& g, double s) {
  if (!(s >= 0.0) || !std::isfinite(s)) {
    throw InvalidInput("lambda_pow needs a finite order s >= 0");
  }
  if (s == 0.0) return g;
  return g.apply_multiplier([s](int k) { return Complex(std::pow(static_cast<double>(k), s), 0.0); });
}

SpectralField derivative(const SpectralField& g, int order) {
  if (order < 1) throw InvalidInput("derivative order must be positive");
  return g.apply_multiplier([order](int k) {
    // (ik)^order without going through complex pow.
    const double mag = std::pow(static_cast<double>(k), order);
    switch (order % 4) {
      case 0: return Complex(mag, 0.0);
      case 1: return Complex(0.0, mag);
      case 2: return Complex(-mag, 0.0);
      default: return Complex(0.0, -mag);
    }
  });
}

SpectralField multiply(const SpectralField& f, const SpectralField& g) {
  if (f.grid_size() != g.grid_size()) {
    throw InvalidInput("multiply: grid sizes differ (" + std::to_string(f.grid_size()) + " vs " +
                       std::to_string(g.grid_size()) + ")");
  }
  const int padded = padded_length(f.grid_size());
  const auto fp = f.resized(padded).to_samples();
  const auto gp = g.resized(padded).to_samples();
  std::vector<double> product(fp.size());
  for (std::size_t j = 0; j < product.size(); ++j) product[j] = fp[j] * gp[j];
  return SpectralField::from_samples(product).resized(f.grid_size());
}

double wiener_norm(const SpectralField& g, double s, bool homogeneous) {
  if (!(s >= 0.0)) throw InvalidInput("wiener_norm needs s >= 0");
  const auto modes = g.modes();
  double sum = homogeneous ? 0.0 : std::abs(modes[0]);
  for (std::size_t k = 1; k < modes.size(); ++k) {
    sum += 2.0 * std::pow(static_cast<double>(k), s) * std::abs(modes[k]);
  }
  return sum;
}

}  // namespace tumorsim
