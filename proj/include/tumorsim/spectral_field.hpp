#pragma once

#include <complex>
#include <span>
#include <vector>

namespace tumorsim {

using Complex = std::complex<double>;

/// A real 2π-periodic function stored by its Fourier coefficients.
///
/// Coefficients follow the convention ĝ(k) = (1/2π)∫ g(x) e^{-ikx} dx, so that
/// g(x) = Σ_k ĝ(k) e^{ikx}. Only k = 0..K_max are stored; negative modes are
/// implied by Hermitian symmetry ĝ(-k) = conj(ĝ(k)). With an even grid of N
/// collocation points x_j = 2πj/N, K_max = N/2 - 1 and the Nyquist mode is
/// always zero.
class SpectralField {
 public:
  /// Zero field on an N-point grid.
  explicit SpectralField(int grid_size);

  /// Field from samples at x_j = 2πj/N. Throws InvalidInput for odd or short
  /// arrays and for non-finite values. Nyquist content is discarded.
  static SpectralField from_samples(std::span<const double> values);

  /// Field from the nonnegative modes 0..n-1 (n ≤ K_max+1; missing modes are
  /// zero). The imaginary part of mode 0 is dropped.
  static SpectralField from_modes(int grid_size, std::span<const Complex> modes);

  static SpectralField constant(int grid_size, double value);

  int grid_size() const noexcept { return grid_size_; }
  int max_mode() const noexcept { return static_cast<int>(modes_.size()) - 1; }

  /// ĝ(k) for any integer k (zero outside the stored band).
  Complex coeff(int k) const noexcept;
  std::span<const Complex> modes() const noexcept { return modes_; }
  double mean() const noexcept { return modes_.front().real(); }

  std::vector<double> to_samples() const;
  /// Direct evaluation of Σ ĝ(k)e^{ikx}; O(K) per point.
  double evaluate(double x) const noexcept;

  /// Same function on another grid (truncating or zero-padding modes).
  SpectralField resized(int new_grid_size) const;

  bool all_finite() const noexcept;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double scale) noexcept;

  /// Applies a per-mode multiplier m(k) for k ≥ 0. The multiplier must satisfy
  /// m(-k) = conj(m(k)) for the result to stay real, which holds for every
  /// multiplier used here.
  template <typename Multiplier>
  SpectralField apply_multiplier(Multiplier&& multiplier) const {
    SpectralField out(*this);
    for (std::size_t k = 0; k < out.modes_.size(); ++k) {
      out.modes_[k] *= multiplier(static_cast<int>(k));
    }
    out.modes_[0] = Complex(out.modes_[0].real(), 0.0);
    return out;
  }

 private:
  int grid_size_;
  std::vector<Complex> modes_;
};

SpectralField operator+(SpectralField lhs, const SpectralField& rhs);
SpectralField operator-(SpectralField lhs, const SpectralField& rhs);
SpectralField operator-(SpectralField field);
SpectralField operator*(double scale, SpectralField field);
SpectralField operator*(SpectralField field, double scale);

/// Hilbert transform, multiplier -i·sgn(k); with this sign Λ = H∂ₓ.
SpectralField hilbert(const SpectralField& g);

/// Λ^s = (-∂ₓₓ)^{s/2}, multiplier |k|^s. Throws InvalidInput for s < 0.
SpectralField lambda_pow(const SpectralField& g, double s);

/// ∂ₓ^order, multiplier (ik)^order. Throws InvalidInput for order < 1.
SpectralField derivative(const SpectralField& g, int order);

/// Pointwise product with 3/2 zero padding, so every retained mode equals the
/// exact truncated convolution. Throws InvalidInput on mismatched grids.
SpectralField multiply(const SpectralField& f, const SpectralField& g);

/// Wiener norm Σ_k |k|^s |ĝ(k)|. The inhomogeneous norm weights the mean mode
/// by 1 so that ‖g‖_{A^s} = |ĝ(0)| + ‖g‖_{Ȧ^s}; the homogeneous norm drops it.
double wiener_norm(const SpectralField& g, double s, bool homogeneous);

}  // namespace tumorsim
