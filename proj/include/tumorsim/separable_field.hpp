#pragma once

#include <vector>

#include "tumorsim/depth_integral.hpp"
#include "tumorsim/depth_profile.hpp"
#include "tumorsim/spectral_field.hpp"

namespace tumorsim {

/// coef · m(x₁) · φ^{(order)}(x₂)
struct SeparableTerm {
  double coef;
  SpectralField modulation;
  DepthProfile profile;
  int order;
};

/// A finite sum of separable terms on the half strip 𝕋 × (-∞, 0].
///
/// Closed under ∂₁, ∂₂, Δ and scaling, which is all the order-zero and
/// order-one forcing needs. Depth integrals act modewise on each modulation.
class SeparableField {
 public:
  explicit SeparableField(int grid_size) : grid_size_(grid_size) {}

  /// m(x₁)·φ(x₂).
  static SeparableField from_profile(const SpectralField& modulation, const DepthProfile& profile);
  /// φ(x₂) with no x₁ dependence.
  static SeparableField depth_only(int grid_size, const DepthProfile& profile);

  int grid_size() const noexcept { return grid_size_; }
  const std::vector<SeparableTerm>& terms() const noexcept { return terms_; }
  /// True when every modulation is constant in x₁.
  bool depth_only() const noexcept;

  SeparableField d1() const;
  SeparableField d2() const;
  SeparableField laplacian() const;

  SeparableField& operator+=(const SeparableField& other);
  SeparableField scaled(double factor) const;

  /// Value at x₂ = 0 as a function of x₁.
  SpectralField trace() const;
  /// Value at depth x₂ as a function of x₁.
  SpectralField at_depth(double x2) const;
  double evaluate(double x1, double x2) const;

  /// ∫_{-∞}^0 e^{x₂Λ} F(·, x₂) dx₂, mode k weighted by e^{|k|x₂}.
  SpectralField lift_integral(DepthMomentCache& cache = DepthMomentCache::shared()) const;
  /// ∫_{-∞}^0 x₂ e^{|k|x₂} F̂(k, x₂) dx₂ per mode.
  SpectralField depth_moment(DepthMomentCache& cache = DepthMomentCache::shared()) const;

 private:
  int grid_size_;
  std::vector<SeparableTerm> terms_;
};

SeparableField operator+(SeparableField lhs, const SeparableField& rhs);
SeparableField operator-(SeparableField lhs, const SeparableField& rhs);

/// A sum of products a(x₁)·F(x₁, x₂) with F separable.
///
/// Depth integrals treat the x₁ factor as a coefficient in front of the
/// semigroup: ∫e^{x₂Λ}(a F) dx₂ is taken as a · ∫e^{x₂Λ}F dx₂.
class CoupledField {
 public:
  struct Piece {
    SpectralField factor;
    SeparableField field;
  };

  CoupledField() = default;
  void add(SpectralField factor, SeparableField field);

  const std::vector<Piece>& pieces() const noexcept { return pieces_; }

  SpectralField lift_integral(DepthMomentCache& cache = DepthMomentCache::shared()) const;
  SpectralField trace() const;
  double evaluate(double x1, double x2) const;

 private:
  std::vector<Piece> pieces_;
};

/// Q_α[ℓ](f) = (ℓ - ℓ₀) f,₂ + α t Δf.
CoupledField q_alpha(const SpectralField& ell, const SpectralField& ell0, const SeparableField& f,
                     double alpha, double t);

/// R₁[ℓ](F) = -(ℓ,₁₁ F + 2 ℓ,₁ F,₁),₂.
CoupledField r1_operator(const SpectralField& ell, const SeparableField& f);

}  // namespace tumorsim
