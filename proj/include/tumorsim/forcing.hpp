#pragma once

#include "tumorsim/depth_profile.hpp"
#include "tumorsim/params.hpp"
#include "tumorsim/separable_field.hpp"
#include "tumorsim/spectral_field.hpp"

namespace tumorsim {

/// Initial nutrient 𝓢 and inhibitor 𝓑 on the half strip.
struct ProfileData {
  SeparableField s;
  SeparableField b;

  static ProfileData depth_only(int grid_size, const DepthProfile& s, const DepthProfile& b);
  static ProfileData modulated(const SpectralField& s_modulation, const DepthProfile& s,
                               const SpectralField& b_modulation, const DepthProfile& b);

  int grid_size() const noexcept { return s.grid_size(); }
  bool depth_only() const noexcept { return s.depth_only() && b.depth_only(); }
};

/// N₃ (e^{(N₂-N₁)t} - 1)/(N₂ - N₁), so that 𝓛 = 𝓢 - c(t)𝓑. Equal decay rates
/// (and |N₂-N₁|t < 1e-2) use the power series of (e^x - 1)/x.
double kernel_L_coefficient(const ModelParams& p, double t);

/// 𝓛(x₂, t) for depth profiles.
double kernel_L(const DepthProfile& s, const DepthProfile& b, const ModelParams& p, double x2,
                double t);
SeparableField kernel_L(const ProfileData& data, const ModelParams& p, double t);

/// M(t); for N₁ = N₂ it reduces to N₃(1 - α) t² e^{-N t}/2.
double m_of_t(const ModelParams& p, double t);

/// Order-zero nutrient S⁽⁰⁾ = e^{-N₂t}𝓛 and inhibitor B⁽⁰⁾ = e^{-N₁t}𝓑.
SeparableField nutrient_order0(const ProfileData& data, const ModelParams& p, double t);
SeparableField inhibitor_order0(const ProfileData& data, const ModelParams& p, double t);

/// Pressure source w⁽⁰⁾ = θΔS⁽⁰⁾ - ρ(S⁽⁰⁾ - τB⁽⁰⁾).
SeparableField pressure_source(const ProfileData& data, const ModelParams& p, double t);

/// K⁽⁰⁾(x₁, 0, t).
SpectralField k0_general(const ProfileData& data, const ModelParams& p, double t);

/// K̃₁⁽¹⁾(x₁, 0, t) for the interface g and the frozen initial interface g0.
SpectralField k1_tilde_1(const SpectralField& g, const SpectralField& g0, const ProfileData& data,
                         const ModelParams& p, double t);

/// K̃₂⁽¹⁾(x₁, 0, t), evaluated on the trace x₂ = 0.
SpectralField k2_tilde_1(const SpectralField& g, const SpectralField& g0, const ProfileData& data,
                         const ModelParams& p, double t);

/// Ĩ(x₁, 0, t): the order-zero source contribution of -∫e^{x₂Λ}R₁[g](P⁽⁰⁾)dx₂.
///
/// Ĩ(k) = -Σ_{|m| ≤ mode_cutoff} (k - m)(k + m) ĝ(k - m) D(m) where
/// D(m) = ∫_{-∞}^0 e^{|m|y} ∂₂P̂_w(m, y) dy is the depth integral of the
/// bounded pressure generated by w⁽⁰⁾. It reduces to
/// D(m) = -½∫ y ŵ(m,y) e^{|m|y} dy for m ≠ 0 and D(0) = -∫ y ŵ(0,y) dy.
/// Throws InvalidInput unless 0 ≤ mode_cutoff ≤ K_max.
SpectralField i_tilde(const SpectralField& g, const ProfileData& data, const ModelParams& p,
                      double t, int mode_cutoff);

/// The depth weights D(m), m = 0..K_max, used by i_tilde.
std::vector<Complex> pressure_depth_weights(const ProfileData& data, const ModelParams& p,
                                            double t);

/// P⁽⁰⁾(·, x₂, t): the bounded solution of ΔP = w⁽⁰⁾ with P = -η g0,₁₁ on x₂ = 0.
SpectralField pressure_order0(const SpectralField& g0, const ProfileData& data,
                              const ModelParams& p, double t, double x2);

enum class ForcingMode { General, Particular };

/// Time-dependent forcing evaluators for one configuration.
///
/// General mode evaluates every term by depth quadrature. Particular mode
/// requires depth-only exp-sine data with N₁ = N₂, τ = 1 and α = 1 and uses
/// the closed forms, with the Ĩ contribution carried in the sign that the
/// reduced interface equation uses.
class ForcingBundle {
 public:
  ForcingBundle(ProfileData data, ModelParams params, ForcingMode mode, int mode_cutoff = -1);

  ForcingMode mode() const noexcept { return mode_; }
  const ProfileData& data() const noexcept { return data_; }
  const ModelParams& params() const noexcept { return params_; }
  int mode_cutoff() const noexcept { return mode_cutoff_; }

  /// K⁽⁰⁾(x₁, 0, t).
  SpectralField k0(double t) const;
  /// K̃⁽¹⁾ = -Ĩ - K̃₁⁽¹⁾ + K̃₂⁽¹⁾.
  SpectralField k1_tilde(const SpectralField& g, const SpectralField& g0, double t) const;
  /// e^{-N₂t}𝓛,₁(x₁, 0, t).
  SpectralField l1_trace(double t) const;

 private:
  ProfileData data_;
  ModelParams params_;
  ForcingMode mode_;
  int mode_cutoff_;
  double c_s_ = 0.0;
  double c_b_ = 0.0;
};

/// Checks that data and parameters are in the exp-sine regime with equal
/// decay rates, τ = 1 and α = 1; throws InvalidInput naming the violation.
void require_particular_regime(const ProfileData& data, const ModelParams& p);

}  // namespace tumorsim
