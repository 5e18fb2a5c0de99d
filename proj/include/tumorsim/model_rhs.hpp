#pragma once

#include <functional>

#include "tumorsim/forcing.hpp"
#include "tumorsim/params.hpp"
#include "tumorsim/spectral_field.hpp"

namespace tumorsim {

/// ∂ₓ( H(g·H∂ₓ³g) - g·H(H∂ₓ³g) ), dealiased. Equal to
/// -Λ(gΛ³g) + gΛ⁴g - g,₁(Λ²g),₁ and zero on single Fourier modes.
SpectralField commutator_term(const SpectralField& g);

/// Exp-sine amplitudes of 𝓢 = c_S e^{x₂} sin x₂ and 𝓑 = c_B e^{x₂} sin x₂.
struct ExpSineData {
  double c_s = 0.0;
  double c_b = 0.0;
};

/// α(t) = c_S - N₃ c_B t.
double particular_alpha(const ExpSineData& data, const ModelParams& p, double t);

/// Right-hand side of the reduced interface equation for depth-only
/// exp-sine data, assembled term by term in its unsimplified grouping.
/// Requires n1 = n2, tau = 1 and alpha_ratio = 1.
SpectralField rhs_particular(const SpectralField& g, const SpectralField& g0, double t,
                             const ModelParams& p, const ExpSineData& data);

/// Same right-hand side with the ε-forcing collapsed to
/// εe^{-Nt}[ρt(α - c_B) - (ρ/2)α g,₁₁]; used to cross-check the grouping.
SpectralField rhs_particular_collapsed(const SpectralField& g, const SpectralField& g0, double t,
                                       const ModelParams& p, const ExpSineData& data);

/// rhs_particular without the -ηΛ³g term.
SpectralField rhs_particular_nonstiff(const SpectralField& g, const SpectralField& g0, double t,
                                      const ModelParams& p, const ExpSineData& data);

/// Mode, parameters, profiles and initial interface of a model run.
struct RhsConfig {
  ForcingMode mode = ForcingMode::General;
  ModelParams params;
  ProfileData profiles;
  SpectralField g0;

  /// Throws InvalidInput when particular mode is requested outside its regime.
  void validate() const;
};

/// ∂ₜg = -ηΛ³g + εη·commutator - εθ g e^{-N₂t}𝓛,₁(·,0,t) + εK̃⁽¹⁾ + K⁽⁰⁾.
SpectralField rhs_general(const SpectralField& g, const SpectralField& g0, double t,
                          const ForcingBundle& forcing);
SpectralField rhs_general(const SpectralField& g, const SpectralField& g0, double t,
                          const RhsConfig& cfg);

/// rhs_general without the -ηΛ³g term.
SpectralField rhs_general_nonstiff(const SpectralField& g, const SpectralField& g0, double t,
                                   const ForcingBundle& forcing);

/// Stiff-excluded right-hand side N(g, t) seen by the integrator.
using NonlinearRhs = std::function<SpectralField(const SpectralField& g, double t)>;

/// N(g, t) for a configuration; particular mode uses rhs_particular_nonstiff.
NonlinearRhs make_nonstiff_rhs(const RhsConfig& cfg, int mode_cutoff = -1);

}  // namespace tumorsim
