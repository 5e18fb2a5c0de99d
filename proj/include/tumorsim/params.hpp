#pragma once

#include <optional>

namespace tumorsim {

/// Dimensionless groups of the interface model.
///
/// alpha_ratio is the inhibitor/nutrient diffusion ratio D_i/D_n, not the
/// time-dependent amplitude α(t) of the exp-sine particular case.
struct ModelParams {
  double eps = 0.0;
  double eta = 1.0;
  double theta = 0.0;
  double rho = 0.0;
  double tau = 1.0;
  double n1 = 1.0;
  double n2 = 1.0;
  double n3 = 0.0;
  double alpha_ratio = 1.0;
  // Vascular supply groups. The model assumes they are O(ε²) and drops them.
  double omega = 0.0;
  double m1 = 0.0;
  double m2 = 0.0;

  /// Throws InvalidInput naming the first offending field.
  void validate() const;
};

/// Dimensional rates and scales of the free-boundary problem. The vascular
/// concentrations are optional; without them the supply groups M₁, M₂, ω are
/// taken to vanish, which is the regime the model is derived in.
struct DimensionalInputs {
  double diffusion_n = 0.0;   // D_n
  double diffusion_i = 0.0;   // D_i
  double delta_n = 0.0;       // blood-tissue nutrient transfer
  double delta_i = 0.0;
  double lambda_n = 0.0;      // consumption rates
  double lambda_i = 0.0;
  double gamma_n = 0.0;       // inhibitor action on nutrient
  double chi = 0.0;           // chemotaxis
  double mu = 0.0;            // mitosis rate constant
  double nu = 0.0;            // surface tension
  double sigma_tilde = 0.0;   // threshold concentration
  double tau = 1.0;
  double length = 0.0;        // L
  double height = 0.0;        // H
  std::optional<double> sigma_d;
  std::optional<double> sigma_b;
  std::optional<double> beta_d;
  std::optional<double> beta_b;
};

/// Maps dimensional inputs to the dimensionless groups and validates them.
/// Throws InvalidInput for nonpositive D_n, L, H or σ̃, and for groups that
/// fail ModelParams::validate (e.g. η = 0 when ν = 0).
ModelParams nondimensionalize(const DimensionalInputs& in);

}  // namespace tumorsim
