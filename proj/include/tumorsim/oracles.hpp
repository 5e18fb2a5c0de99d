#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tumorsim/params.hpp"
#include "tumorsim/spectral_field.hpp"

namespace tumorsim::oracles {

struct OracleReport {
  std::string name;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

OracleReport make_report(std::string name, double max_error, double tolerance);

/// Truncated convolution by the double loop over all mode pairs. Refuses
/// fields with more than 64 stored modes.
SpectralField convolve_direct(const SpectralField& f, const SpectralField& g);

enum class Trig { Sin, Cos };

/// ∫_{-∞}^0 e^{a y} sin y dy = -1/(a²+1), ∫_{-∞}^0 e^{a y} cos y dy = a/(a²+1).
/// Refuses a ≤ 0.
double depth_integral_closed(double a, Trig trig);

/// (1/2π)∫ f(x) e^{-ikx} dx by the trapezoidal rule on `points` nodes.
Complex trapezoid_coefficient(const std::function<double(double)>& f, int k, int points);

/// -Λ(gΛ³g) + gΛ⁴g - g,₁(Λ²g),₁ with direct convolutions.
SpectralField commutator_expanded(const SpectralField& g);

/// Closed forms of the depth-only exp-sine case, transcribed term by term.
struct ParticularForms {
  SpectralField k0;
  SpectralField k1_tilde_1;
  SpectralField k2_tilde_1;
  SpectralField i_tilde;
};

ParticularForms particular_closed_forms(const SpectralField& g, const SpectralField& g0, double t,
                                        const ModelParams& p, double c_s, double c_b);

/// Mean of the ε = 0 reduced model:
/// mean(0) - (ρ/2)[(c_S - c_B)(1 - e^{-Nt})/N - N₃c_B(1 - e^{-Nt}(1 + Nt))/N²].
double particular_mean(double mean0, double t, const ModelParams& p, double c_s, double c_b);

/// ∫_{-∞}^0 e^{|m|y} ∂₂P(y) dy for the bounded solution of P'' - m²P = w,
/// P(0) = 0, by nested quadrature of the Green's function representation.
double green_depth_weight(const std::function<double(double)>& w, int m);

/// Bounded solution P(y) of P'' - m²P = w with P(0) = 0, by quadrature.
double green_pressure(const std::function<double(double)>& w, int m, double y);

/// Runs every oracle comparison against the library fast paths.
std::vector<OracleReport> run_verify_suite();

}  // namespace tumorsim::oracles
