#include "tumorsim/params.hpp"

#include <cmath>
#include <string>

#include "tumorsim/errors.hpp"

namespace tumorsim {
namespace {

void require(bool ok, const char* name, const std::string& rule) {
  if (!ok) throw InvalidInput(std::string(name) + ": " + rule);
}

bool finite(double v) { return std::isfinite(v); }

}  // namespace

void ModelParams::validate() const {
  require(finite(eps) && eps >= 0.0, "eps", "must be finite and >= 0");
  require(finite(eta) && eta > 0.0, "eta", "must be finite and > 0");
  require(finite(theta) && theta >= 0.0, "theta", "must be finite and >= 0");
  require(finite(rho) && rho >= 0.0, "rho", "must be finite and >= 0");
  require(finite(tau) && tau >= 0.0, "tau", "must be finite and >= 0");
  require(finite(n1) && n1 > 0.0, "n1", "must be finite and > 0");
  require(finite(n2) && n2 > 0.0, "n2", "must be finite and > 0");
  require(finite(n3) && n3 >= 0.0, "n3", "must be finite and >= 0");
  require(finite(alpha_ratio) && alpha_ratio > 0.0, "alpha_ratio", "must be finite and > 0");
  // The supply groups must be at most O(ε²); they are not part of the model.
  const double bound = eps * eps;
  require(finite(omega) && std::abs(omega) <= bound, "omega", "must be O(eps^2) (|omega| <= eps^2)");
  require(finite(m1) && std::abs(m1) <= bound, "m1", "must be O(eps^2) (|m1| <= eps^2)");
  require(finite(m2) && std::abs(m2) <= bound, "m2", "must be O(eps^2) (|m2| <= eps^2)");
}

ModelParams nondimensionalize(const DimensionalInputs& in) {
  require(in.diffusion_n > 0.0, "D_n", "must be > 0");
  require(in.length > 0.0, "L", "must be > 0");
  require(in.height > 0.0, "H", "must be > 0");
  require(in.sigma_tilde > 0.0, "sigma_tilde", "must be > 0");

  const double d = in.diffusion_n;
  const double lh = in.length * in.height;
  ModelParams p;
  p.eps = in.height / in.length;
  p.alpha_ratio = in.diffusion_i / d;
  p.n1 = lh * (in.delta_i + in.lambda_i) / d;
  p.n2 = lh * (in.delta_n + in.lambda_n) / d;
  p.n3 = in.gamma_n * lh / d;
  p.theta = in.chi * in.sigma_tilde / d;
  p.rho = in.mu * in.sigma_tilde * in.length * in.length / d;
  p.eta = in.nu * in.height / (in.length * in.length * d);
  p.tau = in.tau;

  const bool vascular = in.sigma_d && in.sigma_b && in.beta_d && in.beta_b;
  if (vascular) {
    const double scale = lh / (d * in.sigma_tilde);
    p.m1 = scale * (-(in.delta_i + in.lambda_i) * *in.beta_d + in.delta_i * *in.beta_b);
    p.m2 = scale * (-*in.sigma_d * (in.delta_n + in.lambda_n) + *in.sigma_b * in.delta_n -
                    in.gamma_n * *in.beta_d);
    p.omega = in.mu * in.length * in.length / d * (*in.sigma_d - in.tau * *in.beta_d - in.sigma_tilde);
  }
  p.validate();
  return p;
}

}  // namespace tumorsim
