#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "tumorsim/model_rhs.hpp"
#include "tumorsim/spectral_field.hpp"

namespace tumorsim {

enum class Scheme { IfEuler, IfRk2, Etdrk2 };

std::string scheme_name(Scheme scheme);
/// Accepts "if-euler", "if-rk2", "etdrk2"; throws InvalidInput otherwise.
Scheme parse_scheme(const std::string& name);

struct StepperConfig {
  double dt = 1e-3;
  Scheme scheme = Scheme::Etdrk2;
  double t_end = 0.0;
  double cfl_safety = 1.0;

  void validate() const;
  /// 0.5·(η K_max³)⁻¹·cfl_safety.
  static double default_dt(double eta, int grid_size, double cfl_safety);
};

/// Interface state. The initial interface is shared and never mutated.
class SimState {
 public:
  SimState(SpectralField g, double t = 0.0);
  SimState(SpectralField g, double t, std::shared_ptr<const SpectralField> g0,
           std::size_t step_index);

  const SpectralField& g() const noexcept { return g_; }
  const SpectralField& g0() const noexcept { return *g0_; }
  std::shared_ptr<const SpectralField> shared_g0() const noexcept { return g0_; }
  double t() const noexcept { return t_; }
  std::size_t step_index() const noexcept { return step_index_; }

 private:
  SpectralField g_;
  double t_;
  std::shared_ptr<const SpectralField> g0_;
  std::size_t step_index_;
};

/// ‖g‖_{A¹} above which a run is declared blown up.
inline constexpr double kBlowUpThreshold = 1e6;

/// Advances ∂ₜg = -ηΛ³g + N(g, t) by h, treating -η|k|³ exactly. Throws
/// BlowUpError if the new state is non-finite or exceeds kBlowUpThreshold.
SimState step(const SimState& state, double h, Scheme scheme, double eta, const NonlinearRhs& rhs);
SimState step(const SimState& state, const StepperConfig& cfg, double eta, const NonlinearRhs& rhs);

using Observer = std::function<void(const SimState&)>;

/// Steps from state.t() to cfg.t_end with fixed dt (the last step is
/// shortened to land on t_end). Observers see the initial state and every
/// accepted state; a BlowUpError propagates after the observers have seen
/// every state before it.
SimState run(const SimState& initial, const StepperConfig& cfg, double eta, const NonlinearRhs& rhs,
             const std::vector<Observer>& observers = {});

}  // namespace tumorsim
