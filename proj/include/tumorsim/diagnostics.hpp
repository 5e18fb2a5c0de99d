#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tumorsim/params.hpp"
#include "tumorsim/timestepper.hpp"

namespace tumorsim {

struct DiagnosticsRecord {
  double t = 0.0;
  double a1 = 0.0;
  double a1_hom = 0.0;
  double a4_hom = 0.0;
  double mean_re = 0.0;
  double mean_im = 0.0;
  double smallness_margin = 1.0;
  /// d/dt‖g‖_{Ȧ¹} + cη‖g‖_{Ȧ⁴}; NaN until finalize_balance has run.
  double dissipation_balance = 0.0;
};

DiagnosticsRecord record(const SimState& state);

/// Fills dissipation_balance with centered differences inside the trajectory
/// and one-sided differences at its ends.
void finalize_balance(std::vector<DiagnosticsRecord>& records, double eta, double c = 0.5);

struct MonitorReport {
  /// True when ρ = θ = 0 and the check below applies.
  bool decay_asserted = false;
  /// Steps where ‖g‖_{Ȧ¹} increased while the smallness margin was positive
  /// at both ends (only counted when decay_asserted).
  std::vector<std::size_t> violations;
  /// (d/dt‖g‖_{Ȧ¹} + cη‖g‖_{Ȧ⁴}) / (e^{-N₂t}(‖g‖_{Ȧ¹} + 1)) per record.
  std::vector<double> envelope_ratio;
  double max_envelope_ratio = 0.0;

  bool passed() const noexcept { return violations.empty(); }
};

/// Throws InvalidInput for fewer than two records.
MonitorReport dissipation_monitor(const std::vector<DiagnosticsRecord>& records,
                                  const ModelParams& p, double c = 0.5);

/// Header line of the diagnostics CSV.
const std::string& diagnostics_header();
void export_csv(std::ostream& out, const std::vector<DiagnosticsRecord>& records);
std::vector<DiagnosticsRecord> parse_csv(std::istream& in);

}  // namespace tumorsim
