#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

namespace tumorsim {

/// Exponential envelope |φ^{(n)}(y)| ≤ envelope·e^{rate·(y - start)} valid for
/// every y ≤ start. Used to truncate semi-infinite depth integrals.
struct TailBound {
  double start = 0.0;
  double rate = 1.0;
  double envelope = 1.0;
};

/// A function of depth x₂ ∈ (-∞, 0] used as initial nutrient or inhibitor
/// data. Profiles vanish at x₂ = 0 and decay exponentially with depth.
class DepthProfile {
 public:
  enum class Kind { ExpSine, Table };

  /// c·e^{x₂}·sin(x₂).
  static DepthProfile exp_sine(double amplitude);

  /// Cubic spline through (x₂, value) rows with an exponential tail
  /// value₀·e^{tail_rate (x₂ - x₀)} below the first row. Rows must be strictly
  /// increasing in x₂, end at x₂ = 0 with |value| ≤ 1e-10, and number at least 4.
  static DepthProfile table(std::vector<double> x2, std::vector<double> values,
                            double tail_rate);

  /// Reads a two-column CSV (x2,value); a non-numeric first line is taken as
  /// a header and '#' starts a comment.
  static DepthProfile from_csv(const std::filesystem::path& path, double tail_rate);

  Kind kind() const noexcept { return kind_; }
  double amplitude() const noexcept { return amplitude_; }
  double tail_rate() const noexcept { return kind_ == Kind::ExpSine ? 1.0 : tail_rate_; }

  /// n-th depth derivative at x₂ ≤ 0. Table profiles return the spline's
  /// piecewise derivative, which is zero for n ≥ 4 inside each segment.
  double derivative(double x2, int order) const;
  double operator()(double x2) const { return derivative(x2, 0); }

  /// Envelope of the n-th derivative for truncating depth integrals.
  TailBound tail(int order) const;

  /// Breakpoints where the table spline's third derivative jumps.
  const std::vector<double>& knots() const noexcept { return x2_; }

  /// Identity shared by copies; keys the depth-integral cache.
  std::uint64_t id() const noexcept { return id_; }

  std::string describe() const;

 private:
  DepthProfile() = default;

  Kind kind_ = Kind::ExpSine;
  double amplitude_ = 0.0;
  double tail_rate_ = 1.0;
  std::vector<double> x2_;
  std::vector<double> values_;
  std::vector<double> second_;  // spline second derivatives at the knots
  std::uint64_t id_ = 0;
};

}  // namespace tumorsim
