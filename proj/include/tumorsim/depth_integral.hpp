#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <shared_mutex>
#include <span>
#include <tuple>

#include "tumorsim/depth_profile.hpp"

namespace tumorsim {

/// ∫_{-∞}^0 e^{|k| y} kernel(y) dy.
///
/// The interval is cut at -X where the exponential envelope in `tail` bounds
/// the remainder by 1e-13; the finite part is integrated with adaptive
/// Gauss–Kronrod on panels split at `breakpoints`. Throws ConvergenceError if
/// the envelope does not decay (rate + |k| ≤ 0), the kernel exceeds its
/// declared envelope, or the quadrature error estimate exceeds 1e-10.
double depth_integral(const std::function<double(double)>& kernel, int k, const TailBound& tail,
                      std::span<const double> breakpoints = {});

/// Weight multiplying the profile derivative inside a cached depth moment.
enum class DepthWeight { Unit, Depth };

/// Cached moments ∫_{-∞}^0 w(y) e^{|k| y} φ^{(order)}(y) dy with w = 1 or y.
///
/// Orders above 2 are reduced by integration by parts, so only the value of
/// φ^{(order-1)} at the surface is needed beyond the quadrature of φ, φ', φ''.
/// Concurrent readers share the cache; insertion takes an exclusive lock.
class DepthMomentCache {
 public:
  double moment(const DepthProfile& profile, int order, int k, DepthWeight weight = DepthWeight::Unit);

  std::size_t size() const;
  void clear();

  /// Process-wide instance used by the forcing evaluators.
  static DepthMomentCache& shared();

 private:
  double compute(const DepthProfile& profile, int order, int k, DepthWeight weight);

  using Key = std::tuple<std::uint64_t, int, int, int>;
  mutable std::shared_mutex mutex_;
  std::map<Key, double> values_;
};

}  // namespace tumorsim
