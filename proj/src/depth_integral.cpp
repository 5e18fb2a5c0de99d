#include "tumorsim/depth_integral.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <string>
#include <vector>

#include "tumorsim/errors.hpp"

namespace tumorsim {
namespace {

constexpr double kTailTolerance = 1e-13;
constexpr double kQuadratureTolerance = 1e-10;
constexpr double kMaxPanel = 2.0;

double truncation_depth(int k, const TailBound& tail) {
  const double decay = tail.rate + std::abs(k);
  const double floor = std::max(-tail.start, 0.0);
  if (tail.envelope <= 0.0) return floor;
  // C e^{-r s} e^{-(r+|k|) X} / (r+|k|) ≤ tol
  const double log_scale = std::log(tail.envelope) - tail.rate * tail.start - std::log(decay) -
                           std::log(kTailTolerance);
  return std::max(floor, log_scale / decay);
}

}  // namespace

double depth_integral(const std::function<double(double)>& kernel, int k, const TailBound& tail,
                      std::span<const double> breakpoints) {
  const double mu = std::abs(static_cast<double>(k));
  if (!(tail.rate + mu > 0.0)) {
    throw ConvergenceError("depth integral: kernel envelope does not decay for |k| = " +
                           std::to_string(std::abs(k)));
  }
  const double depth = truncation_depth(k, tail);

  // The kernel must respect its declared envelope below the cut.
  for (double probe : {depth, 1.5 * depth + 1.0, 2.0 * depth + 5.0}) {
    const double y = -probe;
    if (y > tail.start) continue;
    const double bound = tail.envelope * std::exp(tail.rate * (y - tail.start));
    const double value = std::abs(kernel(y));
    if (!std::isfinite(value) || value > 10.0 * bound + 1e-300) {
      throw ConvergenceError("depth integral: kernel exceeds its decay envelope at x2 = " +
                             std::to_string(y));
    }
  }

  std::vector<double> cuts{-depth, 0.0};
  for (double b : breakpoints) {
    if (b > -depth && b < 0.0) cuts.push_back(b);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const auto integrand = [&](double y) { return std::exp(mu * y) * kernel(y); };
  double total = 0.0;
  double error = 0.0;
  double l1 = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    const int pieces = std::max(1, static_cast<int>(std::ceil((b - a) / kMaxPanel)));
    const double width = (b - a) / pieces;
    for (int p = 0; p < pieces; ++p) {
      const double lo = a + p * width;
      const double hi = p + 1 == pieces ? b : lo + width;
      double panel_error = 0.0, panel_l1 = 0.0;
      total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, lo, hi, 8, 1e-12,
                                                                             &panel_error, &panel_l1);
      error += panel_error;
      l1 += panel_l1;
    }
  }
  if (!std::isfinite(total) || error > kQuadratureTolerance * std::max(1.0, l1)) {
    char msg[96];
    std::snprintf(msg, sizeof msg, "depth integral: quadrature error estimate %.3e above tolerance", error);
    throw ConvergenceError(msg);
  }
  return total;
}

double DepthMomentCache::moment(const DepthProfile& profile, int order, int k, DepthWeight weight) {
  const Key key{profile.id(), order, std::abs(k), static_cast<int>(weight)};
  {
    std::shared_lock lock(mutex_);
    if (auto it = values_.find(key); it != values_.end()) return it->second;
  }
  const double value = compute(profile, order, std::abs(k), weight);
  std::unique_lock lock(mutex_);
  values_.emplace(key, value);
  return value;
}

double DepthMomentCache::compute(const DepthProfile& profile, int order, int k, DepthWeight weight) {
  const double mu = static_cast<double>(k);
  if (order > 2) {
    // ∫ e^{μy} φ^{(n)} = φ^{(n-1)}(0) - μ ∫ e^{μy} φ^{(n-1)}
    // ∫ y e^{μy} φ^{(n)} = -∫ e^{μy} φ^{(n-1)} - μ ∫ y e^{μy} φ^{(n-1)}
    if (weight == DepthWeight::Unit) {
      return profile.derivative(0.0, order - 1) - mu * moment(profile, order - 1, k, weight);
    }
    return -moment(profile, order - 1, k, DepthWeight::Unit) -
           mu * moment(profile, order - 1, k, DepthWeight::Depth);
  }
  const auto& knots = profile.kind() == DepthProfile::Kind::Table ? profile.knots()
                                                                  : std::vector<double>{};
  TailBound tail = profile.tail(order);
  if (weight == DepthWeight::Unit) {
    return depth_integral([&](double y) { return profile.derivative(y, order); }, k, tail, knots);
  }
  // |y| e^{r(y-s)} ≤ (|s| + 2/r) e^{(r/2)(y-s)} for y ≤ s ≤ 0.
  tail.envelope *= std::abs(tail.start) + 2.0 / tail.rate;
  tail.rate *= 0.5;
  return depth_integral([&](double y) { return y * profile.derivative(y, order); }, k, tail, knots);
}

std::size_t DepthMomentCache::size() const {
  std::shared_lock lock(mutex_);
  return values_.size();
}

void DepthMomentCache::clear() {
  std::unique_lock lock(mutex_);
  values_.clear();
}

DepthMomentCache& DepthMomentCache::shared() {
  static DepthMomentCache instance;
  return instance;
}

}  // namespace tumorsim
