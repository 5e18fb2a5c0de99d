#include "tumorsim/depth_profile.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "tumorsim/errors.hpp"

namespace tumorsim {
namespace {

std::uint64_t next_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1);
}

// Second derivatives of a cubic spline clamped to `left_slope` at the first
// knot and not-a-knot at the last one.
std::vector<double> spline_second_derivatives(const std::vector<double>& x,
                                              const std::vector<double>& y,
                                              double left_slope) {
  const std::size_t n = x.size();
  std::vector<double> h(n - 1), d(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x[i + 1] - x[i];
    d[i] = (y[i + 1] - y[i]) / h[i];
  }
  // Unknowns M_0..M_{n-2}; M_{n-1} is eliminated with the not-a-knot
  // condition M_{n-1} = M_{n-2} + r (M_{n-2} - M_{n-3}), r = h_{n-2}/h_{n-3}.
  const std::size_t m = n - 1;
  std::vector<double> lower(m, 0.0), diag(m, 0.0), upper(m, 0.0), rhs(m, 0.0);
  diag[0] = 2.0 * h[0];
  upper[0] = h[0];
  rhs[0] = 6.0 * (d[0] - left_slope);
  for (std::size_t i = 1; i < m; ++i) {
    lower[i] = h[i - 1];
    diag[i] = 2.0 * (h[i - 1] + h[i]);
    upper[i] = i + 1 < m ? h[i] : 0.0;
    rhs[i] = 6.0 * (d[i] - d[i - 1]);
  }
  const double r = h[n - 2] / h[n - 3];
  // Row m-1 (= n-2) carries h_{n-2} M_{n-1}; substitute the elimination.
  {
    const std::size_t i = m - 1;
    const double hn = h[n - 2];
    diag[i] += hn * (1.0 + r);
    lower[i] -= hn * r;
  }
  // Thomas algorithm.
  for (std::size_t i = 1; i < m; ++i) {
    const double w = lower[i] / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  std::vector<double> second(n, 0.0);
  second[m - 1] = rhs[m - 1] / diag[m - 1];
  for (std::size_t i = m - 1; i-- > 0;) {
    second[i] = (rhs[i] - upper[i] * second[i + 1]) / diag[i];
  }
  second[n - 1] = second[n - 2] + r * (second[n - 2] - second[n - 3]);
  return second;
}

}  // namespace

DepthProfile DepthProfile::exp_sine(double amplitude) {
  if (!std::isfinite(amplitude)) throw InvalidInput("exp-sine amplitude must be finite");
  DepthProfile p;
  p.kind_ = Kind::ExpSine;
  p.amplitude_ = amplitude;
  p.id_ = next_id();
  return p;
}

DepthProfile DepthProfile::table(std::vector<double> x2, std::vector<double> values,
                                 double tail_rate) {
  if (x2.size() != values.size()) throw InvalidInput("depth table: column lengths differ");
  if (x2.size() < 4) throw InvalidInput("depth table: need at least 4 rows");
  if (!(tail_rate > 0.0) || !std::isfinite(tail_rate)) {
    throw InvalidInput("depth table: tail rate must be finite and > 0");
  }
  for (std::size_t i = 0; i < x2.size(); ++i) {
    if (!std::isfinite(x2[i]) || !std::isfinite(values[i])) {
      throw InvalidInput("depth table: non-finite entry at row " + std::to_string(i + 1));
    }
    if (i > 0 && !(x2[i] > x2[i - 1])) {
      throw InvalidInput("depth table: x2 not strictly increasing at row " + std::to_string(i + 1));
    }
  }
  if (std::abs(x2.back()) > 1e-12) throw InvalidInput("depth table: last row must have x2 = 0");
  if (std::abs(values.back()) > 1e-10) {
    throw InvalidInput("depth table: profile(0) must vanish (|value| <= 1e-10)");
  }
  x2.back() = 0.0;
  DepthProfile p;
  p.kind_ = Kind::Table;
  p.tail_rate_ = tail_rate;
  p.second_ = spline_second_derivatives(x2, values, tail_rate * values.front());
  p.x2_ = std::move(x2);
  p.values_ = std::move(values);
  p.id_ = next_id();
  return p;
}

DepthProfile DepthProfile::from_csv(const std::filesystem::path& path, double tail_rate) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open depth table " + path.string());
  std::vector<double> x2, values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    double a = 0.0, b = 0.0;
    if (!(fields >> a >> b)) {
      if (x2.empty() && line_no == 1) continue;  // header
      throw InvalidInput(path.string() + ":" + std::to_string(line_no) + ": expected two numbers");
    }
    x2.push_back(a);
    values.push_back(b);
  }
  return table(std::move(x2), std::move(values), tail_rate);
}

double DepthProfile::derivative(double x2, int order) const {
  if (order < 0) throw InvalidInput("depth derivative order must be >= 0");
  if (kind_ == Kind::ExpSine) {
    const double scale = std::pow(std::numbers::sqrt2, order);
    return amplitude_ * scale * std::exp(x2) * std::sin(x2 + order * std::numbers::pi / 4.0);
  }
  if (x2 <= x2_.front()) {
    return values_.front() * std::pow(tail_rate_, order) * std::exp(tail_rate_ * (x2 - x2_.front()));
  }
  const double x = std::min(x2, 0.0);
  auto it = std::upper_bound(x2_.begin(), x2_.end(), x);
  std::size_t i = static_cast<std::size_t>(std::distance(x2_.begin(), it));
  i = std::clamp<std::size_t>(i, 1, x2_.size() - 1) - 1;
  const double h = x2_[i + 1] - x2_[i];
  const double a = (x2_[i + 1] - x) / h;
  const double b = (x - x2_[i]) / h;
  const double ma = second_[i], mb = second_[i + 1];
  const double ya = values_[i], yb = values_[i + 1];
  switch (order) {
    case 0:
      return a * ya + b * yb + ((a * a * a - a) * ma + (b * b * b - b) * mb) * h * h / 6.0;
    case 1:
      return (yb - ya) / h - (3.0 * a * a - 1.0) / 6.0 * h * ma + (3.0 * b * b - 1.0) / 6.0 * h * mb;
    case 2:
      return a * ma + b * mb;
    case 3:
      return (mb - ma) / h;
    default:
      return 0.0;
  }
}

TailBound DepthProfile::tail(int order) const {
  if (kind_ == Kind::ExpSine) {
    return {0.0, 1.0, std::abs(amplitude_) * std::pow(std::numbers::sqrt2, order)};
  }
  return {x2_.front(), tail_rate_, std::abs(values_.front()) * std::pow(tail_rate_, order)};
}

std::string DepthProfile::describe() const {
  std::ostringstream out;
  out.precision(17);
  if (kind_ == Kind::ExpSine) {
    out << "exp-sine(c=" << amplitude_ << ")";
  } else {
    out << "table(rows=" << x2_.size() << ", x2_min=" << x2_.front() << ", tail_rate=" << tail_rate_
        << ")";
  }
  return out.str();
}

}  // namespace tumorsim
