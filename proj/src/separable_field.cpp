#include "tumorsim/separable_field.hpp"

#include <cstdlib>

#include "tumorsim/errors.hpp"

namespace tumorsim {
namespace {

bool is_constant(const SpectralField& f) {
  const auto modes = f.modes();
  for (std::size_t k = 1; k < modes.size(); ++k) {
    if (modes[k] != Complex{}) return false;
  }
  return true;
}

void check_grid(int a, int b) {
  if (a != b) throw InvalidInput("separable field: grid sizes differ");
}

}  // namespace

SeparableField SeparableField::from_profile(const SpectralField& modulation,
                                            const DepthProfile& profile) {
  SeparableField out(modulation.grid_size());
  out.terms_.push_back({1.0, modulation, profile, 0});
  return out;
}

SeparableField SeparableField::depth_only(int grid_size, const DepthProfile& profile) {
  return from_profile(SpectralField::constant(grid_size, 1.0), profile);
}

bool SeparableField::depth_only() const noexcept {
  for (const auto& term : terms_) {
    if (!is_constant(term.modulation)) return false;
  }
  return true;
}

SeparableField SeparableField::d1() const {
  SeparableField out(grid_size_);
  for (const auto& term : terms_) {
    if (is_constant(term.modulation)) continue;
    out.terms_.push_back({term.coef, derivative(term.modulation, 1), term.profile, term.order});
  }
  return out;
}

SeparableField SeparableField::d2() const {
  SeparableField out(*this);
  for (auto& term : out.terms_) ++term.order;
  return out;
}

SeparableField SeparableField::laplacian() const {
  SeparableField out(grid_size_);
  for (const auto& term : terms_) {
    if (!is_constant(term.modulation)) {
      out.terms_.push_back({term.coef, derivative(term.modulation, 2), term.profile, term.order});
    }
    out.terms_.push_back({term.coef, term.modulation, term.profile, term.order + 2});
  }
  return out;
}

SeparableField& SeparableField::operator+=(const SeparableField& other) {
  check_grid(grid_size_, other.grid_size_);
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  return *this;
}

SeparableField SeparableField::scaled(double factor) const {
  SeparableField out(*this);
  for (auto& term : out.terms_) term.coef *= factor;
  return out;
}

SpectralField SeparableField::trace() const { return at_depth(0.0); }

SpectralField SeparableField::at_depth(double x2) const {
  SpectralField out(grid_size_);
  for (const auto& term : terms_) {
    out += (term.coef * term.profile.derivative(x2, term.order)) * term.modulation;
  }
  return out;
}

double SeparableField::evaluate(double x1, double x2) const {
  double sum = 0.0;
  for (const auto& term : terms_) {
    sum += term.coef * term.modulation.evaluate(x1) * term.profile.derivative(x2, term.order);
  }
  return sum;
}

SpectralField SeparableField::lift_integral(DepthMomentCache& cache) const {
  SpectralField out(grid_size_);
  for (const auto& term : terms_) {
    out += term.modulation.apply_multiplier([&](int k) {
      if (term.modulation.coeff(k) == Complex{}) return 0.0;
      return term.coef * cache.moment(term.profile, term.order, k);
    });
  }
  return out;
}

SpectralField SeparableField::depth_moment(DepthMomentCache& cache) const {
  SpectralField out(grid_size_);
  for (const auto& term : terms_) {
    out += term.modulation.apply_multiplier([&](int k) {
      if (term.modulation.coeff(k) == Complex{}) return 0.0;
      return term.coef * cache.moment(term.profile, term.order, k, DepthWeight::Depth);
    });
  }
  return out;
}

SeparableField operator+(SeparableField lhs, const SeparableField& rhs) {
  lhs += rhs;
  return lhs;
}

SeparableField operator-(SeparableField lhs, const SeparableField& rhs) {
  lhs += rhs.scaled(-1.0);
  return lhs;
}

void CoupledField::add(SpectralField factor, SeparableField field) {
  check_grid(factor.grid_size(), field.grid_size());
  pieces_.push_back({std::move(factor), std::move(field)});
}

SpectralField CoupledField::lift_integral(DepthMomentCache& cache) const {
  if (pieces_.empty()) throw InvalidInput("coupled field: empty");
  SpectralField out(pieces_.front().factor.grid_size());
  for (const auto& piece : pieces_) out += multiply(piece.factor, piece.field.lift_integral(cache));
  return out;
}

SpectralField CoupledField::trace() const {
  if (pieces_.empty()) throw InvalidInput("coupled field: empty");
  SpectralField out(pieces_.front().factor.grid_size());
  for (const auto& piece : pieces_) out += multiply(piece.factor, piece.field.trace());
  return out;
}

double CoupledField::evaluate(double x1, double x2) const {
  double sum = 0.0;
  for (const auto& piece : pieces_) sum += piece.factor.evaluate(x1) * piece.field.evaluate(x1, x2);
  return sum;
}

CoupledField q_alpha(const SpectralField& ell, const SpectralField& ell0, const SeparableField& f,
                     double alpha, double t) {
  if (ell.grid_size() != ell0.grid_size()) throw InvalidInput("q_alpha: grid sizes differ");
  CoupledField out;
  out.add(ell - ell0, f.d2());
  out.add(SpectralField::constant(ell.grid_size(), alpha * t), f.laplacian());
  return out;
}

CoupledField r1_operator(const SpectralField& ell, const SeparableField& f) {
  CoupledField out;
  out.add(-derivative(ell, 2), f.d2());
  out.add(-2.0 * derivative(ell, 1), f.d1().d2());
  return out;
}

}  // namespace tumorsim
