#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "tumorsim/spectral_field.hpp"

namespace tumorsim::testing {

inline SpectralField random_field(std::mt19937_64& rng, int grid_size, int active, double scale = 1.0,
                                  bool with_mean = true) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> modes(grid_size / 2);
  if (with_mean) modes[0] = scale * u(rng);
  for (int k = 1; k <= active && k < grid_size / 2; ++k) modes[k] = {scale * u(rng), scale * u(rng)};
  return SpectralField::from_modes(grid_size, modes);
}

inline SpectralField cos_mode(int grid_size, int k, double a = 1.0) {
  std::vector<Complex> modes(grid_size / 2);
  if (k == 0) {
    modes[0] = a;
  } else {
    modes[k] = a / 2.0;
  }
  return SpectralField::from_modes(grid_size, modes);
}

inline SpectralField sin_mode(int grid_size, int k, double a = 1.0) {
  std::vector<Complex> modes(grid_size / 2);
  modes[k] = Complex(0.0, -a / 2.0);
  return SpectralField::from_modes(grid_size, modes);
}

inline double max_diff(const SpectralField& a, const SpectralField& b) {
  double err = 0.0;
  const int kmax = std::max(a.max_mode(), b.max_mode());
  for (int k = 0; k <= kmax; ++k) err = std::max(err, std::abs(a.coeff(k) - b.coeff(k)));
  return err;
}

inline double max_abs(const SpectralField& a) { return max_diff(a, SpectralField(a.grid_size())); }

}  // namespace tumorsim::testing
