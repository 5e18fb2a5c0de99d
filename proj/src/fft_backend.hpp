#pragma once

#include <complex>
#include <span>

namespace tumorsim::detail {

// Unnormalized real-to-complex transform of n samples into n/2+1 bins.
void forward_real(std::span<const double> in, std::span<std::complex<double>> out);

// Unnormalized complex-to-real inverse; in has n/2+1 bins, out has n samples.
// The input buffer is copied, so it is left untouched.
void inverse_real(std::span<const std::complex<double>> in, std::span<double> out);

}  // namespace tumorsim::detail
