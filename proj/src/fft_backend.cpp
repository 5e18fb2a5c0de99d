#include "fft_backend.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace tumorsim::detail {
namespace {

struct FftwBuffer {
  explicit FftwBuffer(std::size_t bytes) : ptr(fftw_malloc(bytes)) {}
  ~FftwBuffer() { fftw_free(ptr); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  void* ptr;
};

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;
};

// FFTW planning is not thread-safe; execution with the new-array interface is,
// as long as buffers share the planning alignment (fftw_malloc guarantees it).
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [n, plans] : plans_) {
      fftw_destroy_plan(plans.forward);
      fftw_destroy_plan(plans.inverse);
    }
  }

  PlanPair get(int n) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    FftwBuffer real(sizeof(double) * n);
    FftwBuffer spec(sizeof(fftw_complex) * (n / 2 + 1));
    PlanPair plans;
    plans.forward = fftw_plan_dft_r2c_1d(n, static_cast<double*>(real.ptr),
                                         static_cast<fftw_complex*>(spec.ptr),
                                         FFTW_ESTIMATE);
    plans.inverse = fftw_plan_dft_c2r_1d(n, static_cast<fftw_complex*>(spec.ptr),
                                         static_cast<double*>(real.ptr),
                                         FFTW_ESTIMATE);
    plans_.emplace(n, plans);
    return plans;
  }

 private:
  std::mutex mutex_;
  std::map<int, PlanPair> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

void forward_real(std::span<const double> in, std::span<std::complex<double>> out) {
  const int n = static_cast<int>(in.size());
  const auto plans = cache().get(n);
  FftwBuffer real(sizeof(double) * n);
  FftwBuffer spec(sizeof(fftw_complex) * (n / 2 + 1));
  std::copy(in.begin(), in.end(), static_cast<double*>(real.ptr));
  fftw_execute_dft_r2c(plans.forward, static_cast<double*>(real.ptr),
                       static_cast<fftw_complex*>(spec.ptr));
  const auto* bins = static_cast<const std::complex<double>*>(spec.ptr);
  std::copy(bins, bins + (n / 2 + 1), out.begin());
}

void inverse_real(std::span<const std::complex<double>> in, std::span<double> out) {
  const int n = static_cast<int>(out.size());
  const auto plans = cache().get(n);
  FftwBuffer real(sizeof(double) * n);
  FftwBuffer spec(sizeof(fftw_complex) * (n / 2 + 1));
  std::copy(in.begin(), in.end(), static_cast<std::complex<double>*>(spec.ptr));
  fftw_execute_dft_c2r(plans.inverse, static_cast<fftw_complex*>(spec.ptr),
                       static_cast<double*>(real.ptr));
  const auto* values = static_cast<const double*>(real.ptr);
  std::copy(values, values + n, out.begin());
}

}  // namespace tumorsim::detail
