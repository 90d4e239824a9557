#pragma once

// Multidimensional complex DFT on dense row-major arrays, backed by FFTW.
// Plans are cached per (shape, direction); execution is serialized on the
// cached plan's own buffers.

#include <complex>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include <fftw3.h>

#include "radonlab/errors.hpp"

namespace radonlab {

enum class FftDirection { Forward, Backward };  // exponent sign -1 / +1, unnormalized

namespace detail {

class FftPlan {
 public:
  FftPlan(const std::vector<int>& dims, FftDirection dir) {
    n_ = 1;
    for (int d : dims) n_ *= static_cast<std::size_t>(d);
    buf_ = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n_));
    if (!buf_) throw Error("fft: allocation failed");
    plan_ = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), buf_, buf_,
                          dir == FftDirection::Forward ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!plan_) throw Error("fft: planning failed");
  }
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;
  ~FftPlan() {
    fftw_destroy_plan(plan_);
    fftw_free(buf_);
  }

  void run(std::vector<std::complex<double>>& data) {
    std::lock_guard<std::mutex> lock(mu_);
    std::memcpy(buf_, data.data(), sizeof(fftw_complex) * n_);
    fftw_execute(plan_);
    std::memcpy(static_cast<void*>(data.data()), buf_, sizeof(fftw_complex) * n_);
  }

 private:
  std::size_t n_ = 0;
  fftw_complex* buf_ = nullptr;
  fftw_plan plan_ = nullptr;
  std::mutex mu_;
};

inline std::mutex& planner_mutex() {
  static std::mutex mu;
  return mu;
}

inline std::shared_ptr<FftPlan> cached_plan(const std::vector<int>& dims, FftDirection dir) {
  static std::map<std::pair<std::vector<int>, int>, std::shared_ptr<FftPlan>> cache;
  std::lock_guard<std::mutex> lock(planner_mutex());
  const auto key = std::make_pair(dims, dir == FftDirection::Forward ? -1 : 1);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto plan = std::make_shared<FftPlan>(dims, dir);
  cache.emplace(key, plan);
  return plan;
}

}  // namespace detail

// In-place unnormalized DFT: out[k] = sum_x in[x] exp(sign 2 pi i k.x / n).
inline void fft_inplace(std::vector<std::complex<double>>& data, const std::vector<int>& dims, FftDirection dir) {
  require(!dims.empty(), "fft: empty shape");
  std::size_t n = 1;
  for (int d : dims) {
    require(d >= 1, "fft: dimensions must be positive");
    n *= static_cast<std::size_t>(d);
  }
  require(data.size() == n, "fft: data size does not match shape");
  detail::cached_plan(dims, dir)->run(data);
}

}  // namespace radonlab
