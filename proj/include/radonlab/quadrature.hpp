#pragma once

// Composite Gauss-Legendre rules on boxes of dimension 1-3, refined by
// doubling the panel count per axis until two successive levels agree.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>

#include "radonlab/errors.hpp"

namespace radonlab {

struct QuadratureResult {
  std::complex<double> value;
  double error_estimate = 0.0;  // |I_{2n} - I_n| at the last level
  int panels = 0;               // per axis, final level
  std::int64_t evaluations = 0;
  bool converged = false;
};

namespace detail {

// 8-point Gauss-Legendre nodes/weights on [-1, 1].
inline constexpr std::array<double, 8> kGLNodes = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
inline constexpr std::array<double, 8> kGLWeights = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

template <class F>
std::complex<double> composite_1d(F& f, double a, double b, int panels, std::int64_t& evals) {
  const double h = (b - a) / panels;
  std::complex<long double> s = 0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (std::size_t i = 0; i < 8; ++i) {
      const std::complex<double> v = f(mid + 0.5 * h * kGLNodes[i]);
      s += std::complex<long double>(v) * static_cast<long double>(kGLWeights[i]);
    }
  }
  evals += static_cast<std::int64_t>(panels) * 8;
  return std::complex<double>(s * static_cast<long double>(0.5 * h));
}

template <class F>
std::complex<double> composite_2d(F& f, const std::array<double, 2>& lo, const std::array<double, 2>& hi, int panels,
                                  std::int64_t& evals) {
  const double h0 = (hi[0] - lo[0]) / panels, h1 = (hi[1] - lo[1]) / panels;
  std::complex<long double> s = 0;
  for (int p = 0; p < panels; ++p)
    for (std::size_t i = 0; i < 8; ++i) {
      const double x = lo[0] + (p + 0.5) * h0 + 0.5 * h0 * kGLNodes[i];
      std::complex<long double> row = 0;
      for (int r = 0; r < panels; ++r)
        for (std::size_t j = 0; j < 8; ++j) {
          const double y = lo[1] + (r + 0.5) * h1 + 0.5 * h1 * kGLNodes[j];
          row += std::complex<long double>(f(x, y)) * static_cast<long double>(kGLWeights[j]);
        }
      s += row * static_cast<long double>(kGLWeights[i]);
    }
  evals += static_cast<std::int64_t>(panels) * panels * 64;
  return std::complex<double>(s * static_cast<long double>(0.25 * h0 * h1));
}

template <class F>
std::complex<double> composite_3d(F& f, const std::array<double, 3>& lo, const std::array<double, 3>& hi, int panels,
                                  std::int64_t& evals) {
  std::array<double, 3> h{};
  for (int d = 0; d < 3; ++d) h[d] = (hi[d] - lo[d]) / panels;
  std::complex<long double> s = 0;
  for (int p = 0; p < panels; ++p)
    for (std::size_t i = 0; i < 8; ++i) {
      const double x = lo[0] + (p + 0.5) * h[0] + 0.5 * h[0] * kGLNodes[i];
      for (int q = 0; q < panels; ++q)
        for (std::size_t j = 0; j < 8; ++j) {
          const double y = lo[1] + (q + 0.5) * h[1] + 0.5 * h[1] * kGLNodes[j];
          std::complex<long double> col = 0;
          for (int r = 0; r < panels; ++r)
            for (std::size_t l = 0; l < 8; ++l) {
              const double z = lo[2] + (r + 0.5) * h[2] + 0.5 * h[2] * kGLNodes[l];
              col += std::complex<long double>(f(x, y, z)) * static_cast<long double>(kGLWeights[l]);
            }
          s += col * static_cast<long double>(kGLWeights[i] * kGLWeights[j]);
        }
    }
  evals += static_cast<std::int64_t>(panels) * panels * panels * 512;
  return std::complex<double>(s * static_cast<long double>(0.125 * h[0] * h[1] * h[2]));
}

template <class Rule>
QuadratureResult refine(Rule&& rule, double tol, int start_panels, int max_panels) {
  QuadratureResult res;
  int n = std::max(1, start_panels);
  std::complex<double> prev = rule(n, res.evaluations);
  while (2 * n <= max_panels) {
    n *= 2;
    const std::complex<double> cur = rule(n, res.evaluations);
    res.error_estimate = std::abs(cur - prev);
    res.value = cur;
    res.panels = n;
    if (res.error_estimate <= tol) {
      res.converged = true;
      return res;
    }
    prev = cur;
  }
  res.value = prev;
  res.panels = n;
  return res;
}

}  // namespace detail

template <class F>
QuadratureResult integrate_1d(F f, double a, double b, double tol, int start_panels = 1, int max_panels = 1 << 18) {
  require(tol > 0.0, "integrate: tolerance must be positive");
  return detail::refine([&](int n, std::int64_t& e) { return detail::composite_1d(f, a, b, n, e); }, tol, start_panels,
                        max_panels);
}

template <class F>
QuadratureResult integrate_2d(F f, std::array<double, 2> lo, std::array<double, 2> hi, double tol,
                              int start_panels = 1, int max_panels = 1 << 10) {
  require(tol > 0.0, "integrate: tolerance must be positive");
  return detail::refine([&](int n, std::int64_t& e) { return detail::composite_2d(f, lo, hi, n, e); }, tol,
                        start_panels, max_panels);
}

template <class F>
QuadratureResult integrate_3d(F f, std::array<double, 3> lo, std::array<double, 3> hi, double tol,
                              int start_panels = 1, int max_panels = 1 << 6) {
  require(tol > 0.0, "integrate: tolerance must be positive");
  return detail::refine([&](int n, std::int64_t& e) { return detail::composite_3d(f, lo, hi, n, e); }, tol,
                        start_panels, max_panels);
}

}  // namespace radonlab
