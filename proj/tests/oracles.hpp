#pragma once

// Brute-force reference computations used to cross-check the library. Each
// one takes the slow, obvious route and shares no code with the routine it
// checks beyond the basic number types.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <set>
#include <vector>

#include "radonlab/number_theory.hpp"

namespace oracle {

using Complex = std::complex<double>;
using radonlab::BigInt;
using radonlab::Rational;

// e(x) with x reduced exactly mod 1 first.
inline Complex e(const Rational& x) {
  Rational f = x - Rational(radonlab::floor_rational(x));
  const long double ang = 2.0L * std::numbers::pi_v<long double> * f.convert_to<long double>();
  return {static_cast<double>(std::cos(ang)), static_cast<double>(std::sin(ang))};
}

// All index subsets of {0..n-1} with at least two elements, as sorted lists.
inline std::vector<std::vector<std::size_t>> chains(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) < 2) continue;
    std::vector<std::size_t> c;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) c.push_back(i);
    out.push_back(std::move(c));
  }
  return out;
}

inline std::int64_t jump_count(const std::vector<Complex>& v, double lambda) {
  std::int64_t best = 0;
  for (const auto& c : chains(v.size())) {
    bool ok = true;
    for (std::size_t i = 1; i < c.size() && ok; ++i) ok = std::abs(v[c[i]] - v[c[i - 1]]) >= lambda;
    if (ok) best = std::max<std::int64_t>(best, static_cast<std::int64_t>(c.size()) - 1);
  }
  return best;
}

inline double r_variation(const std::vector<Complex>& v, double r) {
  double best = 0.0;
  for (const auto& c : chains(v.size())) {
    double s = 0.0;
    for (std::size_t i = 1; i < c.size(); ++i) {
      const double d = std::abs(v[c[i]] - v[c[i - 1]]);
      s = std::isinf(r) ? std::max(s, d) : s + std::pow(d, r);
    }
    best = std::max(best, std::isinf(r) ? s : std::pow(s, 1.0 / r));
  }
  return best;
}

// Some kappa in {0,1}^r with {x_j(kappa_j)} = {x_j(1-kappa_j)} as sets?
inline bool kappa_exists(const std::vector<std::pair<std::int64_t, std::int64_t>>& pairs) {
  const std::size_t r = pairs.size();
  for (std::uint32_t mask = 0; mask < (1u << r); ++mask) {
    std::set<std::int64_t> a, b;
    for (std::size_t j = 0; j < r; ++j) {
      const bool k = mask & (1u << j);
      a.insert(k ? pairs[j].second : pairs[j].first);
      b.insert(k ? pairs[j].first : pairs[j].second);
    }
    if (a == b) return true;
  }
  return false;
}

// q^{-k} sum over r in {1..q}^k of e(sum_gamma a_gamma r^gamma / q), term by term.
inline Complex gauss_sum(const std::vector<std::vector<int>>& gamma, const std::vector<std::int64_t>& a,
                         std::int64_t q) {
  const std::size_t k = gamma.front().size();
  std::vector<std::int64_t> r(k, 1);
  Complex s = 0.0;
  while (true) {
    BigInt num = 0;
    for (std::size_t g = 0; g < gamma.size(); ++g) {
      BigInt m = a[g];
      for (std::size_t i = 0; i < k; ++i) m *= radonlab::big_pow(BigInt(r[i]), static_cast<unsigned>(gamma[g][i]));
      num += m;
    }
    s += e(Rational(num, q));
    std::size_t i = 0;
    while (i < k && ++r[i] > q) r[i++] = 1;
    if (i == k) break;
  }
  return s / std::pow(static_cast<double>(q), static_cast<double>(k));
}

// Lattice points of the open ball |y| < R in Z^k, by scanning the bounding box.
inline std::vector<std::vector<std::int64_t>> ball_points(std::size_t k, double R) {
  std::vector<std::vector<std::int64_t>> out;
  const auto b = static_cast<std::int64_t>(std::ceil(R));
  std::vector<std::int64_t> y(k, -b);
  while (true) {
    double s = 0;
    for (auto v : y) s += static_cast<double>(v) * static_cast<double>(v);
    if (s < R * R) out.push_back(y);
    std::size_t i = 0;
    while (i < k && ++y[i] > b) y[i++] = -b;
    if (i == k) break;
  }
  return out;
}

}  // namespace oracle
