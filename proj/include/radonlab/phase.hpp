#pragma once

// e(x) = exp(2 pi i x) evaluated from exact rational phases. The argument is
// reduced modulo 1 in integer arithmetic before any floating-point work.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "radonlab/errors.hpp"
#include "radonlab/multiindex.hpp"
#include "radonlab/number_theory.hpp"

namespace radonlab {

using Complex = std::complex<double>;

// e(num/den) for 0 <= num < den.
inline Complex unit_phase(std::uint64_t num, std::uint64_t den) {
  // Fold into [-1/2, 1/2) so the angle stays small.
  long double x = static_cast<long double>(num) / static_cast<long double>(den);
  if (x >= 0.5L) x -= 1.0L;
  const long double ang = 2.0L * std::numbers::pi_v<long double> * x;
  return {static_cast<double>(std::cos(ang)), static_cast<double>(std::sin(ang))};
}

inline Complex unit_phase(long double x) {
  x -= std::floor(x);
  if (x >= 0.5L) x -= 1.0L;
  const long double ang = 2.0L * std::numbers::pi_v<long double> * x;
  return {static_cast<double>(std::cos(ang)), static_cast<double>(std::sin(ang))};
}

inline Complex unit_phase(const Rational& r) {
  const Rational f = frac_rational(r);
  const BigInt num = boost::multiprecision::numerator(f);
  const BigInt den = boost::multiprecision::denominator(f);
  if (den <= BigInt(std::numeric_limits<std::uint64_t>::max()))
    return unit_phase(num.convert_to<std::uint64_t>(), den.convert_to<std::uint64_t>());
  return unit_phase(f.convert_to<long double>());
}

// Evaluates e(xi . v) for integer vectors v (or e(xi . y^Gamma) for lattice
// points y) with xi rational. Holds the common denominator Q and the numerators
// of xi reduced mod Q.
class PhaseEvaluator {
 public:
  explicit PhaseEvaluator(const std::vector<Rational>& xi) {
    den_ = 1;
    for (const auto& v : xi) den_ = big_lcm(den_, boost::multiprecision::denominator(v));
    for (const auto& v : xi) {
      BigInt n = boost::multiprecision::numerator(v) * (den_ / boost::multiprecision::denominator(v));
      n %= den_;
      if (n < 0) n += den_;
      big_num_.push_back(n);
    }
    small_ = den_ < (BigInt(1) << 62);
    if (small_) {
      q_ = den_.convert_to<std::uint64_t>();
      for (const auto& n : big_num_) num_.push_back(n.convert_to<std::uint64_t>());
    }
  }

  explicit PhaseEvaluator(const FrequencyVector& xi) : PhaseEvaluator(xi.as_rationals()) {}

  std::size_t size() const noexcept { return big_num_.size(); }
  const BigInt& denominator() const noexcept { return den_; }
  bool is_zero() const {
    for (const auto& n : big_num_)
      if (n != 0) return false;
    return true;
  }

  // e(sum_j xi_j v_j)
  Complex at_values(std::span<const std::int64_t> v) const {
    require(v.size() == size(), "PhaseEvaluator: dimension mismatch");
    if (small_) {
      std::uint64_t s = 0;
      for (std::size_t j = 0; j < v.size(); ++j) s = (s + mulmod(num_[j], residue(v[j], q_), q_)) % q_;
      return unit_phase(s, q_);
    }
    BigInt s = 0;
    for (std::size_t j = 0; j < v.size(); ++j) s += big_num_[j] * BigInt(v[j]);
    return big_phase(s);
  }

  Complex at_values(std::span<const BigInt> v) const {
    require(v.size() == size(), "PhaseEvaluator: dimension mismatch");
    BigInt s = 0;
    for (std::size_t j = 0; j < v.size(); ++j) s += big_num_[j] * v[j];
    return big_phase(s);
  }

  // e(xi . y^Gamma) computed without forming y^Gamma over the integers.
  Complex at_point(std::span<const std::int64_t> y, const MultiIndexSet& gamma) const {
    require(gamma.size() == size() && y.size() == gamma.k(), "PhaseEvaluator: dimension mismatch");
    if (small_) {
      std::uint64_t s = 0;
      for (std::size_t j = 0; j < gamma.size(); ++j) {
        if (num_[j] == 0) continue;
        std::uint64_t m = 1 % q_;
        for (std::size_t i = 0; i < y.size(); ++i) {
          const int e = gamma[j][i];
          if (e != 0) m = mulmod(m, powmod(residue(y[i], q_), static_cast<unsigned>(e), q_), q_);
        }
        s = (s + mulmod(num_[j], m, q_)) % q_;
      }
      return unit_phase(s, q_);
    }
    const auto mono = canonical_map(y, gamma);
    return at_values(std::span<const BigInt>(mono));
  }

 private:
  Complex big_phase(BigInt s) const {
    s %= den_;
    if (s < 0) s += den_;
    return unit_phase(Rational(s, den_));
  }

  BigInt den_;
  std::vector<BigInt> big_num_;
  bool small_ = false;
  std::uint64_t q_ = 1;
  std::vector<std::uint64_t> num_;
};

}  // namespace radonlab
