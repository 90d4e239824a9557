#pragma once

// Exact integer helpers: big integers, rationals, sieves, factorizations,
// exact conversion of doubles to dyadic rationals.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "radonlab/errors.hpp"

namespace radonlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

inline BigInt big_gcd(const BigInt& a, const BigInt& b) {
  return boost::multiprecision::gcd(a, b);
}

inline BigInt big_lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return 0;
  return a / big_gcd(a, b) * b;
}

// Checked 64-bit products; never wraps.
inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("64-bit multiplication overflow");
  return out;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw OverflowError("64-bit addition overflow");
  return out;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod(std::uint64_t base, unsigned exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1U) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

// Least non-negative residue of a signed value.
inline std::uint64_t residue(std::int64_t v, std::uint64_t m) {
  const auto mm = static_cast<__int128>(m);
  __int128 r = static_cast<__int128>(v) % mm;
  if (r < 0) r += mm;
  return static_cast<std::uint64_t>(r);
}

inline BigInt big_pow(const BigInt& base, unsigned exp) { return boost::multiprecision::pow(base, exp); }

inline std::vector<std::int64_t> primes_up_to(std::int64_t n) {
  std::vector<std::int64_t> primes;
  if (n < 2) return primes;
  std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
  for (std::int64_t p = 2; p <= n; ++p) {
    if (composite[static_cast<std::size_t>(p)]) continue;
    primes.push_back(p);
    for (std::int64_t m = p * p; m <= n; m += p) composite[static_cast<std::size_t>(m)] = true;
  }
  return primes;
}

struct PrimePower {
  std::int64_t prime;
  unsigned exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
  friend auto operator<=>(const PrimePower&, const PrimePower&) = default;
};

// Trial division; fine for the desk-scale magnitudes used here.
inline std::vector<PrimePower> factorize(std::int64_t n) {
  require(n >= 1, "factorize: n must be positive");
  std::vector<PrimePower> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

inline std::vector<std::int64_t> prime_divisors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (const auto& pp : factorize(n)) out.push_back(pp.prime);
  return out;
}

// Exact value of a finite double as a dyadic rational.
inline Rational exact_rational(double x) {
  require(std::isfinite(x), "exact_rational: non-finite value");
  if (x == 0.0) return Rational(0);
  int exp = 0;
  const double mant = std::frexp(x, &exp);  // x = mant * 2^exp, 0.5 <= |mant| < 1
  const auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
  exp -= 53;
  BigInt num(scaled);
  if (exp >= 0) return Rational(num << exp);
  return Rational(num, BigInt(1) << (-exp));
}

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

inline BigInt floor_rational(const Rational& r) {
  return floor_div(boost::multiprecision::numerator(r), boost::multiprecision::denominator(r));
}

// Representative of r modulo 1 in [0, 1).
inline Rational frac_rational(const Rational& r) { return r - Rational(floor_rational(r)); }

// Distance to the nearest integer, exact.
inline Rational torus_distance(const Rational& r) {
  const Rational f = frac_rational(r);
  const Rational g = Rational(1) - f;
  return f < g ? f : g;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline long double to_long_double(const Rational& r) {
  // Split to keep precision when the value is tiny relative to numerator size.
  return r.convert_to<long double>();
}

// Jordan totient J_d(q) = q^d prod_{p | q} (1 - p^{-d}); counts |A_q| for d coordinates.
inline BigInt jordan_totient(std::int64_t q, unsigned d) {
  BigInt result = big_pow(BigInt(q), d);
  for (auto p : prime_divisors(q)) {
    const BigInt pd = big_pow(BigInt(p), d);
    result = result / pd * (pd - 1);
  }
  return result;
}

inline std::uint64_t binomial_u64(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<std::uint64_t>(r);
}

}  // namespace radonlab
