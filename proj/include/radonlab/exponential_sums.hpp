#pragma once

// Complete (Gauss) sums, weighted Weyl sums over lattice points, Dirichlet
// approximation and rescaling, and the Vandermonde change of variables.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "radonlab/budget.hpp"
#include "radonlab/errors.hpp"
#include "radonlab/fft.hpp"
#include "radonlab/lattice.hpp"
#include "radonlab/multiindex.hpp"
#include "radonlab/number_theory.hpp"
#include "radonlab/phase.hpp"
#include "radonlab/polynomial.hpp"

namespace radonlab {

// a/q with 0 <= a < q and gcd(a, q) = 1.
struct ReducedFraction {
  std::int64_t a = 0;
  std::int64_t q = 1;

  static ReducedFraction make(std::int64_t a, std::int64_t q) {
    require(q >= 1, "ReducedFraction: q >= 1");
    std::int64_t r = static_cast<std::int64_t>(residue(a, static_cast<std::uint64_t>(q)));
    const std::int64_t g = std::gcd(r, q);
    if (r == 0) return {0, 1};
    return {r / g, q / g};
  }

  Rational value() const { return Rational(a, q); }
  friend bool operator==(const ReducedFraction&, const ReducedFraction&) = default;
};

// a/q in common-denominator form, one numerator per gamma.
struct RationalPoint {
  std::vector<std::int64_t> a;
  std::int64_t q = 1;

  // gcd(q, a_1, ..., a_d) = 1, i.e. a in A_q up to the choice of representatives.
  bool is_reduced() const {
    std::int64_t g = q;
    for (auto v : a) g = std::gcd(g, v);
    return g == 1;
  }

  std::vector<Rational> values() const {
    std::vector<Rational> out;
    for (auto v : a) out.emplace_back(v, q);
    return out;
  }
};

// G(a/q) = q^{-k} sum_{r in {1..q}^k} e((a/q) . r^Gamma), by a histogram of
// phase residues so only q trigonometric evaluations are needed.
inline Complex gauss_sum(const RationalPoint& point, const MultiIndexSet& gamma,
                         double cap = default_budget().summands) {
  require(point.q >= 1, "gauss_sum: q >= 1");
  require(point.a.size() == gamma.size(), "gauss_sum: numerator count must equal |Gamma|");
  require(point.is_reduced(), "gauss_sum: a must lie in A_q");
  const std::size_t k = gamma.k();
  const auto q = static_cast<std::uint64_t>(point.q);
  check_budget("summands", std::pow(static_cast<double>(q), static_cast<double>(k)), cap);
  std::vector<std::uint64_t> a(point.a.size());
  for (std::size_t j = 0; j < a.size(); ++j) a[j] = residue(point.a[j], q);
  std::vector<std::uint64_t> hist(q, 0);
  std::vector<std::int64_t> r(k, 1);
  while (true) {
    std::uint64_t s = 0;
    for (std::size_t j = 0; j < gamma.size(); ++j) {
      if (a[j] == 0) continue;
      std::uint64_t m = 1 % q;
      for (std::size_t i = 0; i < k; ++i)
        if (gamma[j][i] != 0) m = mulmod(m, powmod(static_cast<std::uint64_t>(r[i]) % q, static_cast<unsigned>(gamma[j][i]), q), q);
      s = (s + mulmod(a[j], m, q)) % q;
    }
    ++hist[s];
    std::size_t i = 0;
    while (i < k && ++r[i] > point.q) r[i++] = 1;
    if (i == k) break;
  }
  long double re = 0, im = 0;
  for (std::uint64_t s = 0; s < q; ++s) {
    if (hist[s] == 0) continue;
    const Complex z = unit_phase(s, q);
    re += static_cast<long double>(hist[s]) * z.real();
    im += static_cast<long double>(hist[s]) * z.imag();
  }
  const long double norm = std::pow(static_cast<long double>(q), static_cast<long double>(k));
  return {static_cast<double>(re / norm), static_cast<double>(im / norm)};
}

struct GaussScanRow {
  std::int64_t q = 0;
  double max_abs = 0.0;
  std::vector<std::int64_t> argmax;  // a in {1..q}^d
};

struct GaussScan {
  std::vector<GaussScanRow> rows;
  double exponent = 0.0;  // least-squares slope of log max|G| against log q
  std::int64_t fit_lo = 0, fit_hi = 0;
  std::size_t fit_points = 0;
  std::size_t zero_rows_skipped = 0;
};

// Least-squares slope of log y on log x over positive y.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y, std::size_t* used = nullptr) {
  long double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(y[i] > 0.0) || !(x[i] > 0.0)) continue;
    const long double lx = std::log(static_cast<long double>(x[i]));
    const long double ly = std::log(static_cast<long double>(y[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (used) *used = n;
  require(n >= 2, "loglog_slope: need at least two positive points");
  const long double den = static_cast<long double>(n) * sxx - sx * sx;
  require(den > 0, "loglog_slope: degenerate abscissae");
  return static_cast<double>((static_cast<long double>(n) * sxy - sx * sy) / den);
}

// All |G(a/q)| for one q at once: histogram the vectors (r^gamma mod q) over
// r in {1..q}^k, then one d-dimensional DFT gives sum_v hist(v) e(a.v/q) for every a.
inline GaussScanRow gauss_scan_row(const MultiIndexSet& gamma, std::int64_t q, const Budget& budget = default_budget()) {
  require(q >= 1, "gauss_scan: q >= 1");
  const std::size_t k = gamma.k(), d = gamma.size();
  const double qd = static_cast<double>(q);
  check_budget("summands", std::pow(qd, static_cast<double>(k)), budget.summands);
  check_budget("support", std::pow(qd, static_cast<double>(d)), budget.support);
  const auto uq = static_cast<std::uint64_t>(q);
  std::size_t total = 1;
  for (std::size_t j = 0; j < d; ++j) total *= static_cast<std::size_t>(q);
  std::vector<std::complex<double>> grid(total, 0.0);
  std::vector<std::int64_t> r(k, 1);
  while (true) {
    std::size_t idx = 0;
    for (std::size_t j = 0; j < d; ++j) {
      std::uint64_t m = 1 % uq;
      for (std::size_t i = 0; i < k; ++i)
        if (gamma[j][i] != 0) m = mulmod(m, powmod(static_cast<std::uint64_t>(r[i]) % uq, static_cast<unsigned>(gamma[j][i]), uq), uq);
      idx = idx * static_cast<std::size_t>(q) + static_cast<std::size_t>(m);
    }
    grid[idx] += 1.0;
    std::size_t i = 0;
    while (i < k && ++r[i] > q) r[i++] = 1;
    if (i == k) break;
  }
  fft_inplace(grid, std::vector<int>(d, static_cast<int>(q)), FftDirection::Backward);
  const double norm = std::pow(qd, static_cast<double>(k));
  GaussScanRow row;
  row.q = q;
  row.max_abs = -1.0;
  std::vector<std::int64_t> a(d, 1);
  for (bool more = true; more;) {
    std::int64_t g = q;
    for (auto v : a) g = std::gcd(g, v);
    if (g == 1) {
      std::size_t idx = 0;
      for (auto v : a) idx = idx * static_cast<std::size_t>(q) + static_cast<std::size_t>(v % q);
      const double val = std::abs(grid[idx]) / norm;
      if (val > row.max_abs + 1e-12) {
        row.max_abs = val;
        row.argmax = a;
      }
    }
    more = false;
    for (std::size_t i = d; i-- > 0;) {
      if (++a[i] <= q) {
        more = true;
        break;
      }
      a[i] = 1;
    }
  }
  return row;
}

inline GaussScan gauss_decay_scan(const MultiIndexSet& gamma, std::int64_t q_max, std::int64_t q_min = 2,
                                  const Budget& budget = default_budget()) {
  require(q_min >= 1 && q_max >= q_min, "gauss_decay_scan: need 1 <= q_min <= q_max");
  GaussScan scan;
  for (std::int64_t q = q_min; q <= q_max; ++q) scan.rows.push_back(gauss_scan_row(gamma, q, budget));
  scan.fit_lo = std::max<std::int64_t>(q_min, (q_max + 3) / 4);
  scan.fit_hi = q_max;
  std::vector<double> x, y;
  for (const auto& row : scan.rows) {
    if (row.q < scan.fit_lo) continue;
    if (row.max_abs <= 1e-12) {
      ++scan.zero_rows_skipped;
      continue;
    }
    x.push_back(static_cast<double>(row.q));
    y.push_back(row.max_abs);
  }
  if (x.size() >= 2) scan.exponent = loglog_slope(x, y, &scan.fit_points);
  return scan;
}

using LatticeWeight = std::function<double(std::span<const std::int64_t>)>;

// sum_{n in Omega_N cap Z^k} e(P(n)) phi(n), exact phases.
inline Complex weyl_sum(const IntegerPolynomial& P, const ConvexBody& body, double N, const LatticeWeight& phi = {},
                        double cap = default_budget().lattice_points) {
  require(P.k() == body.k(), "weyl_sum: polynomial and body dimensions differ");
  require(N >= 0.0, "weyl_sum: N >= 0");
  const auto [gamma, coeffs] = P.frequency_form();
  const PhaseEvaluator phase(coeffs);
  long double re = 0, im = 0;
  for_each_lattice_point(
      body, N,
      [&](std::span<const std::int64_t> n) {
        const Complex z = phase.at_point(n, gamma);
        const double w = phi ? phi(n) : 1.0;
        re += static_cast<long double>(w) * z.real();
        im += static_cast<long double>(w) * z.imag();
      },
      cap);
  // Constant term contributes a global phase.
  Rational c0;
  (void)P.frequency_form(&c0);
  const Complex base{static_cast<double>(re), static_cast<double>(im)};
  return c0 == 0 ? base : base * unit_phase(c0);
}

// sum_{n=1}^{N} e(P(n)) for a one-variable polynomial.
inline Complex weyl_sum_interval(const IntegerPolynomial& P, std::int64_t N,
                                 double cap = default_budget().summands) {
  require(P.k() == 1, "weyl_sum_interval: one variable only");
  require(N >= 0, "weyl_sum_interval: N >= 0");
  check_budget("summands", static_cast<double>(N), cap);
  Rational c0;
  const auto [gamma, coeffs] = P.frequency_form(&c0);
  const PhaseEvaluator phase(coeffs);
  long double re = 0, im = 0;
  for (std::int64_t n = 1; n <= N; ++n) {
    const std::int64_t pt[1] = {n};
    const Complex z = phase.at_point(pt, gamma);
    re += z.real();
    im += z.imag();
  }
  const Complex base{static_cast<double>(re), static_cast<double>(im)};
  return c0 == 0 ? base : base * unit_phase(c0);
}

// a/q with 1 <= q <= Q and ||theta - a/q|| <= 1/(q(Q+1)) (distance mod 1), the
// last continued-fraction convergent with denominator at most Q.
inline ReducedFraction dirichlet_approx(const Rational& theta, std::int64_t Q) {
  require(Q >= 1, "dirichlet_approx: Q >= 1");
  Rational x = frac_rational(theta);
  BigInt h_prev = 1, h = 0;  // h_{-1}, h_0 after the first step
  BigInt k_prev = 0, k = 1;
  // The first partial quotient of x in [0,1) is 0: convergent 0/1.
  Rational rem = x;
  while (rem != 0) {
    const Rational inv = Rational(1) / rem;
    const BigInt an = floor_rational(inv);
    const BigInt h_next = an * h + h_prev;
    const BigInt k_next = an * k + k_prev;
    if (k_next > Q) break;
    h_prev = h;
    k_prev = k;
    h = h_next;
    k = k_next;
    rem = inv - Rational(an);
  }
  ReducedFraction out{0, 1};
  if (h != k) out = {h.convert_to<std::int64_t>(), k.convert_to<std::int64_t>()};
  const Rational err = torus_distance(theta - out.value());
  if (err > Rational(1, out.q * (Q + 1)))
    throw Error("dirichlet_approx: internal guarantee violated");
  return out;
}

inline ReducedFraction dirichlet_approx(double theta, std::int64_t Q) {
  return dirichlet_approx(exact_rational(theta), Q);
}

// Given ||theta - a/q|| <= 1/q^2 with 0 <= a < q <= M, returns a'/q' with
// ||Q theta - a'/q'|| <= 1/(2 q' M) and q/(2Q) <= q' <= 2M, via Dirichlet at modulus floor(2M).
inline ReducedFraction dirichlet_rescale(const Rational& theta, std::int64_t a, std::int64_t q, std::int64_t Q,
                                         const Rational& M) {
  require(q >= 1 && 0 <= a && a < q, "dirichlet_rescale: need 0 <= a < q");
  require(std::gcd(a, q) == 1, "dirichlet_rescale: gcd(a, q) must be 1");
  require(Rational(q) <= M, "dirichlet_rescale: need q <= M");
  require(Q >= 1, "dirichlet_rescale: Q >= 1");
  require(torus_distance(theta - Rational(a, q)) <= Rational(1, q * q),
          "dirichlet_rescale: need |theta - a/q| <= 1/q^2");
  const BigInt modulus = floor_rational(2 * M);
  require(modulus <= BigInt(std::numeric_limits<std::int64_t>::max()), "dirichlet_rescale: M too large");
  const auto out = dirichlet_approx(Rational(Q) * theta, modulus.convert_to<std::int64_t>());
  const Rational qp(out.q);
  const bool close = torus_distance(Rational(Q) * theta - out.value()) <= Rational(1) / (2 * qp * M);
  const bool lower = Rational(q, 2 * Q) <= qp;
  const bool upper = qp <= 2 * M;
  if (!(close && lower && upper)) throw Error("dirichlet_rescale: postcondition violated");
  return out;
}

inline ReducedFraction dirichlet_rescale(double theta, std::int64_t a, std::int64_t q, std::int64_t Q, double M) {
  return dirichlet_rescale(exact_rational(theta), a, q, Q, exact_rational(M));
}

// Unimodular maps L_j(x) = (x_1, x_2 + j^{mu_2} x_1, ..., x_k + j^{mu_k} x_1),
// j = 1..nu, and the exact linear relation recovering one coefficient of a
// homogeneous degree-l polynomial from the x_1^l coefficients of P o L_j.
class VandermondeAutomorphisms {
 public:
  VandermondeAutomorphisms(int k, int l) : k_(k), l_(l) {
    require(k >= 1 && l >= 1, "vandermonde_automorphisms: need k, l >= 1");
    nu_ = static_cast<int>(binomial_u64(static_cast<unsigned>(l + k - 1), static_cast<unsigned>(k - 1)));
    // Homogeneous exponents of degree l in lexicographic order.
    for (const auto& m : full_degree_set(static_cast<std::size_t>(k), l))
      if (m.degree() == l) alphas_.push_back(m);
    if (static_cast<int>(alphas_.size()) != nu_) throw Error("vandermonde: monomial count mismatch");
    // mu_1 never enters L_j; mu_i = base^{i-2} for i >= 2 separates the
    // exponents once base > l (base-(l+1) digits of (alpha_2, ..., alpha_k)).
    std::int64_t base = static_cast<std::int64_t>(l) + 1;
    for (int attempt = 0; attempt < 16; ++attempt, ++base) {
      mu_.assign(static_cast<std::size_t>(k), 0);
      if (k > 1) mu_[1] = 1;
      for (int i = 2; i < k; ++i) mu_[static_cast<std::size_t>(i)] = mu_[static_cast<std::size_t>(i - 1)] * base;
      // sigma_j = P(1, j^{mu_2}, ..., j^{mu_k}): alpha contributes j^{sum_{i>=2} mu_i alpha_i}.
      exps_.clear();
      for (const auto& a : alphas_) {
        std::int64_t e = 0;
        for (int i = 1; i < k; ++i) e += mu_[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(i)];
        exps_.push_back(e);
      }
      std::vector<std::int64_t> sorted = exps_;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) break;
      if (attempt == 15) throw Error("vandermonde: could not separate exponents");
    }
    for (int j = 1; j <= nu_; ++j) {
      std::vector<std::vector<std::int64_t>> L(static_cast<std::size_t>(k), std::vector<std::int64_t>(static_cast<std::size_t>(k), 0));
      for (int i = 0; i < k; ++i) L[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
      for (int i = 1; i < k; ++i) {
        const BigInt c = big_pow(BigInt(j), static_cast<unsigned>(mu_[static_cast<std::size_t>(i)]));
        require(c <= BigInt(std::numeric_limits<std::int64_t>::max()), "vandermonde: matrix entry overflows int64");
        L[static_cast<std::size_t>(i)][0] = c.convert_to<std::int64_t>();
      }
      maps_.push_back(std::move(L));
    }
  }

  int k() const noexcept { return k_; }
  int l() const noexcept { return l_; }
  int nu() const noexcept { return nu_; }
  const std::vector<std::int64_t>& mu() const noexcept { return mu_; }
  const std::vector<MultiIndex>& alphas() const noexcept { return alphas_; }
  const std::vector<std::vector<std::vector<std::int64_t>>>& maps() const noexcept { return maps_; }

  // V[j][alpha] = j^{e(alpha)}, so sigma = V theta.
  std::vector<std::vector<BigInt>> matrix() const {
    std::vector<std::vector<BigInt>> V;
    for (int j = 1; j <= nu_; ++j) {
      std::vector<BigInt> row;
      for (auto e : exps_) row.push_back(big_pow(BigInt(j), static_cast<unsigned>(e)));
      V.push_back(std::move(row));
    }
    return V;
  }

  // Integers (c_0, c_1, ..., c_nu), c_0 > 0, primitive, with
  // c_0 theta_{gamma0} = sum_j c_j sigma_j for every homogeneous P of degree l.
  std::vector<BigInt> coefficients(const MultiIndex& gamma0) const {
    require(static_cast<int>(gamma0.dim()) == k_ && gamma0.degree() == l_,
            "vandermonde: gamma0 must have length k and degree l");
    const auto pos = static_cast<std::size_t>(std::find(alphas_.begin(), alphas_.end(), gamma0) - alphas_.begin());
    const auto V = matrix();
    const auto n = static_cast<std::size_t>(nu_);
    // Solve V^T c = e_{gamma0} by exact Gaussian elimination.
    std::vector<std::vector<Rational>> A(n, std::vector<Rational>(n + 1));
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) A[r][c] = Rational(V[c][r]);
      A[r][n] = (r == pos) ? Rational(1) : Rational(0);
    }
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t piv = col;
      while (piv < n && A[piv][col] == 0) ++piv;
      if (piv == n) throw Error("vandermonde: singular system");
      std::swap(A[piv], A[col]);
      for (std::size_t r = 0; r < n; ++r) {
        if (r == col || A[r][col] == 0) continue;
        const Rational f = A[r][col] / A[col][col];
        for (std::size_t c = col; c <= n; ++c) A[r][c] -= f * A[col][c];
      }
    }
    std::vector<Rational> sol(n);
    BigInt den = 1;
    for (std::size_t r = 0; r < n; ++r) {
      sol[r] = A[r][n] / A[r][r];
      den = big_lcm(den, boost::multiprecision::denominator(sol[r]));
    }
    std::vector<BigInt> out;
    out.push_back(den);
    BigInt g = den;
    for (const auto& s : sol) {
      const BigInt v = boost::multiprecision::numerator(s) * (den / boost::multiprecision::denominator(s));
      out.push_back(v);
      g = big_gcd(g, boost::multiprecision::abs(v));
    }
    if (g > 1)
      for (auto& v : out) v /= g;
    return out;
  }

 private:
  int k_, l_, nu_ = 0;
  std::vector<std::int64_t> mu_;
  std::vector<MultiIndex> alphas_;
  std::vector<std::int64_t> exps_;
  std::vector<std::vector<std::vector<std::int64_t>>> maps_;
};

inline VandermondeAutomorphisms vandermonde_automorphisms(int k, int l) { return VandermondeAutomorphisms(k, l); }

// Coefficient of x^target in P(L x), by exact expansion.
inline Rational compose_coefficient(const IntegerPolynomial& P, const std::vector<std::vector<std::int64_t>>& L,
                                    const MultiIndex& target) {
  require(target.dim() == P.k(), "compose_coefficient: target dimension mismatch");
  return P.compose_linear(L).coefficient(target);
}

struct WeylBoundReport {
  double sum_modulus = 0.0;
  double kappa = 0.0;
  double bound = 0.0;  // N^k kappa^{-eps} log(N + 1)
  double ratio = 0.0;
};

// Compares |sum_{Omega_N} e(P(n))| with N^k kappa^{-eps} log(N+1), where
// kappa = min(q, N^{|gamma0|}/q) and ||xi_{gamma0} - a/q|| <= 1/q^2 is checked exactly.
inline WeylBoundReport weyl_bound_report(const IntegerPolynomial& P, const ConvexBody& body, double N,
                                         const MultiIndex& gamma0, std::int64_t a, std::int64_t q, double eps) {
  require(N >= 1.0, "weyl_bound_report: N >= 1");
  require(q >= 1 && std::gcd(a, q) == 1, "weyl_bound_report: need gcd(a, q) = 1");
  require(eps >= 0.0, "weyl_bound_report: eps >= 0");
  require(!gamma0.is_zero() && gamma0.dim() == P.k(), "weyl_bound_report: invalid gamma0");
  const Rational xi = P.coefficient(gamma0);
  require(torus_distance(xi - Rational(a, q)) <= Rational(1, q * q),
          "weyl_bound_report: need |xi_gamma0 - a/q| <= 1/q^2");
  WeylBoundReport rep;
  rep.sum_modulus = std::abs(weyl_sum(P, body, N));
  const double qd = static_cast<double>(q);
  rep.kappa = std::min(qd, std::pow(N, gamma0.degree()) / qd);
  const double kk = static_cast<double>(P.k());
  rep.bound = std::pow(N, kk) * std::pow(std::max(rep.kappa, 1e-300), -eps) * std::log(N + 1.0);
  rep.ratio = rep.sum_modulus / rep.bound;
  return rep;
}

struct WooleyReport {
  double sum_modulus = 0.0;
  double shape = 0.0;  // N log N (1/q + 1/N + q/N^d)^{1/(2d^2-2d+1)}
  double ratio = 0.0;
};

// One-variable sum over 1..N against the logarithmic-loss Weyl estimate.
inline WooleyReport wooley_report(const IntegerPolynomial& P, std::int64_t N, std::int64_t a, std::int64_t q) {
  require(P.k() == 1, "wooley_report: one variable only");
  require(N >= 2 && q >= 1, "wooley_report: need N >= 2, q >= 1");
  const int d = P.degree();
  require(d >= 2, "wooley_report: degree must be >= 2");
  const Rational lead = P.coefficient(std::vector<int>{d});
  require(std::gcd(a, q) == 1 && torus_distance(lead - Rational(a, q)) <= Rational(1, q * q),
          "wooley_report: need |lead - a/q| <= 1/q^2 with gcd(a, q) = 1");
  WooleyReport rep;
  rep.sum_modulus = std::abs(weyl_sum_interval(P, N));
  const double Nd = static_cast<double>(N), qd = static_cast<double>(q);
  const double inner = 1.0 / qd + 1.0 / Nd + qd / std::pow(Nd, d);
  rep.shape = Nd * std::log(Nd) * std::pow(inner, 1.0 / (2.0 * d * d - 2.0 * d + 1.0));
  rep.ratio = rep.sum_modulus / rep.shape;
  return rep;
}

}  // namespace radonlab
