#pragma once

// Fourier multipliers of the Radon kernels (exact exponential sums), their
// continuous counterparts (oscillatory integrals by quadrature) and the
// finite-scale checks built from them: major-arc approximation, minor-arc
// differences, the box multiplier near rationals, Dirichlet kernels and
// oscillatory decay scans.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "radonlab/budget.hpp"
#include "radonlab/errors.hpp"
#include "radonlab/exponential_sums.hpp"
#include "radonlab/lattice.hpp"
#include "radonlab/multiindex.hpp"
#include "radonlab/number_theory.hpp"
#include "radonlab/phase.hpp"
#include "radonlab/quadrature.hpp"
#include "radonlab/radon.hpp"

namespace radonlab {

// m_t(xi): averaging (1/|Omega_{2^t} cap Z^k|) sum e(xi . y^Gamma), or
// singular sum_{y != 0} e(xi . y^Gamma) K(y). Exact phases.
inline Complex discrete_multiplier(Flavor flavor, const ConvexBody& body, double t, const MultiIndexSet& gamma,
                                   const std::vector<Rational>& xi, const CZKernelSpec* cz = nullptr,
                                   double cap = default_budget().lattice_points) {
  require(gamma.k() == body.k() && xi.size() == gamma.size(), "discrete_multiplier: dimension mismatch");
  if (flavor == Flavor::Singular) require(cz != nullptr && cz->k == body.k(), "discrete_multiplier: CZ kernel needed");
  const PhaseEvaluator phase(xi);
  long double re = 0, im = 0;
  std::int64_t count = 0;
  for_each_lattice_point(
      body, std::exp2(t),
      [&](std::span<const std::int64_t> y) {
        ++count;
        double w = 1.0;
        if (flavor == Flavor::Singular) {
          if (std::all_of(y.begin(), y.end(), [](auto v) { return v == 0; })) return;
          w = cz->at(y);
        }
        const Complex z = phase.at_point(y, gamma);
        re += static_cast<long double>(w) * z.real();
        im += static_cast<long double>(w) * z.imag();
      },
      cap);
  if (flavor == Flavor::Averaging) {
    re /= count;
    im /= count;
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

inline Complex discrete_multiplier(Flavor flavor, const ConvexBody& body, double t, const FrequencyVector& xi,
                                   const CZKernelSpec* cz = nullptr) {
  return discrete_multiplier(flavor, body, t, xi.gamma(), xi.as_rationals(), cz);
}

// Values of t -> m_t(xi) on [t_lo, t_hi]: the multiplier is piecewise constant
// and changes only when lattice points enter Omega_{2^t}, so these values are
// all the values it takes.
struct MultiplierTrace {
  std::vector<double> t;  // t_lo, then the entry time of each group of points
  std::vector<Complex> value;
};

inline MultiplierTrace multiplier_trace(Flavor flavor, const ConvexBody& body, const MultiIndexSet& gamma,
                                        const std::vector<Rational>& xi, double t_lo, double t_hi,
                                        const CZKernelSpec* cz = nullptr,
                                        double cap = default_budget().lattice_points) {
  require(0.0 <= t_lo && t_lo <= t_hi, "multiplier_trace: need 0 <= t_lo <= t_hi");
  require(gamma.k() == body.k() && xi.size() == gamma.size(), "multiplier_trace: dimension mismatch");
  if (flavor == Flavor::Singular) require(cz != nullptr && cz->k == body.k(), "multiplier_trace: CZ kernel needed");
  const PhaseEvaluator phase(xi);
  const auto inner = body.membership(std::exp2(t_lo));
  struct Entering {
    long double key;
    double gauge;
    Complex term;
  };
  std::vector<Entering> entering;
  std::complex<long double> sum = 0;
  std::int64_t count = 0;
  for_each_lattice_point(
      body, std::exp2(t_hi),
      [&](std::span<const std::int64_t> y) {
        const bool origin = std::all_of(y.begin(), y.end(), [](auto v) { return v == 0; });
        Complex term = 0.0;
        if (flavor == Flavor::Averaging)
          term = phase.at_point(y, gamma);
        else if (!origin)
          term = cz->at(y) * phase.at_point(y, gamma);
        if (inner(y)) {
          ++count;
          sum += std::complex<long double>(term);
        } else {
          entering.push_back({body.sweep_key(y), body.gauge(y), term});
        }
      },
      cap);
  std::sort(entering.begin(), entering.end(), [](const Entering& a, const Entering& b) { return a.key < b.key; });
  MultiplierTrace tr;
  auto current = [&]() {
    if (flavor == Flavor::Averaging) return Complex(sum / static_cast<long double>(count));
    return Complex(sum);
  };
  tr.t.push_back(t_lo);
  tr.value.push_back(current());
  std::size_t i = 0;
  while (i < entering.size()) {
    std::size_t j = i;
    while (j < entering.size() && entering[j].key == entering[i].key) {
      sum += std::complex<long double>(entering[j].term);
      ++count;
      ++j;
    }
    tr.t.push_back(std::log2(entering[i].gauge));
    tr.value.push_back(current());
    i = j;
  }
  return tr;
}

// sup |z_i - z_j| over a finite set of complex numbers (hull + all pairs on it).
inline double complex_diameter(const std::vector<Complex>& pts) {
  if (pts.size() < 2) return 0.0;
  std::vector<Complex> p = pts;
  std::sort(p.begin(), p.end(), [](const Complex& a, const Complex& b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  auto cross = [](const Complex& o, const Complex& a, const Complex& b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) - (a.imag() - o.imag()) * (b.real() - o.real());
  };
  std::vector<Complex> hull(2 * p.size());
  std::size_t h = 0;
  for (const auto& z : p) {
    while (h >= 2 && cross(hull[h - 2], hull[h - 1], z) <= 0) --h;
    hull[h++] = z;
  }
  for (std::size_t i = p.size() - 1, lo = h + 1; i-- > 0;) {
    while (h >= lo && cross(hull[h - 2], hull[h - 1], p[i]) <= 0) --h;
    hull[h++] = p[i];
  }
  hull.resize(h > 1 ? h - 1 : h);
  double best = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i)
    for (std::size_t j = i + 1; j < hull.size(); ++j) best = std::max(best, std::abs(hull[i] - hull[j]));
  if (hull.size() < 2) best = std::abs(p.front() - p.back());
  return best;
}

struct SymbolEvaluation {
  std::vector<double> xi;
  double t = 0.0;
  Complex value;
  std::string method;
  double error_estimate = 0.0;
  int panels = 0;
};

// Phi_t(xi): averaging (1/|Omega_{2^t}|) int e(xi . y^Gamma) dy, or singular
// p.v. int_{Omega_{2^t}} e(xi . y^Gamma) K(y) dy. Integrates over the unit
// body with frequencies 2^{tA} xi. The singular integrand is symmetrized
// (k = 1, odd K) or has e(0) = 1 subtracted (k = 2 ball, mean-zero K) so the
// principal value becomes an absolutely convergent integral.
inline SymbolEvaluation continuous_symbol(Flavor flavor, const ConvexBody& body, double t, const MultiIndexSet& gamma,
                                          const std::vector<double>& xi, double tol = 1e-10,
                                          const CZKernelSpec* cz = nullptr, const Budget& budget = default_budget()) {
  require(gamma.k() == body.k() && xi.size() == gamma.size(), "continuous_symbol: dimension mismatch");
  require(tol >= 1e-13, "continuous_symbol: tolerance below 1e-13 is not attainable in double precision");
  require(t >= 0.0 && std::isfinite(t), "continuous_symbol: t >= 0");
  const std::size_t k = body.k();
  std::vector<double> lam(xi.size());
  for (std::size_t i = 0; i < xi.size(); ++i) lam[i] = xi[i] * std::exp2(t * gamma[i].degree());
  const double qn = quasi_norm(std::span<const double>(lam), gamma);
  check_budget("oscillation", qn, budget.oscillation);

  const double reach = (body.kind() == BodyKind::Cube) ? body.params()[0] * std::sqrt(static_cast<double>(k))
                                                        : *std::max_element(body.params().begin(), body.params().end());
  double wiggle = 0.0;
  for (std::size_t i = 0; i < lam.size(); ++i)
    wiggle += std::abs(lam[i]) * gamma[i].degree() * std::pow(reach, gamma[i].degree() - 1);
  const int start = static_cast<int>(std::min(4096.0, std::ceil(wiggle * reach) + 1.0));

  auto phase = [&](const double* u) {
    long double s = 0;
    for (std::size_t i = 0; i < lam.size(); ++i) {
      long double m = lam[i];
      for (std::size_t j = 0; j < k; ++j)
        for (int e = 0; e < gamma[i][j]; ++e) m *= u[j];
      s += m;
    }
    s -= std::floor(s);
    const long double ang = 2.0L * std::numbers::pi_v<long double> * s;
    return Complex(static_cast<double>(std::cos(ang)), static_cast<double>(std::sin(ang)));
  };

  SymbolEvaluation ev;
  ev.xi = xi;
  ev.t = t;
  ev.method = "quadrature";
  QuadratureResult q;
  const double twopi = 2.0 * std::numbers::pi;
  if (flavor == Flavor::Averaging) {
    if (k == 1) {
      const double c = body.params()[0];
      q = integrate_1d([&](double u) { return phase(&u) / (2.0 * c); }, -c, c, tol, start);
    } else if (k == 2) {
      if (body.kind() == BodyKind::Cube) {
        const double h = body.params()[0];
        q = integrate_2d(
            [&](double x, double y) {
              const double u[2] = {x, y};
              return phase(u) / (4.0 * h * h);
            },
            {-h, -h}, {h, h}, tol, start);
      } else {
        const double a0 = body.params()[0], a1 = body.params().size() > 1 ? body.params()[1] : a0;
        q = integrate_2d(
            [&](double r, double phi) {
              const double u[2] = {a0 * r * std::cos(phi), a1 * r * std::sin(phi)};
              return phase(u) * (r / std::numbers::pi);
            },
            {0.0, 0.0}, {1.0, twopi}, tol, start);
      }
    } else if (k == 3) {
      if (body.kind() == BodyKind::Cube) {
        const double h = body.params()[0];
        q = integrate_3d(
            [&](double x, double y, double z) {
              const double u[3] = {x, y, z};
              return phase(u) / (8.0 * h * h * h);
            },
            {-h, -h, -h}, {h, h, h}, tol, start);
      } else {
        const auto& p = body.params();
        const double a0 = p[0], a1 = p.size() > 1 ? p[1] : a0, a2 = p.size() > 2 ? p[2] : a0;
        q = integrate_3d(
            [&](double r, double th, double phi) {
              const double u[3] = {a0 * r * std::sin(th) * std::cos(phi), a1 * r * std::sin(th) * std::sin(phi),
                                   a2 * r * std::cos(th)};
              return phase(u) * (r * r * std::sin(th) * 3.0 / (4.0 * std::numbers::pi));
            },
            {0.0, 0.0, 0.0}, {1.0, std::numbers::pi, twopi}, tol, start);
      }
    } else {
      throw UnsupportedError("continuous_symbol: averaging symbols are implemented for k <= 3");
    }
  } else {
    require(cz != nullptr && cz->k == k, "continuous_symbol: CZ kernel needed");
    require(cz->homogeneous, "continuous_symbol: singular symbols need a homogeneous kernel");
    if (k == 1) {
      require(cz->odd, "continuous_symbol: k = 1 singular symbols need an odd kernel");
      const double c = body.params()[0];
      q = integrate_1d(
          [&](double u) {
            const double v = -u;
            const double ku = cz->K(std::span<const double>(&u, 1));
            const double kv = cz->K(std::span<const double>(&v, 1));
            return (phase(&u) - 1.0) * ku + (phase(&v) - 1.0) * kv;
          },
          0.0, c, tol, start);
    } else if (k == 2 && body.kind() == BodyKind::Ball) {
      const double rho = body.params()[0];
      q = integrate_2d(
          [&](double r, double phi) {
            const double u[2] = {r * std::cos(phi), r * std::sin(phi)};
            return (phase(u) - 1.0) * (cz->K(std::span<const double>(u, 2)) * r);
          },
          {0.0, 0.0}, {rho, twopi}, tol, start);
    } else {
      throw UnsupportedError("continuous_symbol: singular symbols are implemented for k = 1 and for k = 2 balls");
    }
  }
  ev.value = q.value;
  ev.error_estimate = q.error_estimate;
  ev.panels = q.panels;
  if (!q.converged)
    throw NumericError("continuous_symbol: quadrature did not reach tolerance " + std::to_string(tol) +
                       " (last difference " + std::to_string(q.error_estimate) + ")");
  return ev;
}

struct MajorArcReport {
  std::int64_t N = 0;
  RationalPoint aq;
  std::vector<double> theta;
  Flavor flavor = Flavor::Averaging;
  Complex G;
  double error = 0.0;        // sup over the grid (difference form for singular)
  double q_term = 0.0;       // q 2^{-N}
  double holder_term = 0.0;  // (q 2^{-N})^sigma, singular only
  double quasi_term = 0.0;   // q*(2^{NA} (q 2^{-N}) theta)
  double ratio = 0.0;        // error / (sum of the terms)
  double ratio_q = 0.0;      // error / (q 2^{-N})
  std::size_t grid_points = 0;
  std::string grid;          // "breakpoints" or "uniform9"
};

// Compares m_t(a/q + theta) with G(a/q) Phi_t(theta) for t in [N, N+1].
inline MajorArcReport major_arc_error(Flavor flavor, const ConvexBody& body, const MultiIndexSet& gamma, std::int64_t N,
                                      const RationalPoint& aq, const std::vector<Rational>& theta,
                                      const CZKernelSpec* cz = nullptr, double tol = 1e-11) {
  require(N >= 0, "major_arc_error: N >= 0");
  require(aq.a.size() == gamma.size() && theta.size() == gamma.size(), "major_arc_error: dimension mismatch");
  require(aq.is_reduced(), "major_arc_error: a must lie in A_q");
  MajorArcReport rep;
  rep.N = N;
  rep.aq = aq;
  rep.flavor = flavor;
  for (const auto& v : theta) rep.theta.push_back(to_double(v));
  rep.G = gauss_sum(aq, gamma);
  std::vector<Rational> xi = aq.values();
  for (std::size_t i = 0; i < xi.size(); ++i) xi[i] = frac_rational(xi[i] + theta[i]);
  const bool theta_zero = std::all_of(theta.begin(), theta.end(), [](const Rational& v) { return v == 0; });
  const double Nd = static_cast<double>(N);
  std::vector<Complex> diffs;
  if (theta_zero) {
    // Phi_t(0) is 1 (averaging) or 0 (singular, cancellation) for every t, so
    // the supremum is attained on the multiplier's own breakpoints.
    const Complex phi0 = flavor == Flavor::Averaging ? Complex(1.0) : Complex(0.0);
    const auto tr = multiplier_trace(flavor, body, gamma, xi, Nd, Nd + 1.0, cz);
    for (const auto& m : tr.value) diffs.push_back(m - rep.G * phi0);
    rep.grid = "breakpoints";
  } else {
    for (int j = 0; j <= 8; ++j) {
      const double t = Nd + j / 8.0;
      const Complex m = discrete_multiplier(flavor, body, t, gamma, xi, cz);
      const auto phi = continuous_symbol(flavor, body, t, gamma, rep.theta, tol, cz);
      diffs.push_back(m - rep.G * phi.value);
    }
    rep.grid = "uniform9";
  }
  rep.grid_points = diffs.size();
  if (flavor == Flavor::Averaging) {
    for (const auto& d : diffs) rep.error = std::max(rep.error, std::abs(d));
  } else {
    rep.error = complex_diameter(diffs);
  }
  const double s = static_cast<double>(aq.q) * std::exp2(-Nd);
  rep.q_term = s;
  std::vector<double> scaled(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) scaled[i] = rep.theta[i] * std::exp2(Nd * gamma[i].degree()) * s;
  rep.quasi_term = quasi_norm(std::span<const double>(scaled), gamma);
  if (flavor == Flavor::Singular) rep.holder_term = std::pow(s, cz ? cz->sigma : 1.0);
  rep.ratio = rep.error / (rep.q_term + rep.holder_term + rep.quasi_term);
  rep.ratio_q = rep.error / rep.q_term;
  return rep;
}

struct ConditionBAlphaRow {
  double alpha = 0.0;
  double reference = 0.0;  // N^{-alpha}
  double ratio = 0.0;      // sup_diff * N^alpha
};

struct ConditionBReport {
  std::int64_t N = 0;
  MultiIndex gamma0;
  std::int64_t a = 0, q = 1;
  double beta = 0.0;
  double q_lower = 0.0, q_upper = 0.0;  // N^beta, 2^{N|gamma0|} N^{-beta}
  double sup_diff = 0.0;                // sup_{t1, t2 in [N, N+1]} |m_{t1} - m_{t2}|
  std::size_t grid_points = 0;
  std::vector<ConditionBAlphaRow> alphas;
};

// Minor-arc check: xi_{gamma0} close to a/q with q in the intermediate range.
inline ConditionBReport condition_B_report(Flavor flavor, const ConvexBody& body, const MultiIndexSet& gamma,
                                           std::int64_t N, const MultiIndex& gamma0, std::int64_t a, std::int64_t q,
                                           const std::vector<Rational>& xi, double beta,
                                           const std::vector<double>& alphas = {1.0, 2.0},
                                           const CZKernelSpec* cz = nullptr) {
  require(N >= 1 && beta > 0.0, "condition_B_report: need N >= 1 and beta > 0");
  require(q >= 1 && std::gcd(a, q) == 1, "condition_B_report: need gcd(a, q) = 1");
  ConditionBReport rep;
  rep.N = N;
  rep.gamma0 = gamma0;
  rep.a = a;
  rep.q = q;
  rep.beta = beta;
  const double Nd = static_cast<double>(N);
  rep.q_lower = std::pow(Nd, beta);
  rep.q_upper = std::exp2(Nd * gamma0.degree()) * std::pow(Nd, -beta);
  require(static_cast<double>(q) >= rep.q_lower && static_cast<double>(q) <= rep.q_upper,
          "condition_B_report: need N^beta <= q <= 2^{N|gamma0|} N^{-beta}");
  const std::size_t idx = gamma.index_of(gamma0);
  require(torus_distance(xi[idx] - Rational(a, q)) <= Rational(1, q * q),
          "condition_B_report: need |xi_gamma0 - a/q| <= 1/q^2");
  const auto tr = multiplier_trace(flavor, body, gamma, xi, Nd, Nd + 1.0, cz);
  rep.grid_points = tr.value.size();
  rep.sup_diff = complex_diameter(tr.value);
  for (double al : alphas) {
    const double ref = std::pow(Nd, -al);
    rep.alphas.push_back({al, ref, rep.sup_diff / ref});
  }
  return rep;
}

// sum_{n=0}^{L} e(n x), exact reduction of the phases.
inline Complex dirichlet_sum(const Rational& x, std::int64_t L) {
  require(L >= 0, "dirichlet_sum: L >= 0");
  if (frac_rational(x) == 0) return Complex(static_cast<double>(L + 1));
  const Complex num = unit_phase(x * Rational(L + 1)) - 1.0;
  const Complex den = unit_phase(x) - 1.0;
  return num / den;
}

// Box multiplier normalized over (Z cap [0, L])^Gamma with
// L = floor(2^{N^chi - 2 N^{chi/2}}) (0 when the exponent is negative).
class ConditionDMultiplier {
 public:
  ConditionDMultiplier(std::int64_t N, double chi, MultiIndexSet gamma) : N_(N), chi_(chi), gamma_(std::move(gamma)) {
    require(N >= 1, "condition_D_multiplier: N >= 1");
    require(chi > 0.0 && chi < 1.0, "condition_D_multiplier: chi must lie in (0, 1)");
    const double Nd = static_cast<double>(N);
    const double e = std::pow(Nd, chi) - 2.0 * std::pow(Nd, chi / 2.0);
    require(e < 62.0, "condition_D_multiplier: box side exceeds 64 bits");
    L_ = e < 0.0 ? 0 : static_cast<std::int64_t>(std::floor(std::exp2(e)));
  }

  std::int64_t side() const noexcept { return L_; }
  std::int64_t N() const noexcept { return N_; }
  double chi() const noexcept { return chi_; }
  const MultiIndexSet& gamma() const noexcept { return gamma_; }

  Complex operator()(const std::vector<Rational>& xi) const {
    require(xi.size() == gamma_.size(), "condition_D_multiplier: dimension mismatch");
    Complex out = 1.0;
    for (const auto& x : xi) out *= dirichlet_sum(x, L_) / static_cast<double>(L_ + 1);
    return out;
  }

  // Neighbourhood radius 2^{-N|gamma| + N^chi} for each gamma.
  std::vector<double> radii() const {
    std::vector<double> r;
    const double Nd = static_cast<double>(N_);
    for (const auto& g : gamma_) r.push_back(std::exp2(-Nd * g.degree() + std::pow(Nd, chi_)));
    return r;
  }

  // Largest q allowed near rationals: floor(e^{N^{chi/5}}).
  std::int64_t max_denominator() const {
    return static_cast<std::int64_t>(std::floor(std::exp(std::pow(static_cast<double>(N_), chi_ / 5.0))));
  }

 private:
  std::int64_t N_;
  double chi_;
  MultiIndexSet gamma_;
  std::int64_t L_ = 0;
};

inline ConditionDMultiplier condition_D_multiplier(std::int64_t N, double chi, const MultiIndexSet& gamma) {
  return ConditionDMultiplier(N, chi, gamma);
}

struct ConditionDRow {
  std::vector<double> theta;
  double difference = 0.0;  // |m~_N(a/q + theta) - G(a/q)|
};

struct ConditionDReport {
  std::int64_t N = 0;
  std::int64_t side = 0;
  RationalPoint aq;
  bool q_within_limit = false;  // q <= e^{N^{chi/5}}
  std::int64_t max_denominator = 0;
  Complex G;
  std::vector<ConditionDRow> rows;
  double max_difference = 0.0;
  double reference = 0.0;  // N^{-2}
};

// Evaluates at theta = 0 and at the two diagonal corners +-radius of the neighbourhood.
inline ConditionDReport condition_D_report(std::int64_t N, double chi, const MultiIndexSet& gamma,
                                           const RationalPoint& aq) {
  require(aq.a.size() == gamma.size() && aq.is_reduced(), "condition_D_report: a must lie in A_q");
  const ConditionDMultiplier m(N, chi, gamma);
  ConditionDReport rep;
  rep.N = N;
  rep.side = m.side();
  rep.aq = aq;
  rep.max_denominator = m.max_denominator();
  rep.q_within_limit = aq.q <= rep.max_denominator;
  rep.G = gauss_sum(aq, gamma);
  rep.reference = 1.0 / (static_cast<double>(N) * static_cast<double>(N));
  const auto r = m.radii();
  for (int sign : {0, 1, -1}) {
    ConditionDRow row;
    std::vector<Rational> xi = aq.values();
    for (std::size_t i = 0; i < xi.size(); ++i) {
      // Round the radius toward zero so the sample stays inside the neighbourhood.
      const double ri = std::nextafter(r[i], 0.0) * sign;
      row.theta.push_back(ri);
      xi[i] += exact_rational(ri);
    }
    row.difference = std::abs(m(xi) - rep.G);
    rep.max_difference = std::max(rep.max_difference, row.difference);
    rep.rows.push_back(row);
  }
  return rep;
}

struct DirichletIdentity {
  Complex direct;        // sum over b in {1..q}^d of e(b . x / q)
  std::int64_t closed = 0;  // q^d [x = 0 mod q]
  double deviation = 0.0;
  bool agree = false;    // deviation <= 1e-9 q^d
};

inline DirichletIdentity dirichlet_kernel_identity(std::int64_t q, const std::vector<std::int64_t>& x,
                                                   double cap = default_budget().summands) {
  require(q >= 1 && !x.empty(), "dirichlet_kernel_identity: need q >= 1 and d >= 1");
  const std::size_t d = x.size();
  check_budget("summands", std::pow(static_cast<double>(q), static_cast<double>(d)), cap);
  const auto uq = static_cast<std::uint64_t>(q);
  std::vector<std::int64_t> b(d, 1);
  long double re = 0, im = 0;
  while (true) {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < d; ++i)
      s = (s + mulmod(static_cast<std::uint64_t>(b[i]) % uq, residue(x[i], uq), uq)) % uq;
    const Complex z = unit_phase(s, uq);
    re += z.real();
    im += z.imag();
    std::size_t i = 0;
    while (i < d && ++b[i] > q) b[i++] = 1;
    if (i == d) break;
  }
  DirichletIdentity out;
  out.direct = {static_cast<double>(re), static_cast<double>(im)};
  std::int64_t qd = 1;
  for (std::size_t i = 0; i < d; ++i) qd = checked_mul(qd, q);
  const bool zero = std::all_of(x.begin(), x.end(), [&](std::int64_t v) { return v % q == 0; });
  out.closed = zero ? qd : 0;
  out.deviation = std::abs(out.direct - Complex(static_cast<double>(out.closed)));
  out.agree = out.deviation <= 1e-9 * static_cast<double>(qd);
  return out;
}

struct VdcRow {
  double t = 0.0;
  std::size_t sample = 0;
  double scaled_norm = 0.0;   // q*(2^{tA} xi)
  double abs_symbol = 0.0;    // |Phi_t(xi)|
  double decay_ratio = 0.0;   // |Phi| s^{1/d}
  double small_ratio = 0.0;   // |Phi - Phi(0)| s^{-1/d}
};

struct VdcScan {
  std::vector<VdcRow> rows;
  int degree = 1;
  double max_decay_ratio = 0.0;  // over rows with s >= 1
  double max_small_ratio = 0.0;  // over rows with s <= 1
};

inline VdcScan vdc_decay_scan(Flavor flavor, const ConvexBody& body, const MultiIndexSet& gamma,
                              const std::vector<double>& t_values, const std::vector<std::vector<double>>& xi_samples,
                              double tol = 1e-10, const CZKernelSpec* cz = nullptr) {
  VdcScan scan;
  scan.degree = gamma.max_degree();
  const double inv_d = 1.0 / scan.degree;
  const Complex phi0 = flavor == Flavor::Averaging ? Complex(1.0) : Complex(0.0);
  for (double t : t_values)
    for (std::size_t s = 0; s < xi_samples.size(); ++s) {
      VdcRow row;
      row.t = t;
      row.sample = s;
      const auto& xi = xi_samples[s];
      std::vector<double> lam(xi.size());
      for (std::size_t i = 0; i < xi.size(); ++i) lam[i] = xi[i] * std::exp2(t * gamma[i].degree());
      row.scaled_norm = quasi_norm(std::span<const double>(lam), gamma);
      const auto ev = continuous_symbol(flavor, body, t, gamma, xi, tol, cz);
      row.abs_symbol = std::abs(ev.value);
      if (row.scaled_norm > 0.0) {
        row.decay_ratio = row.abs_symbol * std::pow(row.scaled_norm, inv_d);
        row.small_ratio = std::abs(ev.value - phi0) * std::pow(row.scaled_norm, -inv_d);
      }
      if (row.scaled_norm >= 1.0) scan.max_decay_ratio = std::max(scan.max_decay_ratio, row.decay_ratio);
      if (row.scaled_norm > 0.0 && row.scaled_norm <= 1.0)
        scan.max_small_ratio = std::max(scan.max_small_ratio, row.small_ratio);
      scan.rows.push_back(row);
    }
  return scan;
}

}  // namespace radonlab
