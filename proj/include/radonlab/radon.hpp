#pragma once

// Discrete averaging and truncated singular Radon kernels along polynomial
// curves, their application to finitely supported and periodic functions,
// jump profiles of operator families and the exact block 1-variation table.
//
// Scale convention: the kernel indexed by t lives on Omega_{2^t}.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "radonlab/budget.hpp"
#include "radonlab/errors.hpp"
#include "radonlab/exponential_sums.hpp"
#include "radonlab/fft.hpp"
#include "radonlab/lattice.hpp"
#include "radonlab/lattice_function.hpp"
#include "radonlab/multiindex.hpp"
#include "radonlab/number_theory.hpp"
#include "radonlab/polynomial.hpp"
#include "radonlab/variation.hpp"

namespace radonlab {

enum class Flavor { Averaging, Singular };

inline std::string to_string(Flavor f) { return f == Flavor::Averaging ? "averaging" : "singular"; }

inline Flavor parse_flavor(const std::string& s) {
  if (s == "avg" || s == "averaging") return Flavor::Averaging;
  if (s == "sing" || s == "singular") return Flavor::Singular;
  throw PreconditionError("unknown flavor '" + s + "' (expected avg or sing)");
}

// A Calderon-Zygmund kernel together with the body on which it cancels.
struct CZKernelSpec {
  std::string id;
  std::size_t k = 1;
  std::function<double(std::span<const double>)> K;
  double sigma = 1.0;            // Hoelder exponent
  double holder_constant = 1.0;  // |K(x-y) - K(x)| <= C |y|^sigma |x|^{-k-sigma} for |y| <= |x|/2
  ConvexBody body = ConvexBody::ball(1);
  bool odd = false;              // K(-y) = -K(y)
  bool homogeneous = true;       // K(r y) = r^{-k} K(y)

  double operator()(std::span<const double> y) const { return K(y); }
  double at(std::span<const std::int64_t> y) const {
    std::vector<double> x(y.begin(), y.end());
    return K(std::span<const double>(x));
  }
};

// K(y) = 1/y on (-1, 1).
inline CZKernelSpec hilbert_kernel() {
  CZKernelSpec s;
  s.id = "hilbert";
  s.k = 1;
  s.K = [](std::span<const double> y) { return 1.0 / y[0]; };
  s.sigma = 1.0;
  // |1/(x-y) - 1/x| = |y| / (|x||x-y|) <= 2|y|/|x|^2 when |y| <= |x|/2.
  s.holder_constant = 2.0;
  s.body = ConvexBody::ball(1);
  s.odd = true;
  return s;
}

// K(y) = (y1^2 - y2^2)/|y|^4 = cos(2 phi)/r^2 on the unit disc; |grad K| = 2/r^3.
inline CZKernelSpec quadrupole_kernel() {
  CZKernelSpec s;
  s.id = "quadrupole";
  s.k = 2;
  s.K = [](std::span<const double> y) {
    const double r2 = y[0] * y[0] + y[1] * y[1];
    return (y[0] * y[0] - y[1] * y[1]) / (r2 * r2);
  };
  s.holder_constant = 16.0;
  s.body = ConvexBody::ball(2);
  return s;
}

// K(y) = y1 y2/|y|^4 = sin(2 phi)/(2 r^2) on the unit disc; |grad K| = 1/r^3.
inline CZKernelSpec mixed_kernel() {
  CZKernelSpec s;
  s.id = "mixed";
  s.k = 2;
  s.K = [](std::span<const double> y) {
    const double r2 = y[0] * y[0] + y[1] * y[1];
    return y[0] * y[1] / (r2 * r2);
  };
  s.holder_constant = 8.0;
  s.body = ConvexBody::ball(2);
  return s;
}

inline CZKernelSpec cz_kernel_by_id(const std::string& id) {
  if (id == "hilbert") return hilbert_kernel();
  if (id == "quadrupole") return quadrupole_kernel();
  if (id == "mixed") return mixed_kernel();
  throw PreconditionError("unknown kernel id '" + id + "'");
}

struct CZAudit {
  double worst_size_ratio = 0.0;    // max |K(y)| |y|^k
  double worst_holder_ratio = 0.0;  // max observed / allowed Hoelder increment
  bool size_ok = false;
  bool holder_ok = false;
};

inline CZAudit audit_cz_kernel(const CZKernelSpec& cz, int samples = 10000, std::uint64_t seed = 7) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  CZAudit a;
  const auto kk = static_cast<double>(cz.k);
  auto random_point = [&](double scale) {
    std::vector<double> x(cz.k);
    double n = 0;
    for (auto& v : x) {
      v = g(rng);
      n += v * v;
    }
    n = std::sqrt(n);
    for (auto& v : x) v *= scale / n;
    return x;
  };
  for (int i = 0; i < samples; ++i) {
    const double r = std::exp2(20.0 * u(rng) - 10.0);
    const auto x = random_point(r);
    const double kx = cz(x);
    a.worst_size_ratio = std::max(a.worst_size_ratio, std::abs(kx) * std::pow(r, kk));
    const auto y = random_point(r * 0.5 * u(rng));
    std::vector<double> xy(cz.k);
    double ny = 0;
    for (std::size_t j = 0; j < cz.k; ++j) {
      xy[j] = x[j] - y[j];
      ny += y[j] * y[j];
    }
    ny = std::sqrt(ny);
    if (ny == 0.0) continue;
    const double allowed = cz.holder_constant * std::pow(ny, cz.sigma) * std::pow(r, -kk - cz.sigma);
    a.worst_holder_ratio = std::max(a.worst_holder_ratio, std::abs(cz(xy) - kx) / allowed);
  }
  a.size_ok = a.worst_size_ratio <= 1.0 + 1e-12;
  a.holder_ok = a.worst_holder_ratio <= 1.0 + 1e-12;
  return a;
}

class RadonKernel {
 public:
  RadonKernel(Flavor flavor, double t, std::size_t dim, std::string provenance)
      : flavor_(flavor), t_(t), entries_(dim), provenance_(std::move(provenance)) {}

  Flavor flavor() const noexcept { return flavor_; }
  double t() const noexcept { return t_; }
  std::size_t dim() const noexcept { return entries_.dim(); }
  const LatticeFunction& entries() const noexcept { return entries_; }
  const std::string& provenance() const noexcept { return provenance_; }
  std::size_t size() const noexcept { return entries_.size(); }

  // Averaging kernels: integer multiplicities over the lattice count.
  const std::map<Site, std::int64_t>& multiplicities() const noexcept { return mult_; }
  std::int64_t lattice_count() const noexcept { return count_; }
  Rational exact_mass() const {
    require(flavor_ == Flavor::Averaging, "exact_mass: averaging kernels only");
    std::int64_t s = 0;
    for (const auto& [x, m] : mult_) s += m;
    return Rational(s, count_);
  }
  Rational exact_weight(const Site& x) const {
    require(flavor_ == Flavor::Averaging, "exact_weight: averaging kernels only");
    auto it = mult_.find(x);
    return it == mult_.end() ? Rational(0) : Rational(it->second, count_);
  }

  // Coordinate-wise max |x_i| over the support.
  std::vector<std::int64_t> radius() const { return entries_.radius(); }

  // sum_x K(x) e(xi . x), exact phases.
  Complex transform(const std::vector<Rational>& xi) const {
    const PhaseEvaluator phase(xi);
    Complex s = 0.0;
    for (const auto& [x, w] : entries_) s += w * phase.at_values(std::span<const std::int64_t>(x));
    return s;
  }

  // Builders only.
  void add_average_point(const Site& image) { ++mult_[image]; }
  void add_weight(const Site& image, double w) { entries_.add(image, w); }
  void finalize_average(std::int64_t count) {
    count_ = count;
    for (const auto& [x, m] : mult_)
      entries_.set(x, static_cast<double>(m) / static_cast<double>(count));
  }

 private:
  Flavor flavor_;
  double t_;
  LatticeFunction entries_;
  std::string provenance_;
  std::map<Site, std::int64_t> mult_;
  std::int64_t count_ = 0;
};

namespace detail {

using ImageMap = std::function<Site(std::span<const std::int64_t>)>;

inline RadonKernel build_kernel(const ConvexBody& body, double t, Flavor flavor, std::size_t dim, const ImageMap& image,
                                const CZKernelSpec* cz, std::string provenance, double cap) {
  require(t >= 0.0 && std::isfinite(t), "kernel: t >= 0");
  if (flavor == Flavor::Singular) {
    require(cz != nullptr, "kernel: singular flavor needs a CZ kernel");
    require(cz->k == body.k(), "kernel: CZ kernel dimension differs from the body");
  }
  RadonKernel out(flavor, t, dim, std::move(provenance));
  std::int64_t count = 0;
  for_each_lattice_point(
      body, std::exp2(t),
      [&](std::span<const std::int64_t> y) {
        ++count;
        if (flavor == Flavor::Averaging) {
          out.add_average_point(image(y));
        } else if (std::any_of(y.begin(), y.end(), [](auto v) { return v != 0; })) {
          out.add_weight(image(y), cz->at(y));
        }
      },
      cap);
  if (flavor == Flavor::Averaging) out.finalize_average(count);
  return out;
}

}  // namespace detail

// Mass 1/|Omega_{2^t} cap Z^k| at y^Gamma for each lattice point y; collisions add.
inline RadonKernel averaging_kernel(const ConvexBody& body, double t, const MultiIndexSet& gamma,
                                    double cap = default_budget().lattice_points) {
  require(gamma.k() == body.k(), "averaging_kernel: Gamma and body dimensions differ");
  return detail::build_kernel(
      body, t, Flavor::Averaging, gamma.size(),
      [&](std::span<const std::int64_t> y) { return canonical_map_checked(y, gamma); }, nullptr,
      "averaging " + body.describe() + " Gamma=" + gamma.str(), cap);
}

// Weight K(y) at y^Gamma for y in Omega_{2^t} cap Z^k minus the origin.
inline RadonKernel singular_kernel(const ConvexBody& body, double t, const MultiIndexSet& gamma, const CZKernelSpec& cz,
                                   double cap = default_budget().lattice_points) {
  require(gamma.k() == body.k(), "singular_kernel: Gamma and body dimensions differ");
  return detail::build_kernel(
      body, t, Flavor::Singular, gamma.size(),
      [&](std::span<const std::int64_t> y) { return canonical_map_checked(y, gamma); }, &cz,
      "singular[" + cz.id + "] " + body.describe() + " Gamma=" + gamma.str(), cap);
}

inline RadonKernel radon_kernel(Flavor flavor, const ConvexBody& body, double t, const MultiIndexSet& gamma,
                                const CZKernelSpec* cz = nullptr, double cap = default_budget().lattice_points) {
  if (flavor == Flavor::Averaging) return averaging_kernel(body, t, gamma, cap);
  require(cz != nullptr, "radon_kernel: singular flavor needs a CZ kernel");
  return singular_kernel(body, t, gamma, *cz, cap);
}

// Same construction with y -> (P_1(y), ..., P_m(y)) for integer polynomials P_i.
inline RadonKernel radon_along_P(const std::vector<IntegerPolynomial>& P, const ConvexBody& body, double t,
                                 Flavor flavor, const CZKernelSpec* cz = nullptr, int max_degree = 0,
                                 double cap = default_budget().lattice_points) {
  require(!P.empty(), "radon_along_P: need at least one component");
  for (const auto& p : P) {
    require(p.k() == body.k(), "radon_along_P: polynomial and body dimensions differ");
    if (max_degree > 0) require(p.degree() <= max_degree, "radon_along_P: component degree exceeds the bound");
    for (const auto& [e, c] : p.terms())
      require(boost::multiprecision::denominator(c) == 1, "radon_along_P: coefficients must be integers");
  }
  auto image = [&](std::span<const std::int64_t> y) {
    Site out(P.size());
    for (std::size_t i = 0; i < P.size(); ++i) {
      const BigInt v = boost::multiprecision::numerator(P[i].evaluate(y));
      if (v > BigInt(std::numeric_limits<std::int64_t>::max()) || v < BigInt(std::numeric_limits<std::int64_t>::min()))
        throw OverflowError("radon_along_P: image coordinate exceeds 64 bits");
      out[i] = v.convert_to<std::int64_t>();
    }
    return out;
  };
  std::string desc = "P=(";
  for (std::size_t i = 0; i < P.size(); ++i) desc += (i ? ", " : "") + P[i].str();
  desc += ")";
  return detail::build_kernel(body, t, flavor, P.size(), image, cz, to_string(flavor) + " " + body.describe() + " " + desc,
                              cap);
}

// g(x) = sum_z K(z) f(x - z).
inline LatticeFunction apply(const RadonKernel& kernel, const LatticeFunction& f, double cap = default_budget().support) {
  require(kernel.dim() == f.dim(), "apply: kernel and function dimensions differ");
  check_budget("support", static_cast<double>(kernel.size()) * static_cast<double>(f.size()), cap);
  LatticeFunction g(f.dim());
  Site x(f.dim());
  for (const auto& [z, kz] : kernel.entries())
    for (const auto& [w, fw] : f) {
      for (std::size_t i = 0; i < x.size(); ++i) x[i] = checked_add(z[i], w[i]);
      g.add(x, kz * fw);
    }
  return g;
}

struct TorusApplyResult {
  TorusFunction g;
  // The torus is smaller than twice the kernel diameter in some coordinate, so a
  // function supported near the kernel's own box would wrap around.
  bool wraparound_risk = false;
};

// Cyclic convolution on Z/L_1 x ... x Z/L_m via FFT.
inline TorusApplyResult apply_on_torus(const RadonKernel& kernel, const TorusFunction& f) {
  require(kernel.dim() == f.dim(), "apply_on_torus: kernel and torus dimensions differ");
  const auto r = kernel.radius();
  bool risk = false;
  std::vector<int> dims;
  for (std::size_t i = 0; i < f.dim(); ++i) {
    const auto L = f.shape()[i];
    require(L > 2 * r[i], "apply_on_torus: side length must exceed twice the kernel support radius");
    require(L <= std::numeric_limits<int>::max(), "apply_on_torus: side length too large");
    if (L <= 4 * r[i]) risk = true;
    dims.push_back(static_cast<int>(L));
  }
  TorusFunction kt = TorusFunction::periodize(kernel.entries(), f.shape());
  std::vector<Complex> a = kt.values();
  std::vector<Complex> b = f.values();
  fft_inplace(a, dims, FftDirection::Forward);
  fft_inplace(b, dims, FftDirection::Forward);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
  fft_inplace(a, dims, FftDirection::Backward);
  const double inv = 1.0 / static_cast<double>(a.size());
  TorusApplyResult out{TorusFunction(f.shape()), risk};
  for (std::size_t i = 0; i < a.size(); ++i) out.g.values()[i] = a[i] * inv;
  return out;
}

struct JumpProfile {
  std::vector<double> times;
  PathField field;
  JumpSeminorm jump;                 // J_2^p over sites
  std::vector<double> r_variation;   // per site, in field site order
  double max_r_variation = 0.0;
  double f_norm = 0.0;               // ||f||_p
};

// Evaluates T_t f along the family and measures the resulting paths.
inline JumpProfile jump_profile(const std::vector<std::pair<double, RadonKernel>>& family, const LatticeFunction& f,
                                double p, double r = 2.0) {
  require(!family.empty(), "jump_profile: empty family");
  for (std::size_t i = 1; i < family.size(); ++i)
    require(family[i - 1].first < family[i].first, "jump_profile: times must be strictly increasing");
  std::vector<LatticeFunction> outs;
  std::map<Site, std::size_t> sites;
  for (const auto& [t, K] : family) {
    outs.push_back(apply(K, f));
    for (const auto& [x, v] : outs.back()) sites.try_emplace(x, 0);
  }
  std::vector<std::vector<std::int64_t>> site_list;
  for (auto& [x, idx] : sites) {
    idx = site_list.size();
    site_list.push_back(x);
  }
  std::vector<std::vector<Complex>> values(site_list.size(), std::vector<Complex>(family.size()));
  for (std::size_t j = 0; j < outs.size(); ++j)
    for (const auto& [x, v] : outs[j]) values[sites[x]][j] = v;
  std::vector<double> times;
  for (const auto& [t, K] : family) times.push_back(t);
  JumpProfile prof{times, PathField(times, site_list, std::move(values)), {}, {}, 0.0, f.lp_norm(p)};
  prof.jump = jump_seminorm_detail(prof.field, p);
  for (const auto& path : prof.field.paths()) {
    prof.r_variation.push_back(r_variation(path, r));
    prof.max_r_variation = std::max(prof.max_r_variation, prof.r_variation.back());
  }
  return prof;
}

struct ConditionARow {
  std::int64_t n = 0;
  double t_lo = 0.0, t_hi = 0.0;
  double value = 0.0;      // || V^1(K_{2^t} : t in block) ||_{l^1}
  double reference = 0.0;  // n^{tau - 1}
  double ratio = 0.0;
  std::int64_t events = 0; // breakpoints inside the block
};

struct ConditionAReport {
  double tau = 0.0;
  std::vector<ConditionARow> rows;
  double exponent = 0.0;   // log-log slope of value against n (nonzero rows)
  std::size_t fit_points = 0;
  double max_ratio = 0.0;
};

// Exact 1-variation of t -> K_{2^t} over the block [a, b], summed over sites.
// The kernel only changes where new lattice points enter Omega_{2^t}; between
// breakpoints an averaging value m/c is monotone in c, so each site's variation
// telescopes into segment drops plus jumps at its own events.
inline double block_variation_l1(const ConvexBody& body, const MultiIndexSet& gamma, Flavor flavor, double a, double b,
                                 const CZKernelSpec* cz = nullptr, std::int64_t* events_out = nullptr,
                                 double cap = default_budget().lattice_points) {
  require(0.0 <= a && a <= b, "block_variation_l1: need 0 <= a <= b");
  if (flavor == Flavor::Singular) require(cz != nullptr && cz->k == body.k(), "block_variation_l1: CZ kernel needed");
  const auto inner = body.membership(std::exp2(a));
  struct Entering {
    long double key;
    Site image;
    double weight;
  };
  std::vector<Entering> entering;
  std::map<Site, std::int64_t> mult;          // averaging: multiplicity at each image
  std::map<Site, long double> last_count;     // averaging: lattice count at the image's last change
  std::int64_t count = 0;
  for_each_lattice_point(
      body, std::exp2(b),
      [&](std::span<const std::int64_t> y) {
        const bool origin = std::all_of(y.begin(), y.end(), [](auto v) { return v == 0; });
        const double w = (flavor == Flavor::Singular && !origin) ? cz->at(y) : 0.0;
        if (inner(y)) {
          ++count;
          if (flavor == Flavor::Averaging) ++mult[canonical_map_checked(y, gamma)];
        } else {
          entering.push_back({body.sweep_key(y), canonical_map_checked(y, gamma), w});
        }
      },
      cap);
  std::sort(entering.begin(), entering.end(), [](const Entering& l, const Entering& r) { return l.key < r.key; });
  long double var = 0;
  std::int64_t events = 0;
  if (flavor == Flavor::Averaging) {
    for (const auto& [x, m] : mult) last_count[x] = static_cast<long double>(count);
    std::size_t i = 0;
    while (i < entering.size()) {
      std::size_t j = i;
      std::map<Site, std::int64_t> dm;
      while (j < entering.size() && entering[j].key == entering[i].key) ++dm[entering[j++].image];
      const auto c_old = static_cast<long double>(count);
      count += static_cast<std::int64_t>(j - i);
      const auto c_new = static_cast<long double>(count);
      for (const auto& [x, d] : dm) {
        const auto m_old = static_cast<long double>(mult[x]);
        if (m_old > 0) var += m_old * (1.0L / last_count[x] - 1.0L / c_old);
        var += std::abs((m_old + d) / c_new - m_old / c_old);
        mult[x] += d;
        last_count[x] = c_new;
      }
      ++events;
      i = j;
    }
    const auto c_end = static_cast<long double>(count);
    for (const auto& [x, m] : mult) var += static_cast<long double>(m) * (1.0L / last_count[x] - 1.0L / c_end);
  } else {
    std::size_t i = 0;
    while (i < entering.size()) {
      std::size_t j = i;
      std::map<Site, long double> dw;
      while (j < entering.size() && entering[j].key == entering[i].key) {
        dw[entering[j].image] += entering[j].weight;
        ++j;
      }
      for (const auto& [x, d] : dw) var += std::abs(d);
      ++events;
      i = j;
    }
  }
  if (events_out) *events_out = events;
  return static_cast<double>(var);
}

// Rows n = 1..n_max over blocks [n^tau, (n+1)^tau].
inline ConditionAReport condition_A_report(const ConvexBody& body, const MultiIndexSet& gamma, Flavor flavor,
                                           double tau, std::int64_t n_max, const CZKernelSpec* cz = nullptr) {
  require(tau > 0.0 && tau <= 1.0, "condition_A_report: tau must lie in (0, 1]");
  require(n_max >= 1, "condition_A_report: n_max >= 1");
  ConditionAReport rep;
  rep.tau = tau;
  std::vector<double> xs, ys;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    ConditionARow row;
    row.n = n;
    row.t_lo = std::pow(static_cast<double>(n), tau);
    row.t_hi = std::pow(static_cast<double>(n + 1), tau);
    row.value = block_variation_l1(body, gamma, flavor, row.t_lo, row.t_hi, cz, &row.events);
    row.reference = std::pow(static_cast<double>(n), tau - 1.0);
    row.ratio = row.value / row.reference;
    rep.max_ratio = std::max(rep.max_ratio, row.ratio);
    if (row.value > 0.0) {
      xs.push_back(static_cast<double>(n));
      ys.push_back(row.value);
    }
    rep.rows.push_back(row);
  }
  if (xs.size() >= 2) rep.exponent = loglog_slope(xs, ys, &rep.fit_points);
  return rep;
}

}  // namespace radonlab
