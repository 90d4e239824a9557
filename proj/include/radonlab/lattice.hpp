#pragma once

// Convex bodies Omega with B(0, c) inside Omega inside B(0, 1), their dilates
// Omega_t = {x : x / t in Omega}, and lattice-point enumeration.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "radonlab/budget.hpp"
#include "radonlab/errors.hpp"
#include "radonlab/number_theory.hpp"

namespace radonlab {

enum class BodyKind { Ball, Cube, Ellipsoid };

inline std::string to_string(BodyKind kind) {
  switch (kind) {
    case BodyKind::Ball: return "ball";
    case BodyKind::Cube: return "cube";
    case BodyKind::Ellipsoid: return "ellipsoid";
  }
  return "?";
}

namespace detail {

inline std::int64_t isqrt_i128(__int128 n) {
  if (n <= 0) return 0;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
  while (static_cast<__int128>(r) * r > n) --r;
  while (static_cast<__int128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

// ceil(r) - 1 = largest integer strictly below r, clamped to int64.
inline std::int64_t largest_below(const Rational& r) {
  BigInt c = -floor_rational(-r);  // ceil
  c -= 1;
  const BigInt cap = BigInt(std::numeric_limits<std::int64_t>::max() / 4);
  if (c > cap) return std::numeric_limits<std::int64_t>::max() / 4;
  return c.convert_to<std::int64_t>();
}

}  // namespace detail

// Open convex body; the open-set convention makes membership a strict inequality.
class ConvexBody {
 public:
  // Euclidean ball of the given radius (an open interval in dimension 1).
  static ConvexBody ball(std::size_t k, double radius = 1.0) {
    require(k >= 1, "ball: k >= 1");
    require(radius > 0.0 && radius <= 1.0, "ball: radius must lie in (0, 1]");
    return ConvexBody(BodyKind::Ball, std::vector<double>(k, radius));
  }

  // Open cube (-h, h)^k; needs h sqrt(k) <= 1 to sit inside the unit ball.
  static ConvexBody cube(std::size_t k, double half_side) {
    require(k >= 1, "cube: k >= 1");
    require(half_side > 0.0 && half_side * std::sqrt(static_cast<double>(k)) <= 1.0 + 1e-15,
            "cube: need 0 < h and h sqrt(k) <= 1");
    return ConvexBody(BodyKind::Cube, std::vector<double>(k, half_side));
  }

  // Axis-aligned ellipsoid with semi-axes in (0, 1].
  static ConvexBody ellipsoid(std::vector<double> semi_axes) {
    require(!semi_axes.empty(), "ellipsoid: k >= 1");
    for (double a : semi_axes) require(a > 0.0 && a <= 1.0, "ellipsoid: semi-axes must lie in (0, 1]");
    return ConvexBody(BodyKind::Ellipsoid, std::move(semi_axes));
  }

  BodyKind kind() const noexcept { return kind_; }
  std::size_t k() const noexcept { return params_.size(); }
  const std::vector<double>& params() const noexcept { return params_; }

  double inner_radius() const {
    return *std::min_element(params_.begin(), params_.end());
  }
  double outer_radius() const {
    if (kind_ == BodyKind::Cube) return params_[0] * std::sqrt(static_cast<double>(k()));
    return *std::max_element(params_.begin(), params_.end());
  }

  std::string describe() const {
    std::string s = to_string(kind_) + "(k=" + std::to_string(k());
    for (double p : params_) s += "," + std::to_string(p);
    return s + ")";
  }

  // Minkowski functional: x in Omega_t iff gauge(x) < t.
  double gauge(std::span<const double> x) const {
    require(x.size() == k(), "gauge: dimension mismatch");
    double g = 0.0;
    switch (kind_) {
      case BodyKind::Ball: {
        for (double v : x) g += v * v;
        return std::sqrt(g) / params_[0];
      }
      case BodyKind::Cube: {
        for (double v : x) g = std::max(g, std::abs(v));
        return g / params_[0];
      }
      case BodyKind::Ellipsoid: {
        for (std::size_t i = 0; i < x.size(); ++i) g += (x[i] / params_[i]) * (x[i] / params_[i]);
        return std::sqrt(g);
      }
    }
    return g;
  }

  double gauge(std::span<const std::int64_t> y) const {
    std::vector<double> x(y.begin(), y.end());
    return gauge(std::span<const double>(x));
  }

  // Monotone in the gauge; exact (integer valued) for balls and cubes so equal
  // keys identify points that enter Omega_t at the same t.
  long double sweep_key(std::span<const std::int64_t> y) const {
    long double s = 0;
    switch (kind_) {
      case BodyKind::Ball:
        for (auto v : y) s += static_cast<long double>(v) * static_cast<long double>(v);
        return s;
      case BodyKind::Cube:
        for (auto v : y) s = std::max(s, static_cast<long double>(std::llabs(v)));
        return s;
      case BodyKind::Ellipsoid:
        for (std::size_t i = 0; i < y.size(); ++i) {
          const long double r = static_cast<long double>(y[i]) / params_[i];
          s += r * r;
        }
        return s;
    }
    return s;
  }

  double volume() const {
    const double kk = static_cast<double>(k());
    const double unit_ball = std::pow(std::numbers::pi, kk / 2.0) / std::tgamma(kk / 2.0 + 1.0);
    switch (kind_) {
      case BodyKind::Ball: return unit_ball * std::pow(params_[0], kk);
      case BodyKind::Cube: return std::pow(2.0 * params_[0], kk);
      case BodyKind::Ellipsoid: {
        double v = unit_ball;
        for (double a : params_) v *= a;
        return v;
      }
    }
    return 0.0;
  }

  double diameter(double t) const {
    switch (kind_) {
      case BodyKind::Ball: return 2.0 * t * params_[0];
      case BodyKind::Cube: return 2.0 * t * params_[0] * std::sqrt(static_cast<double>(k()));
      case BodyKind::Ellipsoid: return 2.0 * t * *std::max_element(params_.begin(), params_.end());
    }
    return 0.0;
  }

  // Coordinate-wise half-width of Omega_t.
  double extent(std::size_t i, double t) const { return t * params_[i]; }

  // Checks B(0, c(1 - eps)) in Omega and Omega inside closed B(0, 1) along
  // `samples` pseudo-random directions.
  bool audit_radii(int samples, std::uint64_t seed = 1) const {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    std::vector<double> u(k());
    for (int s = 0; s < samples; ++s) {
      double n2 = 0.0;
      for (auto& v : u) {
        v = normal(rng);
        n2 += v * v;
      }
      const double n = std::sqrt(n2);
      if (n == 0.0) continue;
      for (auto& v : u) v /= n;
      std::vector<double> inner(u), outer(u);
      for (auto& v : inner) v *= inner_radius() * (1.0 - 1e-9);
      if (!(gauge(std::span<const double>(inner)) < 1.0)) return false;
      if (gauge(std::span<const double>(outer)) < 1.0 - 1e-12) return false;
    }
    return true;
  }

  // Exact membership predicate for Omega_t on the lattice. For t < 1 only the
  // origin qualifies (Omega lies inside the unit ball).
  class Membership {
   public:
    Membership(const ConvexBody& body, double t) : body_(&body), t_(t) {
      require(t >= 0.0 && std::isfinite(t), "membership: t must be finite and >= 0");
      small_ = t < 1.0;
      if (small_) return;
      const Rational tr = exact_rational(t);
      switch (body.kind_) {
        case BodyKind::Ball: {
          const Rational r = tr * exact_rational(body.params_[0]);
          // |y|^2 < r^2  <=>  |y|^2 <= ceil(r^2) - 1
          bound_ = detail::largest_below(r * r);
          break;
        }
        case BodyKind::Cube:
          bound_ = detail::largest_below(tr * exact_rational(body.params_[0]));
          break;
        case BodyKind::Ellipsoid:
          t2_ = static_cast<long double>(t) * t;
          t2_exact_ = tr * tr;
          for (double a : body.params_) {
            const Rational ar = exact_rational(a);
            inv_a2_exact_.push_back(Rational(1) / (ar * ar));
          }
          break;
      }
    }

    double t() const noexcept { return t_; }

    bool operator()(std::span<const std::int64_t> y) const {
      if (small_) return std::all_of(y.begin(), y.end(), [](auto v) { return v == 0; });
      switch (body_->kind_) {
        case BodyKind::Ball: {
          __int128 s = 0;
          for (auto v : y) s += static_cast<__int128>(v) * v;
          return s <= bound_;
        }
        case BodyKind::Cube:
          for (auto v : y)
            if (std::llabs(v) > bound_) return false;
          return true;
        case BodyKind::Ellipsoid: {
          const long double s = body_->sweep_key(y);
          const long double tol = 1e-12L * std::max<long double>(1.0L, t2_);
          if (s < t2_ - tol) return true;
          if (s > t2_ + tol) return false;
          Rational e = 0;
          for (std::size_t i = 0; i < y.size(); ++i) e += Rational(BigInt(y[i]) * y[i]) * inv_a2_exact_[i];
          return e < t2_exact_;
        }
      }
      return false;
    }

    // Allowed range [-r, r] for coordinate j given the earlier coordinates;
    // never too small, final membership is re-checked at the leaves.
    std::int64_t range(std::size_t j, std::span<const std::int64_t> prefix) const {
      if (small_) return 0;
      switch (body_->kind_) {
        case BodyKind::Ball: {
          __int128 s = 0;
          for (auto v : prefix) s += static_cast<__int128>(v) * v;
          const __int128 rem = static_cast<__int128>(bound_) - s;
          return rem < 0 ? -1 : detail::isqrt_i128(rem);
        }
        case BodyKind::Cube: return bound_;
        case BodyKind::Ellipsoid: {
          long double s = 0;
          for (std::size_t i = 0; i < prefix.size(); ++i) {
            const long double r = static_cast<long double>(prefix[i]) / body_->params_[i];
            s += r * r;
          }
          const long double rem = t2_ - s;
          if (rem < -1e-9L * std::max<long double>(1.0L, t2_)) return -1;
          return static_cast<std::int64_t>(std::floor(body_->params_[j] * std::sqrt(std::max(rem, 0.0L)))) + 1;
        }
      }
      return 0;
    }

   private:
    const ConvexBody* body_;
    double t_;
    bool small_ = false;
    std::int64_t bound_ = 0;
    long double t2_ = 0;
    Rational t2_exact_;
    std::vector<Rational> inv_a2_exact_;
  };

  Membership membership(double t) const { return Membership(*this, t); }

  bool contains(std::span<const std::int64_t> y, double t) const {
    require(y.size() == k(), "contains: dimension mismatch");
    return membership(t)(y);
  }

  // Distance from x to the boundary of Omega_t (Euclidean).
  long double boundary_distance(std::span<const double> x, double t) const;

 private:
  ConvexBody(BodyKind kind, std::vector<double> params) : kind_(kind), params_(std::move(params)) {}

  BodyKind kind_;
  std::vector<double> params_;
};

namespace detail {

// Distance from y (first orthant, y_i >= 0) to the ellipsoid with semi-axes e
// sorted descending. Interior and exterior points both handled.
inline long double ellipsoid_distance_sorted(const std::vector<long double>& e, const std::vector<long double>& y) {
  const std::size_t n = e.size();
  std::vector<std::size_t> pos;
  for (std::size_t i = 0; i < n; ++i)
    if (y[i] > 0) pos.push_back(i);
  const long double emin = e[n - 1];
  if (pos.empty()) return emin;

  // Root of F(s) = sum (e_i y_i / (s + e_i^2))^2 - 1 over the positive coordinates.
  auto solve = [&]() {
    long double em = e[pos.back()];
    long double norm = 0;
    for (auto i : pos) norm += (e[i] * y[i]) * (e[i] * y[i]);
    long double lo = -em * em, hi = -em * em + std::sqrt(norm);
    for (int it = 0; it < 200; ++it) {
      const long double mid = (lo + hi) / 2;
      long double f = -1;
      for (auto i : pos) {
        const long double r = e[i] * y[i] / (mid + e[i] * e[i]);
        f += r * r;
      }
      if (f > 0)
        lo = mid;
      else
        hi = mid;
    }
    const long double s = (lo + hi) / 2;
    long double d2 = 0;
    for (auto i : pos) {
      const long double x = e[i] * e[i] * y[i] / (s + e[i] * e[i]);
      d2 += (x - y[i]) * (x - y[i]);
    }
    return std::sqrt(d2);
  };

  // Smallest axis with a zero coordinate, if it is strictly smaller than all
  // positive-coordinate axes: the nearest point may leave the coordinate plane.
  if (y[n - 1] == 0 && e[pos.back()] > emin) {
    long double sum = 0;
    for (auto i : pos) {
      const long double r = e[i] * y[i] / (e[i] * e[i] - emin * emin);
      sum += r * r;
    }
    if (sum < 1) {
      long double d2 = 0;
      for (auto i : pos) {
        const long double x = e[i] * e[i] * y[i] / (e[i] * e[i] - emin * emin);
        d2 += (x - y[i]) * (x - y[i]);
      }
      d2 += emin * emin * (1 - sum);
      return std::sqrt(d2);
    }
  }
  return solve();
}

}  // namespace detail

inline long double ConvexBody::boundary_distance(std::span<const double> x, double t) const {
  require(x.size() == k(), "boundary_distance: dimension mismatch");
  require(t > 0, "boundary_distance: t > 0");
  switch (kind_) {
    case BodyKind::Ball: {
      long double s = 0;
      for (double v : x) s += static_cast<long double>(v) * v;
      return std::abs(std::sqrt(s) - static_cast<long double>(t) * params_[0]);
    }
    case BodyKind::Cube: {
      const long double h = static_cast<long double>(t) * params_[0];
      long double mx = 0, out2 = 0;
      for (double v : x) {
        const long double a = std::abs(static_cast<long double>(v));
        mx = std::max(mx, a);
        if (a > h) out2 += (a - h) * (a - h);
      }
      if (mx < h) return h - mx;
      return std::sqrt(out2);
    }
    case BodyKind::Ellipsoid: {
      std::vector<std::size_t> order(k());
      for (std::size_t i = 0; i < k(); ++i) order[i] = i;
      std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return params_[a] > params_[b]; });
      std::vector<long double> e, y;
      for (auto i : order) {
        e.push_back(static_cast<long double>(t) * params_[i]);
        y.push_back(std::abs(static_cast<long double>(x[i])));
      }
      return detail::ellipsoid_distance_sorted(e, y);
    }
  }
  return 0;
}

// Omega_t cap Z^k, lexicographically ordered, stored flat with stride k.
class LatticePointSet {
 public:
  LatticePointSet(std::size_t k, double t) : k_(k), t_(t) {}

  std::size_t k() const noexcept { return k_; }
  double t() const noexcept { return t_; }
  std::size_t size() const noexcept { return k_ == 0 ? 0 : coords_.size() / k_; }
  bool empty() const noexcept { return coords_.empty(); }
  std::span<const std::int64_t> operator[](std::size_t i) const {
    return {coords_.data() + i * k_, k_};
  }
  void push_back(std::span<const std::int64_t> p) { coords_.insert(coords_.end(), p.begin(), p.end()); }
  std::vector<std::vector<std::int64_t>> to_vectors() const {
    std::vector<std::vector<std::int64_t>> out;
    for (std::size_t i = 0; i < size(); ++i) out.emplace_back((*this)[i].begin(), (*this)[i].end());
    return out;
  }

 private:
  std::size_t k_;
  double t_;
  std::vector<std::int64_t> coords_;
};

// Streams Omega_t cap Z^k in lexicographic order to `visit`.
template <class Visit>
void for_each_lattice_point(const ConvexBody& body, double t, Visit&& visit,
                            double cap = default_budget().lattice_points) {
  require(t >= 0.0 && std::isfinite(t), "lattice_points: t must be finite and >= 0");
  const std::size_t k = body.k();
  std::vector<std::int64_t> y(k, 0);
  if (t < 1.0) {
    visit(std::span<const std::int64_t>(y));
    return;
  }
  check_budget("lattice_points", body.volume() * std::pow(t, static_cast<double>(k)), cap);
  const auto member = body.membership(t);
  double visited = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t j) {
    const std::int64_t r = member.range(j, std::span<const std::int64_t>(y.data(), j));
    if (r < 0) return;
    for (std::int64_t v = -r; v <= r; ++v) {
      y[j] = v;
      if (j + 1 < k) {
        rec(j + 1);
      } else if (member(std::span<const std::int64_t>(y))) {
        if (++visited > cap) throw BudgetError("lattice_points", visited, cap);
        visit(std::span<const std::int64_t>(y));
      }
    }
    y[j] = 0;
  };
  rec(0);
}

inline LatticePointSet lattice_points(const ConvexBody& body, double t,
                                      double cap = default_budget().lattice_points) {
  LatticePointSet out(body.k(), t);
  for_each_lattice_point(body, t, [&](std::span<const std::int64_t> p) { out.push_back(p); }, cap);
  return out;
}

// (Omega_{t2} \ Omega_{t1}) cap Z^k from a single scan of the outer set.
inline LatticePointSet annulus_points(const ConvexBody& body, double t1, double t2,
                                      double cap = default_budget().lattice_points) {
  require(0.0 <= t1 && t1 <= t2, "annulus_points: need 0 <= t1 <= t2");
  LatticePointSet out(body.k(), t2);
  if (t1 == t2) return out;
  const auto inner = body.membership(t1);
  for_each_lattice_point(
      body, t2,
      [&](std::span<const std::int64_t> p) {
        if (!inner(p)) out.push_back(p);
      },
      cap);
  return out;
}

// #{x in Z^k : dist(x, boundary of Omega_t) < s}. Counts points on both sides.
inline std::int64_t near_boundary_count(const ConvexBody& body, double t, double s,
                                        double cap = default_budget().lattice_points) {
  require(t > 0.0 && s > 0.0, "near_boundary_count: need t > 0 and s > 0");
  const std::size_t k = body.k();
  std::vector<std::int64_t> lim(k);
  double box = 1.0;
  for (std::size_t i = 0; i < k; ++i) {
    lim[i] = static_cast<std::int64_t>(std::ceil(body.extent(i, t) + s));
    box *= 2.0 * static_cast<double>(lim[i]) + 1.0;
  }
  check_budget("near_boundary_scan", box, cap);
  std::vector<double> x(k, 0.0);
  std::vector<std::int64_t> y(k, 0);
  std::int64_t count = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t j) {
    for (std::int64_t v = -lim[j]; v <= lim[j]; ++v) {
      y[j] = v;
      x[j] = static_cast<double>(v);
      if (j + 1 < k)
        rec(j + 1);
      else if (body.boundary_distance(std::span<const double>(x), t) < s)
        ++count;
    }
  };
  rec(0);
  return count;
}

}  // namespace radonlab
