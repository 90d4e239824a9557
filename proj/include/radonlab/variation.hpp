#pragma once

// Jump counts N_lambda, r-variations V^r, the jump quasi-seminorm J_2^p and
// short (block) variations of finitely sampled complex paths.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "radonlab/errors.hpp"

namespace radonlab {

class SampledPath {
 public:
  SampledPath(std::vector<double> times, std::vector<std::complex<double>> values)
      : times_(std::move(times)), values_(std::move(values)) {
    require(times_.size() == values_.size(), "SampledPath: times and values differ in length");
    for (std::size_t i = 0; i < times_.size(); ++i) {
      require(std::isfinite(times_[i]), "SampledPath: non-finite time");
      require(std::isfinite(values_[i].real()) && std::isfinite(values_[i].imag()),
              "SampledPath: non-finite value");
      if (i > 0) require(times_[i - 1] < times_[i], "SampledPath: times must be strictly increasing");
    }
  }

  // Convenience: times 0, 1, ..., n-1.
  static SampledPath from_values(std::vector<std::complex<double>> values) {
    std::vector<double> t(values.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<double>(i);
    return SampledPath(std::move(t), std::move(values));
  }
  static SampledPath from_real(const std::vector<double>& values) {
    return from_values(std::vector<std::complex<double>>(values.begin(), values.end()));
  }

  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<double>& times() const noexcept { return times_; }
  const std::vector<std::complex<double>>& values() const noexcept { return values_; }

 private:
  std::vector<double> times_;
  std::vector<std::complex<double>> values_;
};

// One path per lattice site on a shared time grid.
class PathField {
 public:
  PathField(std::vector<double> times, std::vector<std::vector<std::int64_t>> sites,
            std::vector<std::vector<std::complex<double>>> values)
      : times_(std::move(times)), sites_(std::move(sites)) {
    require(sites_.size() == values.size(), "PathField: one value row per site");
    paths_.reserve(values.size());
    for (auto& row : values) {
      require(row.size() == times_.size(), "PathField: all paths must share the time grid");
      paths_.emplace_back(times_, std::move(row));
    }
    if (paths_.empty()) (void)SampledPath(times_, std::vector<std::complex<double>>(times_.size()));
  }

  const std::vector<double>& times() const noexcept { return times_; }
  const std::vector<std::vector<std::int64_t>>& sites() const noexcept { return sites_; }
  const std::vector<SampledPath>& paths() const noexcept { return paths_; }
  std::size_t size() const noexcept { return paths_.size(); }

 private:
  std::vector<double> times_;
  std::vector<std::vector<std::int64_t>> sites_;
  std::vector<SampledPath> paths_;
};

// N_lambda: the largest J with t_0 < ... < t_J and |f(t_i) - f(t_{i-1})| >= lambda.
// Longest chain in the pair DAG; O(n^2).
inline std::int64_t jump_count(const SampledPath& path, double lambda) {
  require(lambda > 0.0, "jump_count: lambda must be positive");
  const auto& v = path.values();
  const std::size_t n = v.size();
  std::vector<std::int64_t> best(n, 0);
  std::int64_t out = 0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i)
      if (std::abs(v[j] - v[i]) >= lambda) best[j] = std::max(best[j], best[i] + 1);
    out = std::max(out, best[j]);
  }
  return out;
}

// thresholds[J-1] = sup{lambda : N_lambda >= J}, i.e. the best possible minimum
// gap over chains with J steps. Nonincreasing in J; N_lambda = #{J : thr >= lambda}.
inline std::vector<double> jump_thresholds(const SampledPath& path) {
  const auto& v = path.values();
  const std::size_t n = v.size();
  std::vector<double> out;
  if (n < 2) return out;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> prev(n, inf), cur(n);
  for (std::size_t steps = 1; steps < n; ++steps) {
    double best_overall = -1.0;
    for (std::size_t j = 0; j < n; ++j) {
      double best = -1.0;
      for (std::size_t i = 0; i < j; ++i) {
        if (prev[i] < 0) continue;
        best = std::max(best, std::min(prev[i], std::abs(v[j] - v[i])));
      }
      cur[j] = best;
      best_overall = std::max(best_overall, best);
    }
    if (best_overall <= 0.0) break;
    out.push_back(best_overall);
    std::swap(prev, cur);
  }
  return out;
}

// V^r(f) = sup over increasing subsequences of (sum |increments|^r)^{1/r}.
// r = infinity gives the largest pairwise gap.
inline double r_variation(const SampledPath& path, double r) {
  require(r > 0.0, "r_variation: r must be positive");
  const auto& v = path.values();
  const std::size_t n = v.size();
  if (std::isinf(r)) {
    double best = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < j; ++i) best = std::max(best, std::abs(v[j] - v[i]));
    return best;
  }
  std::vector<double> best(n, 0.0);
  double out = 0.0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) best[j] = std::max(best[j], best[i] + std::pow(std::abs(v[j] - v[i]), r));
    out = std::max(out, best[j]);
  }
  return std::pow(out, 1.0 / r);
}

struct JumpSeminorm {
  double value = 0.0;   // sup_lambda lambda * (sum_x N_lambda(x)^{p/2})^{1/p}
  double argmax = 0.0;  // lambda attaining it (0 if all paths constant)
};

// J_2^p over the counting measure on sites. N_lambda(x) is a left-continuous
// step function of lambda that drops just after each threshold, so the
// supremum is attained at one of the per-site thresholds.
inline JumpSeminorm jump_seminorm_detail(const PathField& field, double p) {
  require(p > 1.0 && std::isfinite(p), "jump_seminorm: p must lie in (1, inf)");
  struct Event {
    double lambda;
    std::size_t site;
  };
  std::vector<Event> events;
  for (std::size_t s = 0; s < field.size(); ++s)
    for (double thr : jump_thresholds(field.paths()[s])) events.push_back({thr, s});
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    if (a.lambda != b.lambda) return a.lambda > b.lambda;
    return a.site < b.site;
  });
  JumpSeminorm out;
  std::vector<std::int64_t> count(field.size(), 0);
  long double total = 0;
  std::size_t i = 0;
  while (i < events.size()) {
    const double lambda = events[i].lambda;
    for (; i < events.size() && events[i].lambda == lambda; ++i) {
      const auto s = events[i].site;
      total -= std::pow(static_cast<long double>(count[s]), p / 2.0L);
      ++count[s];
      total += std::pow(static_cast<long double>(count[s]), p / 2.0L);
    }
    const double value = lambda * static_cast<double>(std::pow(std::max(total, 0.0L), 1.0L / p));
    if (value > out.value) {
      out.value = value;
      out.argmax = lambda;
    }
  }
  return out;
}

inline double jump_seminorm(const PathField& field, double p) { return jump_seminorm_detail(field, p).value; }

// lambda * (sum_x N_lambda(x)^{p/2})^{1/p} at a single lambda.
inline double jump_functional(const PathField& field, double p, double lambda) {
  long double total = 0;
  for (const auto& path : field.paths())
    total += std::pow(static_cast<long double>(jump_count(path, lambda)), p / 2.0L);
  return lambda * static_cast<double>(std::pow(total, 1.0L / p));
}

// Per site: (sum_n V^r(f; t in [n^tau, (n+1)^tau])^2)^{1/2}; blocks are closed.
inline std::vector<double> block_variation(const PathField& field, double tau, double r) {
  require(tau > 0.0 && tau <= 1.0, "block_variation: tau must lie in (0, 1]");
  require(r > 0.0, "block_variation: r must be positive");
  const auto& times = field.times();
  for (double t : times) require(t >= 0.0, "block_variation: time grid must lie in [0, inf)");
  std::vector<double> out(field.size(), 0.0);
  if (times.empty()) return out;
  // Block n covers [n^tau, (n+1)^tau]; n = 0 covers [0, 1].
  const double tmax = times.back();
  const auto nmax = static_cast<std::int64_t>(std::ceil(std::pow(tmax, 1.0 / tau))) + 1;
  std::vector<std::pair<std::size_t, std::size_t>> blocks;  // index ranges [lo, hi)
  for (std::int64_t n = 0; n <= nmax; ++n) {
    const double lo = std::pow(static_cast<double>(n), tau);
    const double hi = std::pow(static_cast<double>(n + 1), tau);
    const auto a = static_cast<std::size_t>(std::lower_bound(times.begin(), times.end(), lo) - times.begin());
    const auto b = static_cast<std::size_t>(std::upper_bound(times.begin(), times.end(), hi) - times.begin());
    if (b >= a + 2) blocks.emplace_back(a, b);
  }
  for (std::size_t s = 0; s < field.size(); ++s) {
    const auto& path = field.paths()[s];
    long double acc = 0;
    for (const auto& [a, b] : blocks) {
      std::vector<double> t(times.begin() + static_cast<std::ptrdiff_t>(a), times.begin() + static_cast<std::ptrdiff_t>(b));
      std::vector<std::complex<double>> v(path.values().begin() + static_cast<std::ptrdiff_t>(a),
                                          path.values().begin() + static_cast<std::ptrdiff_t>(b));
      const double vr = r_variation(SampledPath(std::move(t), std::move(v)), r);
      acc += static_cast<long double>(vr) * vr;
    }
    out[s] = static_cast<double>(std::sqrt(acc));
  }
  return out;
}

}  // namespace radonlab
