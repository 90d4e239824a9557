#pragma once

// Multi-index sets Gamma, the canonical polynomial mapping y -> (y^gamma),
// frequency vectors on R^Gamma and the anisotropic dilation 2^{tA}.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "radonlab/errors.hpp"
#include "radonlab/number_theory.hpp"

namespace radonlab {

class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents) : exps_(std::move(exponents)) {
    for (int e : exps_) require(e >= 0, "MultiIndex: negative exponent");
  }
  MultiIndex(std::initializer_list<int> exponents) : MultiIndex(std::vector<int>(exponents)) {}

  std::size_t dim() const noexcept { return exps_.size(); }
  int operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<int>& exponents() const noexcept { return exps_; }
  int degree() const { return std::accumulate(exps_.begin(), exps_.end(), 0); }
  bool is_zero() const { return degree() == 0; }

  std::string str() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < exps_.size(); ++i) os << (i ? "," : "") << exps_[i];
    os << ')';
    return os.str();
  }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<int> exps_;
};

// Finite set of non-zero multi-indices in N_0^k, kept lexicographically sorted.
class MultiIndexSet {
 public:
  MultiIndexSet() = default;
  MultiIndexSet(std::size_t k, std::vector<MultiIndex> members) : k_(k), members_(std::move(members)) {
    require(k_ >= 1, "MultiIndexSet: k must be >= 1");
    for (const auto& m : members_) {
      require(m.dim() == k_, "MultiIndexSet: member dimension mismatch");
      require(!m.is_zero(), "MultiIndexSet: zero multi-index not allowed");
    }
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  }

  std::size_t k() const noexcept { return k_; }
  std::size_t size() const noexcept { return members_.size(); }
  const MultiIndex& operator[](std::size_t i) const { return members_[i]; }
  const std::vector<MultiIndex>& members() const noexcept { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  int max_degree() const {
    int d = 0;
    for (const auto& m : members_) d = std::max(d, m.degree());
    return d;
  }

  // Position of gamma in the lexicographic order, or size() if absent.
  std::size_t index_of(const MultiIndex& gamma) const {
    auto it = std::lower_bound(members_.begin(), members_.end(), gamma);
    if (it == members_.end() || *it != gamma) return members_.size();
    return static_cast<std::size_t>(it - members_.begin());
  }

  std::string str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < members_.size(); ++i) s += (i ? "," : "") + members_[i].str();
    return s + "}";
  }

  friend bool operator==(const MultiIndexSet&, const MultiIndexSet&) = default;

 private:
  std::size_t k_ = 0;
  std::vector<MultiIndex> members_;
};

// All multi-indices gamma in N_0^k with 1 <= |gamma| <= d0.
inline MultiIndexSet full_degree_set(std::size_t k, int d0) {
  require(k >= 1 && d0 >= 1, "full_degree_set: need k >= 1 and d0 >= 1");
  std::vector<MultiIndex> out;
  std::vector<int> cur(k, 0);
  // Odometer over [0, d0]^k, keeping total degree in range.
  while (true) {
    const int deg = std::accumulate(cur.begin(), cur.end(), 0);
    if (deg >= 1 && deg <= d0) out.emplace_back(cur);
    std::size_t i = 0;
    while (i < k) {
      if (++cur[i] <= d0) break;
      cur[i] = 0;
      ++i;
    }
    if (i == k) break;
  }
  return MultiIndexSet(k, std::move(out));
}

// Exact canonical map x -> (prod_i x_i^{gamma_i})_{gamma in Gamma}.
inline std::vector<BigInt> canonical_map(std::span<const std::int64_t> x, const MultiIndexSet& gamma) {
  require(x.size() == gamma.k(), "canonical_map: len(x) != k");
  std::vector<BigInt> out;
  out.reserve(gamma.size());
  for (const auto& g : gamma) {
    BigInt v = 1;
    for (std::size_t i = 0; i < x.size(); ++i) v *= big_pow(BigInt(x[i]), static_cast<unsigned>(g[i]));
    out.push_back(std::move(v));
  }
  return out;
}

// Fixed-width fast path; throws OverflowError instead of wrapping.
inline std::vector<std::int64_t> canonical_map_checked(std::span<const std::int64_t> x,
                                                       const MultiIndexSet& gamma) {
  require(x.size() == gamma.k(), "canonical_map: len(x) != k");
  std::vector<std::int64_t> out;
  out.reserve(gamma.size());
  for (const auto& g : gamma) {
    std::int64_t v = 1;
    for (std::size_t i = 0; i < x.size(); ++i)
      for (int e = 0; e < g[i]; ++e) v = checked_mul(v, x[i]);
    out.push_back(v);
  }
  return out;
}

// xi in R^Gamma (or T^Gamma). Either all-exact or all-double; never mixed.
class FrequencyVector {
 public:
  FrequencyVector(MultiIndexSet gamma, std::vector<double> values, bool periodic = false)
      : gamma_(std::move(gamma)), values_(std::move(values)), periodic_(periodic) {
    require(std::get<1>(values_).size() == gamma_.size(), "FrequencyVector: size mismatch");
    if (periodic_) reduce_mod_one();
  }
  FrequencyVector(MultiIndexSet gamma, std::vector<Rational> values, bool periodic = false)
      : gamma_(std::move(gamma)), values_(std::move(values)), periodic_(periodic) {
    require(std::get<0>(values_).size() == gamma_.size(), "FrequencyVector: size mismatch");
    if (periodic_) reduce_mod_one();
  }

  static FrequencyVector zero(const MultiIndexSet& gamma) {
    return FrequencyVector(gamma, std::vector<Rational>(gamma.size(), Rational(0)));
  }

  const MultiIndexSet& gamma() const noexcept { return gamma_; }
  std::size_t size() const noexcept { return gamma_.size(); }
  bool is_exact() const noexcept { return values_.index() == 0; }
  bool periodic() const noexcept { return periodic_; }

  const std::vector<Rational>& exact() const {
    require(is_exact(), "FrequencyVector: not exact");
    return std::get<0>(values_);
  }
  const std::vector<double>& approx() const {
    require(!is_exact(), "FrequencyVector: exact vector has no double storage");
    return std::get<1>(values_);
  }

  double component(std::size_t i) const {
    return is_exact() ? to_double(std::get<0>(values_)[i]) : std::get<1>(values_)[i];
  }
  std::vector<double> as_doubles() const {
    std::vector<double> out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = component(i);
    return out;
  }
  // Exact view, converting stored doubles to their exact dyadic values.
  std::vector<Rational> as_rationals() const {
    if (is_exact()) return std::get<0>(values_);
    std::vector<Rational> out;
    for (double v : std::get<1>(values_)) out.push_back(exact_rational(v));
    return out;
  }

 private:
  void reduce_mod_one() {
    if (is_exact()) {
      for (auto& v : std::get<0>(values_)) v = frac_rational(v);
    } else {
      for (auto& v : std::get<1>(values_)) {
        v -= std::floor(v);
        if (v >= 1.0) v = 0.0;
      }
    }
  }

  MultiIndexSet gamma_;
  std::variant<std::vector<Rational>, std::vector<double>> values_;
  bool periodic_ = false;
};

// max_gamma |xi_gamma|^{1/|gamma|}
inline double quasi_norm(const FrequencyVector& xi) {
  double best = 0.0;
  for (std::size_t i = 0; i < xi.size(); ++i) {
    const double v = std::abs(xi.component(i));
    if (v == 0.0) continue;
    best = std::max(best, std::pow(v, 1.0 / xi.gamma()[i].degree()));
  }
  return best;
}

inline double quasi_norm(std::span<const double> xi, const MultiIndexSet& gamma) {
  require(xi.size() == gamma.size(), "quasi_norm: size mismatch");
  double best = 0.0;
  for (std::size_t i = 0; i < xi.size(); ++i) {
    const double v = std::abs(xi[i]);
    if (v != 0.0) best = std::max(best, std::pow(v, 1.0 / gamma[i].degree()));
  }
  return best;
}

// 2^{tA} xi: component gamma scaled by 2^{t |gamma|}. Exact vectors need integer t.
inline FrequencyVector anisotropic_dilate(const FrequencyVector& xi, double t) {
  if (xi.is_exact()) {
    require(std::floor(t) == t, "anisotropic_dilate: exact vector requires integer t");
    const auto ti = static_cast<long long>(t);
    std::vector<Rational> out = xi.exact();
    for (std::size_t i = 0; i < out.size(); ++i) {
      const long long shift = ti * xi.gamma()[i].degree();
      if (shift >= 0)
        out[i] *= Rational(BigInt(1) << static_cast<unsigned>(shift));
      else
        out[i] /= Rational(BigInt(1) << static_cast<unsigned>(-shift));
    }
    return FrequencyVector(xi.gamma(), std::move(out));
  }
  std::vector<double> out = xi.approx();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= std::exp2(t * xi.gamma()[i].degree());
  return FrequencyVector(xi.gamma(), std::move(out));
}

// Parses "k=1;deg<=2" or an explicit list "1,0;0,1;1,1" (one multi-index per ';').
inline MultiIndexSet parse_gamma_spec(const std::string& spec) {
  auto trim = [](std::string s) {
    s.erase(0, s.find_first_not_of(" \t"));
    s.erase(s.find_last_not_of(" \t") + 1);
    return s;
  };
  const std::string s = trim(spec);
  if (s.rfind("k=", 0) == 0) {
    const auto semi = s.find(';');
    require(semi != std::string::npos, "gamma spec: expected 'k=<k>;deg<=<d>'");
    const std::string kpart = trim(s.substr(2, semi - 2));
    const std::string rest = trim(s.substr(semi + 1));
    require(rest.rfind("deg<=", 0) == 0, "gamma spec: expected 'deg<=<d>'");
    std::size_t pos1 = 0, pos2 = 0;
    int k = 0, d = 0;
    try {
      k = std::stoi(kpart, &pos1);
      d = std::stoi(rest.substr(5), &pos2);
    } catch (const std::exception&) {
      throw PreconditionError("gamma spec: invalid integer in '" + spec + "'");
    }
    require(pos1 == kpart.size() && pos2 == rest.size() - 5, "gamma spec: trailing characters");
    require(k >= 1 && d >= 1, "gamma spec: k and deg must be >= 1");
    return full_degree_set(static_cast<std::size_t>(k), d);
  }
  std::vector<MultiIndex> members;
  std::size_t k = 0;
  std::stringstream outer(s);
  std::string item;
  while (std::getline(outer, item, ';')) {
    item = trim(item);
    if (item.empty()) continue;
    std::vector<int> exps;
    std::stringstream inner(item);
    std::string tok;
    while (std::getline(inner, tok, ',')) {
      tok = trim(tok);
      std::size_t pos = 0;
      int v = 0;
      try {
        v = std::stoi(tok, &pos);
      } catch (const std::exception&) {
        throw PreconditionError("gamma spec: invalid exponent '" + tok + "'");
      }
      require(pos == tok.size() && v >= 0, "gamma spec: invalid exponent '" + tok + "'");
      exps.push_back(v);
    }
    if (k == 0) k = exps.size();
    require(exps.size() == k, "gamma spec: inconsistent dimensions");
    members.emplace_back(std::move(exps));
  }
  require(!members.empty(), "gamma spec: empty");
  return MultiIndexSet(k, std::move(members));
}

}  // namespace radonlab
