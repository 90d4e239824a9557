#pragma once

// Sparse multivariate polynomials with exact rational coefficients; enough
// algebra for evaluation and composition with integer linear maps.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "radonlab/errors.hpp"
#include "radonlab/multiindex.hpp"
#include "radonlab/number_theory.hpp"

namespace radonlab {

class IntegerPolynomial {
 public:
  using Terms = std::map<std::vector<int>, Rational>;

  explicit IntegerPolynomial(std::size_t k = 1) : k_(k) { require(k >= 1, "polynomial: k >= 1"); }

  static IntegerPolynomial monomial(std::size_t k, std::vector<int> exps, Rational coeff = 1) {
    IntegerPolynomial p(k);
    p.add_term(std::move(exps), coeff);
    return p;
  }

  // x_i as a polynomial.
  static IntegerPolynomial variable(std::size_t k, std::size_t i) {
    std::vector<int> e(k, 0);
    e[i] = 1;
    return monomial(k, std::move(e));
  }

  static IntegerPolynomial constant(std::size_t k, Rational c) { return monomial(k, std::vector<int>(k, 0), c); }

  // sum_gamma xi_gamma x^gamma
  static IntegerPolynomial from_frequency(const MultiIndexSet& gamma, const std::vector<Rational>& xi) {
    require(xi.size() == gamma.size(), "polynomial: coefficient count mismatch");
    IntegerPolynomial p(gamma.k());
    for (std::size_t i = 0; i < xi.size(); ++i) p.add_term(gamma[i].exponents(), xi[i]);
    return p;
  }

  std::size_t k() const noexcept { return k_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  void add_term(std::vector<int> exps, const Rational& c) {
    require(exps.size() == k_, "polynomial: exponent length mismatch");
    for (int e : exps) require(e >= 0, "polynomial: negative exponent");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(std::move(exps), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Rational coefficient(const std::vector<int>& exps) const {
    auto it = terms_.find(exps);
    return it == terms_.end() ? Rational(0) : it->second;
  }
  Rational coefficient(const MultiIndex& m) const { return coefficient(m.exponents()); }

  int degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (int v : e) s += v;
      d = std::max(d, s);
    }
    return d;
  }

  bool is_homogeneous(int l) const {
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (int v : e) s += v;
      if (s != l) return false;
    }
    return true;
  }

  // Support (non-constant monomials) as a multi-index set plus matching
  // coefficients; the constant term is returned separately.
  std::pair<MultiIndexSet, std::vector<Rational>> frequency_form(Rational* constant_term = nullptr) const {
    std::vector<MultiIndex> members;
    std::vector<std::pair<MultiIndex, Rational>> tmp;
    if (constant_term) *constant_term = 0;
    for (const auto& [e, c] : terms_) {
      MultiIndex m(e);
      if (m.is_zero()) {
        if (constant_term) *constant_term = c;
        continue;
      }
      members.push_back(m);
      tmp.emplace_back(m, c);
    }
    if (members.empty()) {
      // Degenerate phase: use x_1 with coefficient 0 so callers get a valid set.
      std::vector<int> e(k_, 0);
      e[0] = 1;
      return {MultiIndexSet(k_, {MultiIndex(e)}), {Rational(0)}};
    }
    MultiIndexSet set(k_, members);
    std::vector<Rational> coeffs(set.size());
    for (const auto& [m, c] : tmp) coeffs[set.index_of(m)] = c;
    return {set, coeffs};
  }

  Rational evaluate(std::span<const std::int64_t> x) const {
    require(x.size() == k_, "polynomial: point dimension mismatch");
    Rational s = 0;
    for (const auto& [e, c] : terms_) {
      BigInt m = 1;
      for (std::size_t i = 0; i < k_; ++i) m *= big_pow(BigInt(x[i]), static_cast<unsigned>(e[i]));
      s += c * Rational(m);
    }
    return s;
  }

  double evaluate(std::span<const double> x) const {
    require(x.size() == k_, "polynomial: point dimension mismatch");
    long double s = 0;
    for (const auto& [e, c] : terms_) {
      long double m = to_double(c);
      for (std::size_t i = 0; i < k_; ++i)
        for (int j = 0; j < e[i]; ++j) m *= x[i];
      s += m;
    }
    return static_cast<double>(s);
  }

  IntegerPolynomial operator+(const IntegerPolynomial& o) const {
    require(o.k_ == k_, "polynomial: variable count mismatch");
    IntegerPolynomial out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, c);
    return out;
  }

  IntegerPolynomial operator*(const Rational& s) const {
    IntegerPolynomial out(k_);
    for (const auto& [e, c] : terms_) out.add_term(e, c * s);
    return out;
  }

  IntegerPolynomial operator-() const { return *this * Rational(-1); }

  IntegerPolynomial operator*(const IntegerPolynomial& o) const {
    require(o.k_ == k_, "polynomial: variable count mismatch");
    IntegerPolynomial out(k_);
    for (const auto& [e1, c1] : terms_)
      for (const auto& [e2, c2] : o.terms_) {
        std::vector<int> e(k_);
        for (std::size_t i = 0; i < k_; ++i) e[i] = e1[i] + e2[i];
        out.add_term(std::move(e), c1 * c2);
      }
    return out;
  }

  IntegerPolynomial pow(unsigned n) const {
    IntegerPolynomial out = constant(k_, 1);
    for (unsigned i = 0; i < n; ++i) out = out * *this;
    return out;
  }

  // P(L x) where L is a k x k integer matrix (row i gives the new x_i).
  IntegerPolynomial compose_linear(const std::vector<std::vector<std::int64_t>>& L) const {
    require(L.size() == k_, "compose_linear: matrix must be k x k");
    std::vector<IntegerPolynomial> rows;
    for (const auto& row : L) {
      require(row.size() == k_, "compose_linear: matrix must be k x k");
      IntegerPolynomial r(k_);
      for (std::size_t j = 0; j < k_; ++j)
        if (row[j] != 0) r = r + variable(k_, j) * Rational(row[j]);
      rows.push_back(std::move(r));
    }
    IntegerPolynomial out(k_);
    for (const auto& [e, c] : terms_) {
      IntegerPolynomial term = constant(k_, c);
      for (std::size_t i = 0; i < k_; ++i)
        if (e[i] > 0) term = term * rows[i].pow(static_cast<unsigned>(e[i]));
      out = out + term;
    }
    return out;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [e, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += "(" + c.str() + ")";
      for (std::size_t i = 0; i < k_; ++i)
        if (e[i] > 0) s += "*x" + std::to_string(i + 1) + (e[i] > 1 ? "^" + std::to_string(e[i]) : "");
    }
    return s;
  }

  friend bool operator==(const IntegerPolynomial&, const IntegerPolynomial&) = default;

 private:
  std::size_t k_;
  Terms terms_;
};

}  // namespace radonlab
