#pragma once

// Finitely supported functions on Z^d and dense functions on a discrete torus.
//
// Text format, one site per line, sites in lexicographic order:
//   x1 x2 ... xd re im
// Blank lines and lines starting with '#' are ignored on input.

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "radonlab/errors.hpp"
#include "radonlab/number_theory.hpp"
#include "radonlab/phase.hpp"

namespace radonlab {

using Site = std::vector<std::int64_t>;

class LatticeFunction {
 public:
  using Map = std::map<Site, Complex>;

  explicit LatticeFunction(std::size_t dim = 1) : dim_(dim) { require(dim >= 1, "LatticeFunction: dim >= 1"); }

  static LatticeFunction delta(std::size_t dim, Site at = {}) {
    LatticeFunction f(dim);
    if (at.empty()) at.assign(dim, 0);
    f.set(at, 1.0);
    return f;
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return support_.size(); }
  bool empty() const noexcept { return support_.empty(); }
  const Map& support() const noexcept { return support_; }
  auto begin() const { return support_.begin(); }
  auto end() const { return support_.end(); }

  Complex at(const Site& x) const {
    auto it = support_.find(x);
    return it == support_.end() ? Complex(0.0) : it->second;
  }

  void set(const Site& x, Complex v) {
    require(x.size() == dim_, "LatticeFunction: site dimension mismatch");
    if (v == Complex(0.0))
      support_.erase(x);
    else
      support_[x] = v;
  }

  void add(const Site& x, Complex v) {
    require(x.size() == dim_, "LatticeFunction: site dimension mismatch");
    auto [it, inserted] = support_.try_emplace(x, v);
    if (!inserted) {
      it->second += v;
      if (it->second == Complex(0.0)) support_.erase(it);
    } else if (v == Complex(0.0)) {
      support_.erase(it);
    }
  }

  Complex sum() const {
    Complex s = 0.0;
    for (const auto& [x, v] : support_) s += v;
    return s;
  }

  double lp_norm(double p) const {
    require(p >= 1.0, "lp_norm: p >= 1");
    if (std::isinf(p)) {
      double m = 0.0;
      for (const auto& [x, v] : support_) m = std::max(m, std::abs(v));
      return m;
    }
    long double s = 0;
    for (const auto& [x, v] : support_) s += std::pow(static_cast<long double>(std::abs(v)), p);
    return static_cast<double>(std::pow(s, 1.0L / p));
  }

  LatticeFunction scaled(Complex c) const {
    LatticeFunction out(dim_);
    for (const auto& [x, v] : support_) out.set(x, c * v);
    return out;
  }

  // Coordinate-wise max |x_i| over the support (0 for the empty function).
  std::vector<std::int64_t> radius() const {
    std::vector<std::int64_t> r(dim_, 0);
    for (const auto& [x, v] : support_)
      for (std::size_t i = 0; i < dim_; ++i) r[i] = std::max<std::int64_t>(r[i], x[i] < 0 ? -x[i] : x[i]);
    return r;
  }

  friend bool operator==(const LatticeFunction&, const LatticeFunction&) = default;

 private:
  std::size_t dim_;
  Map support_;
};

inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);  // no "-0"
  return buf;
}

inline void write_text(std::ostream& os, const LatticeFunction& f) {
  for (const auto& [x, v] : f) {
    for (auto c : x) os << c << ' ';
    os << format_real(v.real()) << ' ' << format_real(v.imag()) << '\n';
  }
}

inline std::string to_text(const LatticeFunction& f) {
  std::ostringstream os;
  write_text(os, f);
  return os.str();
}

// Dimension is inferred from the first data line (fields - 2) unless given.
inline LatticeFunction read_text(std::istream& is, std::size_t dim = 0) {
  std::string line;
  std::size_t lineno = 0;
  LatticeFunction out(dim == 0 ? 1 : dim);
  bool first = true;
  while (std::getline(is, line)) {
    ++lineno;
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    std::istringstream ls(line);
    std::vector<std::string> fields;
    for (std::string tok; ls >> tok;) fields.push_back(tok);
    if (fields.size() < 3) throw PreconditionError("lattice function line " + std::to_string(lineno) + ": too few fields");
    const std::size_t d = fields.size() - 2;
    if (first) {
      if (dim == 0) out = LatticeFunction(d);
      first = false;
    }
    if (d != out.dim()) throw PreconditionError("lattice function line " + std::to_string(lineno) + ": dimension mismatch");
    Site x(d);
    try {
      for (std::size_t i = 0; i < d; ++i) {
        std::size_t used = 0;
        x[i] = std::stoll(fields[i], &used);
        if (used != fields[i].size()) throw std::invalid_argument("coordinate");
      }
      const double re = std::stod(fields[d]);
      const double im = std::stod(fields[d + 1]);
      out.add(x, Complex(re, im));
    } catch (const std::logic_error&) {
      throw PreconditionError("lattice function line " + std::to_string(lineno) + ": malformed number");
    }
  }
  return out;
}

inline LatticeFunction from_text(const std::string& s, std::size_t dim = 0) {
  std::istringstream is(s);
  return read_text(is, dim);
}

// {"dim": d, "entries": [[x1, ..., xd, re, im], ...]}
inline nlohmann::json to_json(const LatticeFunction& f) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [x, v] : f) {
    nlohmann::json row = nlohmann::json::array();
    for (auto c : x) row.push_back(c);
    row.push_back(v.real());
    row.push_back(v.imag());
    entries.push_back(row);
  }
  return {{"dim", f.dim()}, {"entries", entries}};
}

inline LatticeFunction lattice_function_from_json(const nlohmann::json& j) {
  LatticeFunction f(j.at("dim").get<std::size_t>());
  for (const auto& row : j.at("entries")) {
    require(row.size() == f.dim() + 2, "lattice function json: entry length mismatch");
    Site x(f.dim());
    for (std::size_t i = 0; i < f.dim(); ++i) x[i] = row[i].get<std::int64_t>();
    f.add(x, Complex(row[f.dim()].get<double>(), row[f.dim() + 1].get<double>()));
  }
  return f;
}

// Dense function on Z/L_1 x ... x Z/L_d, row-major.
class TorusFunction {
 public:
  explicit TorusFunction(std::vector<std::int64_t> shape) : shape_(std::move(shape)) {
    require(!shape_.empty(), "TorusFunction: empty shape");
    std::size_t n = 1;
    for (auto L : shape_) {
      require(L >= 1, "TorusFunction: side lengths must be positive");
      n *= static_cast<std::size_t>(L);
    }
    values_.assign(n, Complex(0.0));
  }

  static TorusFunction constant(std::vector<std::int64_t> shape, Complex c) {
    TorusFunction f(std::move(shape));
    std::fill(f.values_.begin(), f.values_.end(), c);
    return f;
  }

  // Periodization of a finitely supported function.
  static TorusFunction periodize(const LatticeFunction& f, std::vector<std::int64_t> shape) {
    require(shape.size() == f.dim(), "TorusFunction: shape/dimension mismatch");
    TorusFunction out(std::move(shape));
    for (const auto& [x, v] : f) out.values_[out.index(x)] += v;
    return out;
  }

  const std::vector<std::int64_t>& shape() const noexcept { return shape_; }
  std::size_t dim() const noexcept { return shape_.size(); }
  std::size_t size() const noexcept { return values_.size(); }
  std::vector<Complex>& values() noexcept { return values_; }
  const std::vector<Complex>& values() const noexcept { return values_; }

  std::size_t index(std::span<const std::int64_t> x) const {
    require(x.size() == shape_.size(), "TorusFunction: site dimension mismatch");
    std::size_t idx = 0;
    for (std::size_t i = 0; i < shape_.size(); ++i) {
      std::int64_t r = x[i] % shape_[i];
      if (r < 0) r += shape_[i];
      idx = idx * static_cast<std::size_t>(shape_[i]) + static_cast<std::size_t>(r);
    }
    return idx;
  }

  Complex at(std::span<const std::int64_t> x) const { return values_[index(x)]; }
  void set(std::span<const std::int64_t> x, Complex v) { values_[index(x)] = v; }

  // Representatives in [0, L_i) for flat index idx.
  Site site(std::size_t idx) const {
    Site x(shape_.size());
    for (std::size_t i = shape_.size(); i-- > 0;) {
      x[i] = static_cast<std::int64_t>(idx % static_cast<std::size_t>(shape_[i]));
      idx /= static_cast<std::size_t>(shape_[i]);
    }
    return x;
  }

 private:
  std::vector<std::int64_t> shape_;
  std::vector<Complex> values_;
};

}  // namespace radonlab
