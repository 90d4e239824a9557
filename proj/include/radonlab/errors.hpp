#pragma once

#include <stdexcept>
#include <string>

namespace radonlab {

// Base class for everything the library throws on contract violations.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller broke a documented precondition (bad arguments, wrong shapes).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A configured size cap (lattice points, summands, support) would be exceeded.
class BudgetError : public Error {
 public:
  BudgetError(const std::string& cap_name, double requested, double cap)
      : Error("budget exceeded: " + cap_name + " (requested ~" + std::to_string(requested) +
              ", cap " + std::to_string(cap) + ")"),
        cap_name_(cap_name) {}
  const std::string& cap_name() const noexcept { return cap_name_; }

 private:
  std::string cap_name_;
};

// Fixed-width integer arithmetic would have wrapped.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// Quadrature or iterative refinement did not converge to the requested tolerance.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Operation not available for this body / kernel kind.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw PreconditionError(message);
}

}  // namespace radonlab
