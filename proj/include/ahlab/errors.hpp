#pragma once

#include <stdexcept>
#include <string>

namespace ahlab {

/// An argument lies outside the domain of an operation (bad model parameters,
/// radii inside the core, empty grids, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical kernel failed to deliver a result at the requested tolerance.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The right-hand side of an ODE left its domain at abscissa `where`.
class RhsDomainError : public NumericError {
 public:
  RhsDomainError(const std::string& what, double where) : NumericError(what), where_(where) {}
  [[nodiscard]] double where() const noexcept { return where_; }

 private:
  double where_;
};

}  // namespace ahlab
