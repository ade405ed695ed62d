#pragma once

#include <stdexcept>
#include <string>

namespace echo2d {

/// Invalid user input: bad configuration values, inconsistent shapes.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// Two stationary states closer than the degeneracy tolerance; the
/// nonadiabatic coupling is singular there.
class DegenerateStates : public std::domain_error {
 public:
  DegenerateStates(const std::string& what, int first, int second)
      : std::domain_error(what), first_(first), second_(second) {}
  int first() const noexcept { return first_; }
  int second() const noexcept { return second_; }

 private:
  int first_;
  int second_;
};

/// A numerical self-check failed (quadrature convergence, size caps).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace echo2d
