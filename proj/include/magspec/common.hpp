#pragma once

#include <stdexcept>
#include <string>

namespace magspec {

/// Raised when an evaluation point or configuration leaves the trusted region.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an iteration fails to converge or a discretization sanity
/// check (Hermiticity, residual certificate, window size) is violated.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when the field minimum is degenerate (Hessian not positive definite).
class DegeneracyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Raised on malformed or inconsistent run configurations.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Axis-aligned rectangle [x_min,x_max] x [y_min,y_max].
struct Box {
  double x_min = 0.0, x_max = 0.0;
  double y_min = 0.0, y_max = 0.0;

  bool contains(const Point& p) const {
    return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
  }
  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
};

}  // namespace magspec
