#pragma once

#include <Eigen/Dense>

#include <initializer_list>
#include <string>

namespace magspec {

/// Bivariate polynomial p(x,y) = sum_{i,j} c(i,j) x^i y^j with dense
/// coefficient storage. Differentiation and coordinate shifts are exact,
/// which is what makes polynomial field specs attractive: no numerical
/// differencing anywhere in the derivative chain.
class Poly2 {
 public:
  Poly2() : c_(Eigen::MatrixXd::Zero(1, 1)) {}
  explicit Poly2(Eigen::MatrixXd coeffs);

  /// c * x^i y^j
  static Poly2 monomial(int i, int j, double c);

  double operator()(double x, double y) const;

  Poly2 dx() const;
  Poly2 dy() const;

  /// p(x + x0, y + y0) as a new polynomial (binomial re-expansion).
  Poly2 shifted(double x0, double y0) const;

  Poly2 operator+(const Poly2& other) const;
  Poly2 operator-(const Poly2& other) const;
  Poly2 operator*(double s) const;

  int deg_x() const { return static_cast<int>(c_.rows()) - 1; }
  int deg_y() const { return static_cast<int>(c_.cols()) - 1; }
  double coeff(int i, int j) const;
  const Eigen::MatrixXd& coeffs() const { return c_; }

  bool is_zero(double tol = 0.0) const;
  std::string to_string() const;

 private:
  Eigen::MatrixXd c_;  // c_(i,j) multiplies x^i y^j
};

}  // namespace magspec
