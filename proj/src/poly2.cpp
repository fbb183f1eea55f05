#include "magspec/poly2.hpp"

#include <cmath>
#include <sstream>

namespace magspec {

namespace {

// Trim trailing all-zero rows/columns so degrees stay tight after arithmetic.
Eigen::MatrixXd trimmed(const Eigen::MatrixXd& c) {
  int rows = static_cast<int>(c.rows());
  int cols = static_cast<int>(c.cols());
  while (rows > 1 && c.row(rows - 1).isZero(0.0)) --rows;
  while (cols > 1 && c.block(0, cols - 1, rows, 1).isZero(0.0)) --cols;
  return c.topLeftCorner(rows, cols);
}

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r = r * static_cast<double>(n - i) / static_cast<double>(i + 1);
  return r;
}

}  // namespace

Poly2::Poly2(Eigen::MatrixXd coeffs) : c_(trimmed(coeffs)) {}

Poly2 Poly2::monomial(int i, int j, double c) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(i + 1, j + 1);
  m(i, j) = c;
  return Poly2(m);
}

double Poly2::operator()(double x, double y) const {
  // Horner in x of Horner-in-y row evaluations.
  double acc = 0.0;
  for (int i = deg_x(); i >= 0; --i) {
    double row = 0.0;
    for (int j = deg_y(); j >= 0; --j) row = row * y + c_(i, j);
    acc = acc * x + row;
  }
  return acc;
}

Poly2 Poly2::dx() const {
  if (deg_x() == 0) return Poly2();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(deg_x(), deg_y() + 1);
  for (int i = 1; i <= deg_x(); ++i)
    for (int j = 0; j <= deg_y(); ++j) d(i - 1, j) = static_cast<double>(i) * c_(i, j);
  return Poly2(d);
}

Poly2 Poly2::dy() const {
  if (deg_y() == 0) return Poly2();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(deg_x() + 1, deg_y());
  for (int i = 0; i <= deg_x(); ++i)
    for (int j = 1; j <= deg_y(); ++j) d(i, j - 1) = static_cast<double>(j) * c_(i, j);
  return Poly2(d);
}

Poly2 Poly2::shifted(double x0, double y0) const {
  const int nx = deg_x(), ny = deg_y();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(nx + 1, ny + 1);
  // (x+x0)^i (y+y0)^j expanded; exact up to rounding in the powers.
  for (int i = 0; i <= nx; ++i) {
    for (int j = 0; j <= ny; ++j) {
      const double c = c_(i, j);
      if (c == 0.0) continue;
      for (int p = 0; p <= i; ++p) {
        const double xb = binom(i, p) * std::pow(x0, i - p);
        for (int q = 0; q <= j; ++q) {
          out(p, q) += c * xb * binom(j, q) * std::pow(y0, j - q);
        }
      }
    }
  }
  return Poly2(out);
}

Poly2 Poly2::operator+(const Poly2& other) const {
  const int nx = std::max(deg_x(), other.deg_x());
  const int ny = std::max(deg_y(), other.deg_y());
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(nx + 1, ny + 1);
  s.topLeftCorner(c_.rows(), c_.cols()) = c_;
  s.topLeftCorner(other.c_.rows(), other.c_.cols()) += other.c_;
  return Poly2(s);
}

Poly2 Poly2::operator-(const Poly2& other) const { return *this + other * -1.0; }

Poly2 Poly2::operator*(double s) const { return Poly2(Eigen::MatrixXd(c_ * s)); }

double Poly2::coeff(int i, int j) const {
  if (i < 0 || j < 0 || i > deg_x() || j > deg_y()) return 0.0;
  return c_(i, j);
}

bool Poly2::is_zero(double tol) const { return c_.isZero(tol); }

std::string Poly2::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i <= deg_x(); ++i) {
    for (int j = 0; j <= deg_y(); ++j) {
      if (c_(i, j) == 0.0) continue;
      if (!first) os << " + ";
      os << c_(i, j);
      if (i > 0) os << "*x^" << i;
      if (j > 0) os << "*y^" << j;
      first = false;
    }
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace magspec
