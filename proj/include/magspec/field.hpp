#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "magspec/common.hpp"
#include "magspec/poly2.hpp"

namespace magspec {

/// Magnetic model on a trusted rectangle: polynomial potential A(x,y) and the
/// derived field b = dA/dx together with all first/second derivatives of b,
/// every one of them obtained by exact polynomial differentiation.
class FieldModel {
 public:
  FieldModel(Poly2 A, Box domain);

  /// Built-in fields: isotropic_quadratic, anisotropic_quadratic, cross_term,
  /// quartic_confinement.
  static FieldModel from_catalog(const std::string& name);
  static const std::vector<std::string>& catalog_names();

  double potential(double x, double y) const { return A_(x, y); }
  double potential_dy(double x, double y) const { return A_y_(x, y); }
  double field(double x, double y) const { return b_(x, y); }
  double field_dx(double x, double y) const { return b_x_(x, y); }
  double field_dy(double x, double y) const { return b_y_(x, y); }
  Eigen::Vector2d field_grad(double x, double y) const;
  Eigen::Matrix2d field_hess(double x, double y) const;

  const Box& domain() const { return domain_; }
  const Poly2& potential_poly() const { return A_; }
  const Poly2& field_poly() const { return b_; }

  /// Model with coordinates recentered so that p becomes the origin.
  FieldModel translated(const Point& p) const;

  bool is_catalog() const { return !catalog_name_.empty(); }
  const std::string& catalog_name() const { return catalog_name_; }

 private:
  Poly2 A_, A_y_, b_, b_x_, b_y_, b_xx_, b_xy_, b_yy_;
  Box domain_;
  std::string catalog_name_;

  friend FieldModel gauge_normalize(const FieldModel&);
};

/// Characterization of the unique field minimum.
struct WellData {
  Point x0;                   // minimum location
  double b0 = 0.0;            // minimal field intensity
  Eigen::Matrix2d half_hess;  // M = (1/2) Hess b(x0)
  double a = 0.0;             // Tr(M^{1/2})
  double d = 0.0;             // det(M)
  double eta0 = 0.0;          // field gap toward infinity (inf for confining b)
  double gamma0 = 0.0;        // trusted energy window above b0
};

/// b at p, domain-checked.
double eval_field(const FieldModel& model, const Point& p);

struct MinimumResult {
  Point x0;
  double b0 = 0.0;
};

/// Newton iteration on grad b from `seed`, with a coarse grid scan fallback
/// when Newton wanders out of the box or meets an indefinite Hessian.
MinimumResult locate_minimum(const FieldModel& model, const Point& seed, double tol = 1e-12);

/// Well constants at the converged minimum x0. gamma0_override < 0 selects
/// the default window 0.5*(boundary field infimum - b0), capped at b0.
WellData well_constants(const FieldModel& model, const Point& x0, double gamma0_override = -1.0);

/// A -> A - A(0,0) - dA/dy(0,0) * y. Field unchanged; assumes the minimum has
/// already been translated to the origin.
FieldModel gauge_normalize(const FieldModel& model);

}  // namespace magspec
