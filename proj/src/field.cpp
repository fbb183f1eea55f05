#include "magspec/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace magspec {

FieldModel::FieldModel(Poly2 A, Box domain) : A_(std::move(A)), domain_(domain) {
  if (domain_.width() <= 0.0 || domain_.height() <= 0.0)
    throw ConfigError("FieldModel: domain box must have positive extent");
  A_y_ = A_.dy();
  b_ = A_.dx();
  b_x_ = b_.dx();
  b_y_ = b_.dy();
  b_xx_ = b_x_.dx();
  b_xy_ = b_x_.dy();
  b_yy_ = b_y_.dy();
}

Eigen::Vector2d FieldModel::field_grad(double x, double y) const {
  return {b_x_(x, y), b_y_(x, y)};
}

Eigen::Matrix2d FieldModel::field_hess(double x, double y) const {
  Eigen::Matrix2d H;
  const double mixed = b_xy_(x, y);
  H << b_xx_(x, y), mixed, mixed, b_yy_(x, y);
  return H;
}

FieldModel FieldModel::translated(const Point& p) const {
  Box box{domain_.x_min - p.x, domain_.x_max - p.x, domain_.y_min - p.y, domain_.y_max - p.y};
  FieldModel m(A_.shifted(p.x, p.y), box);
  m.catalog_name_ = catalog_name_;
  return m;
}

namespace {

// Catalog entries are stated through the intended field b; A is the exact
// x-antiderivative, so dA/dx reproduces b with no rounding surprises.
FieldModel make_catalog(const std::string& name) {
  const Box box{-2.2, 2.2, -2.2, 2.2};
  if (name == "isotropic_quadratic") {
    // b = 1 + x^2 + y^2
    Poly2 A = Poly2::monomial(1, 0, 1.0) + Poly2::monomial(3, 0, 1.0 / 3.0) +
              Poly2::monomial(1, 2, 1.0);
    return FieldModel(A, box);
  }
  if (name == "anisotropic_quadratic") {
    // b = 1 + x^2 + 4 y^2
    Poly2 A = Poly2::monomial(1, 0, 1.0) + Poly2::monomial(3, 0, 1.0 / 3.0) +
              Poly2::monomial(1, 2, 4.0);
    return FieldModel(A, box);
  }
  if (name == "cross_term") {
    // b = 1 + x^2 + x y + y^2
    Poly2 A = Poly2::monomial(1, 0, 1.0) + Poly2::monomial(3, 0, 1.0 / 3.0) +
              Poly2::monomial(2, 1, 0.5) + Poly2::monomial(1, 2, 1.0);
    return FieldModel(A, box);
  }
  if (name == "quartic_confinement") {
    // b = 1 + x^2 + y^2 + 0.3 x^2 y^2
    Poly2 A = Poly2::monomial(1, 0, 1.0) + Poly2::monomial(3, 0, 1.0 / 3.0) +
              Poly2::monomial(1, 2, 1.0) + Poly2::monomial(3, 2, 0.1);
    return FieldModel(A, box);
  }
  throw ConfigError("unknown catalog field '" + name + "'");
}

}  // namespace

FieldModel FieldModel::from_catalog(const std::string& name) {
  FieldModel m = make_catalog(name);
  m.catalog_name_ = name;
  return m;
}

const std::vector<std::string>& FieldModel::catalog_names() {
  static const std::vector<std::string> names = {
      "isotropic_quadratic", "anisotropic_quadratic", "cross_term", "quartic_confinement"};
  return names;
}

double eval_field(const FieldModel& model, const Point& p) {
  if (!model.domain().contains(p)) {
    std::ostringstream os;
    os << "eval_field: point (" << p.x << ", " << p.y << ") outside domain box";
    throw DomainError(os.str());
  }
  return model.field(p.x, p.y);
}

namespace {

MinimumResult grid_scan_minimum(const FieldModel& model, int n = 201) {
  const Box& box = model.domain();
  double best = std::numeric_limits<double>::infinity();
  Point arg{};
  for (int i = 0; i <= n; ++i) {
    const double x = box.x_min + box.width() * i / n;
    for (int j = 0; j <= n; ++j) {
      const double y = box.y_min + box.height() * j / n;
      const double v = model.field(x, y);
      if (v < best) {
        best = v;
        arg = {x, y};
      }
    }
  }
  return {arg, best};
}

bool on_boundary(const Box& box, const Point& p, double tol) {
  return p.x - box.x_min < tol || box.x_max - p.x < tol || p.y - box.y_min < tol ||
         box.y_max - p.y < tol;
}

}  // namespace

MinimumResult locate_minimum(const FieldModel& model, const Point& seed, double tol) {
  if (!model.domain().contains(seed))
    throw DomainError("locate_minimum: seed outside domain box");

  auto newton_from = [&](Point start) -> std::pair<bool, Point> {
    Point p = start;
    for (int it = 0; it < 50; ++it) {
      const Eigen::Vector2d g = model.field_grad(p.x, p.y);
      if (g.norm() <= tol) return {true, p};
      const Eigen::Matrix2d H = model.field_hess(p.x, p.y);
      // Indefinite Hessian along the way: let the grid scan take over.
      if (H(0, 0) <= 0.0 || H.determinant() <= 0.0) return {false, p};
      const Eigen::Vector2d step = H.ldlt().solve(g);
      p.x -= step(0);
      p.y -= step(1);
      if (!model.domain().contains(p)) return {false, p};
    }
    return {false, p};
  };

  auto [ok, p] = newton_from(seed);
  if (!ok) {
    const MinimumResult scan = grid_scan_minimum(model);
    std::tie(ok, p) = newton_from(scan.x0);
    if (!ok)
      throw NumericalError(
          "locate_minimum: no interior minimum found (Newton and grid-scan fallback both "
          "failed to reach the gradient tolerance)");
  }

  const double cell = std::min(model.domain().width(), model.domain().height()) / 200.0;
  if (on_boundary(model.domain(), p, cell))
    throw NumericalError("locate_minimum: converged point lies on the domain boundary");

  const Eigen::Matrix2d H = model.field_hess(p.x, p.y);
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(H);
  if (es.eigenvalues().minCoeff() <= 1e-10)
    throw DegeneracyError("locate_minimum: Hessian not positive definite at the minimum");

  return {p, model.field(p.x, p.y)};
}

namespace {

double boundary_infimum(const FieldModel& model, double scale, int n = 800) {
  const Box& box = model.domain();
  const double cx = 0.5 * (box.x_min + box.x_max);
  const double cy = 0.5 * (box.y_min + box.y_max);
  const double hw = 0.5 * box.width() * scale;
  const double hh = 0.5 * box.height() * scale;
  double inf = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    const double t = -1.0 + 2.0 * i / n;
    inf = std::min(inf, model.field(cx + t * hw, cy - hh));
    inf = std::min(inf, model.field(cx + t * hw, cy + hh));
    inf = std::min(inf, model.field(cx - hw, cy + t * hh));
    inf = std::min(inf, model.field(cx + hw, cy + t * hh));
  }
  return inf;
}

}  // namespace

WellData well_constants(const FieldModel& model, const Point& x0, double gamma0_override) {
  WellData w;
  w.x0 = x0;
  w.b0 = model.field(x0.x, x0.y);
  const Eigen::Matrix2d M = 0.5 * model.field_hess(x0.x, x0.y);
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(M);
  if (es.eigenvalues().minCoeff() <= 1e-10)
    throw DegeneracyError("well_constants: half-Hessian not positive definite");
  w.half_hess = M;
  w.d = M.determinant();
  // Closed form for Tr(M^{1/2}) of a 2x2 positive matrix.
  w.a = std::sqrt(M.trace() + 2.0 * std::sqrt(w.d));

  const double inf1 = boundary_infimum(model, 1.0);
  // A field growing strictly through two enlarged perimeters is treated as
  // confining; its gap toward infinity is reported as +inf while gamma0 stays
  // tied to the trusted box.
  const double inf15 = boundary_infimum(model, 1.5);
  const double inf20 = boundary_infimum(model, 2.0);
  w.eta0 = (inf20 > inf15 && inf15 > inf1) ? std::numeric_limits<double>::infinity()
                                           : inf1 - w.b0;
  if (w.eta0 <= 0.0)
    throw NumericalError("well_constants: field does not rise toward the domain boundary");
  w.gamma0 = gamma0_override >= 0.0 ? gamma0_override
                                    : std::min(0.5 * (inf1 - w.b0), w.b0);
  if (w.gamma0 <= 0.0 || w.b0 + w.gamma0 >= inf1)
    throw ConfigError("well_constants: gamma0 must lie in (0, boundary infimum - b0)");
  return w;
}

FieldModel gauge_normalize(const FieldModel& model) {
  const double a00 = model.potential(0.0, 0.0);
  const double ay00 = model.potential_dy(0.0, 0.0);
  Poly2 A = model.potential_poly() - Poly2::monomial(0, 0, a00) - Poly2::monomial(0, 1, ay00);
  FieldModel out(A, model.domain());
  out.catalog_name_ = model.catalog_name_;
  return out;
}

}  // namespace magspec
