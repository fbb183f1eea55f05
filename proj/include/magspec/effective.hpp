#pragma once

#include <Eigen/Dense>

#include <functional>
#include <iosfwd>
#include <utility>
#include <vector>

#include "magspec/field.hpp"

namespace magspec {

/// Sampled effective symbol over a phase-space window. The first axis (u) is
/// the A-coordinate of the diffeomorphism (x,y) -> (A(x,y), y), the second
/// axis (v) the original y. The window is trusted up to E_max = b0 + gamma0:
/// every boundary sample sits at or above E_max.
struct HatFieldGrid {
  Eigen::VectorXd u_grid;   // uniform, ascending
  Eigen::VectorXd v_grid;   // uniform, ascending
  Eigen::MatrixXd b_hat;    // b_hat(i,j) = bhat(u_i, v_j)
  Eigen::MatrixXd a_hat_y;  // same layout
  double E_max = 0.0;
  double b0 = 0.0;

  double du() const { return u_grid(1) - u_grid(0); }
  double dv() const { return v_grid(1) - v_grid(0); }
  int n_u() const { return static_cast<int>(u_grid.size()); }
  int n_v() const { return static_cast<int>(v_grid.size()); }
};

/// Phase-space action S(E) = area of the sublevel set {bhat <= E}.
struct ActionProfile {
  Eigen::VectorXd energies;
  Eigen::VectorXd actions;
};

/// Bohr-Sommerfeld ladder: S(E_n) = 2 pi h (n + 1/2), E_n <= E_max.
struct BSLevels {
  double h = 0.0;
  std::vector<double> levels;
};

/// Solve A(x*, v) = u and return (bhat, ahat_y) = (b(x*,v), dA/dy(x*,v)).
/// Bracketed Newton with the exact derivative dA/dx = b.
std::pair<double, double> hat_fields(const FieldModel& model, double u, double v,
                                     double tol = 1e-12);

/// Sample the effective symbol on a window enclosing {b <= b0 + gamma0}.
/// Rows of the grid are filled concurrently.
HatFieldGrid build_hat_grid(const FieldModel& model, const WellData& well, int n_u = 400,
                            int n_v = 400);

/// Grid built from an explicit symbol, for tests and synthetic studies.
/// E_max defaults to the smallest boundary sample.
HatFieldGrid make_synthetic_grid(const std::function<double(double, double)>& bhat,
                                 double u_lo, double u_hi, double v_lo, double v_hi,
                                 int n_u, int n_v, double E_max = -1.0);

/// Area of {bhat <= E} by per-cell triangle decomposition with linear
/// interpolation along edges; exact for piecewise-linear data.
double sublevel_area(const HatFieldGrid& grid, double E);

ActionProfile action_profile(const HatFieldGrid& grid, const std::vector<double>& energies);

BSLevels bs_levels(const HatFieldGrid& grid, double h, int profile_resolution = 600);

/// Eigenvalues of the Weyl quantization of the symbol sigma(v, eta) =
/// bhat(eta, v) on a discrete Fourier basis over a periodization box, the
/// symbol smoothly capped at E_max + collar outside the trusted window.
/// Returns the n_modes smallest eigenvalues.
std::vector<double> quantize_1d(const HatFieldGrid& grid, double h, int n_modes,
                                double collar_frac = 0.1);

/// CSV export (columns: u, v, b_hat).
void write_grid_csv(std::ostream& os, const HatFieldGrid& grid);

}  // namespace magspec
