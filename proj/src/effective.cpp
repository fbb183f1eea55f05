#include "magspec/effective.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <ostream>
#include <thread>

namespace magspec {

std::pair<double, double> hat_fields(const FieldModel& model, double u, double v,
                                     double tol) {
  const Box& box = model.domain();
  if (v < box.y_min || v > box.y_max)
    throw DomainError("hat_fields: v outside domain box");

  const auto f = [&](double x) { return model.potential(x, v) - u; };

  // Expand a bracket geometrically around x = 0 until the residual changes
  // sign; A(., v) is strictly increasing wherever b > 0, so a sign change
  // inside the box is conclusive.
  double lo = 0.0, hi = 0.0;
  double flo = f(lo), fhi = flo;
  double step = 0.25;
  while (flo * fhi >= 0.0 && (lo > box.x_min || hi < box.x_max)) {
    if (flo > 0.0) {
      lo = std::max(box.x_min, lo - step);
      flo = f(lo);
    } else {
      hi = std::min(box.x_max, hi + step);
      fhi = f(hi);
    }
    step *= 2.0;
  }
  if (flo > 0.0 || fhi < 0.0)
    throw DomainError("hat_fields: no preimage of u inside the domain box");

  // Newton with the exact derivative b, safeguarded by the bracket.
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 100; ++it) {
    const double fx = f(x);
    if (std::abs(fx) <= tol) break;
    if (fx > 0.0)
      hi = x;
    else
      lo = x;
    const double df = model.field(x, v);
    double next = (df > 0.0) ? x - fx / df : std::numeric_limits<double>::quiet_NaN();
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    x = next;
  }
  if (std::abs(f(x)) > tol * 16.0 + 1e-300)
    throw NumericalError("hat_fields: root-find failed to meet the residual tolerance");

  return {model.field(x, v), model.potential_dy(x, v)};
}

namespace {

struct Window {
  double u_lo, u_hi, v_lo, v_hi;
};

// Bounding window of the image of {b <= E} under (x,y) -> (A(x,y), y).
Window sublevel_window(const FieldModel& model, double E, int n_scan = 500) {
  const Box& box = model.domain();
  Window w{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
           std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  bool found = false;
  for (int i = 0; i <= n_scan; ++i) {
    const double x = box.x_min + box.width() * i / n_scan;
    for (int j = 0; j <= n_scan; ++j) {
      const double y = box.y_min + box.height() * j / n_scan;
      if (model.field(x, y) > E) continue;
      found = true;
      const double u = model.potential(x, y);
      w.u_lo = std::min(w.u_lo, u);
      w.u_hi = std::max(w.u_hi, u);
      w.v_lo = std::min(w.v_lo, y);
      w.v_hi = std::max(w.v_hi, y);
    }
  }
  if (!found) throw NumericalError("build_hat_grid: sublevel set not found in domain box");
  return w;
}

void fill_columns(const FieldModel& model, const Eigen::VectorXd& u_grid,
                  const Eigen::VectorXd& v_grid, Eigen::MatrixXd& b_hat,
                  Eigen::MatrixXd& a_hat_y, int j_begin, int j_end) {
  const int n_u = static_cast<int>(u_grid.size());
  for (int j = j_begin; j < j_end; ++j) {
    for (int i = 0; i < n_u; ++i) {
      const auto [bh, ah] = hat_fields(model, u_grid(i), v_grid(j));
      b_hat(i, j) = bh;
      a_hat_y(i, j) = ah;
    }
  }
}

}  // namespace

HatFieldGrid build_hat_grid(const FieldModel& model, const WellData& well, int n_u, int n_v) {
  if (n_u < 16 || n_v < 16) throw ConfigError("build_hat_grid: grid too coarse");
  const double E_max = well.b0 + well.gamma0;

  double pad = 0.10;
  for (int attempt = 0; attempt < 5; ++attempt) {
    Window w = sublevel_window(model, E_max);
    const double pu = pad * std::max(w.u_hi - w.u_lo, 1e-6);
    const double pv = pad * std::max(w.v_hi - w.v_lo, 1e-6);
    w.u_lo -= pu;
    w.u_hi += pu;
    w.v_lo -= pv;
    w.v_hi += pv;

    HatFieldGrid grid;
    grid.u_grid = Eigen::VectorXd::LinSpaced(n_u, w.u_lo, w.u_hi);
    grid.v_grid = Eigen::VectorXd::LinSpaced(n_v, w.v_lo, w.v_hi);
    grid.b_hat.resize(n_u, n_v);
    grid.a_hat_y.resize(n_u, n_v);
    grid.E_max = E_max;
    grid.b0 = well.b0;

    const int n_threads =
        std::max(1u, std::min(std::thread::hardware_concurrency(), 8u));
    std::vector<std::thread> workers;
    const int chunk = (n_v + n_threads - 1) / n_threads;
    for (int t = 0; t < n_threads; ++t) {
      const int j0 = t * chunk;
      const int j1 = std::min(n_v, j0 + chunk);
      if (j0 >= j1) break;
      workers.emplace_back(fill_columns, std::cref(model), std::cref(grid.u_grid),
                           std::cref(grid.v_grid), std::ref(grid.b_hat),
                           std::ref(grid.a_hat_y), j0, j1);
    }
    for (auto& th : workers) th.join();

    const double boundary_min =
        std::min({grid.b_hat.row(0).minCoeff(), grid.b_hat.row(n_u - 1).minCoeff(),
                  grid.b_hat.col(0).minCoeff(), grid.b_hat.col(n_v - 1).minCoeff()});
    if (boundary_min >= E_max) return grid;
    pad *= 1.6;  // window clipped the sublevel set; widen and retry
  }
  throw NumericalError("build_hat_grid: could not enclose the sublevel set (boundary below E_max)");
}

HatFieldGrid make_synthetic_grid(const std::function<double(double, double)>& bhat,
                                 double u_lo, double u_hi, double v_lo, double v_hi,
                                 int n_u, int n_v, double E_max) {
  HatFieldGrid grid;
  grid.u_grid = Eigen::VectorXd::LinSpaced(n_u, u_lo, u_hi);
  grid.v_grid = Eigen::VectorXd::LinSpaced(n_v, v_lo, v_hi);
  grid.b_hat.resize(n_u, n_v);
  grid.a_hat_y.setZero(n_u, n_v);
  for (int i = 0; i < n_u; ++i)
    for (int j = 0; j < n_v; ++j) grid.b_hat(i, j) = bhat(grid.u_grid(i), grid.v_grid(j));
  if (E_max > 0.0) {
    grid.E_max = E_max;
  } else {
    grid.E_max = std::min({grid.b_hat.row(0).minCoeff(), grid.b_hat.row(n_u - 1).minCoeff(),
                           grid.b_hat.col(0).minCoeff(), grid.b_hat.col(n_v - 1).minCoeff()});
  }
  grid.b0 = grid.b_hat.minCoeff();
  return grid;
}

namespace {

// Fraction of a triangle with vertex values (v0,v1,v2) lying below E under
// linear interpolation.
double triangle_fraction(double v0, double v1, double v2, double E) {
  if (v0 > v1) std::swap(v0, v1);
  if (v1 > v2) std::swap(v1, v2);
  if (v0 > v1) std::swap(v0, v1);
  if (E <= v0) return 0.0;
  if (E >= v2) return 1.0;
  if (E <= v1) {
    const double den = (v1 - v0) * (v2 - v0);
    return den > 0.0 ? (E - v0) * (E - v0) / den : 1.0;
  }
  const double den = (v2 - v0) * (v2 - v1);
  return den > 0.0 ? 1.0 - (v2 - E) * (v2 - E) / den : 1.0;
}

}  // namespace

double sublevel_area(const HatFieldGrid& grid, double E) {
  if (E > grid.E_max * (1.0 + 1e-12))
    throw DomainError("sublevel_area: energy above the trusted window E_max");
  const double half_cell = 0.5 * grid.du() * grid.dv();
  double area = 0.0;
  const int n_u = grid.n_u(), n_v = grid.n_v();
  for (int j = 0; j + 1 < n_v; ++j) {
    for (int i = 0; i + 1 < n_u; ++i) {
      const double f00 = grid.b_hat(i, j), f10 = grid.b_hat(i + 1, j);
      const double f01 = grid.b_hat(i, j + 1), f11 = grid.b_hat(i + 1, j + 1);
      const double fmin = std::min(std::min(f00, f10), std::min(f01, f11));
      if (fmin > E) continue;
      area += half_cell * (triangle_fraction(f00, f10, f11, E) +
                           triangle_fraction(f00, f11, f01, E));
    }
  }
  return area;
}

ActionProfile action_profile(const HatFieldGrid& grid, const std::vector<double>& energies) {
  ActionProfile p;
  p.energies.resize(energies.size());
  p.actions.resize(energies.size());
  for (size_t k = 0; k < energies.size(); ++k) {
    p.energies(k) = energies[k];
    p.actions(k) = sublevel_area(grid, energies[k]);
  }
  return p;
}

BSLevels bs_levels(const HatFieldGrid& grid, double h, int profile_resolution) {
  if (h <= 0.0) throw ConfigError("bs_levels: h must be positive");
  const double E0 = grid.b_hat.minCoeff();
  const double E1 = grid.E_max;
  std::vector<double> energies(profile_resolution);
  for (int i = 0; i < profile_resolution; ++i)
    energies[i] = E0 + (E1 - E0) * (i + 1.0) / profile_resolution;
  const ActionProfile prof = action_profile(grid, energies);

  BSLevels out;
  out.h = h;
  const double S_max = prof.actions(profile_resolution - 1);
  for (int n = 0;; ++n) {
    const double target = 2.0 * M_PI * h * (n + 0.5);
    if (target > S_max) break;
    // Bracket on the sampled profile, then bisect the true action.
    int k = 0;
    while (k < profile_resolution && prof.actions(k) < target) ++k;
    double lo = (k == 0) ? E0 : prof.energies(k - 1);
    double hi = prof.energies(std::min(k, profile_resolution - 1));
    double S_lo = (k == 0) ? 0.0 : prof.actions(k - 1);
    double S_hi = prof.actions(std::min(k, profile_resolution - 1));
    if (S_hi <= S_lo)
      throw NumericalError("bs_levels: action profile not strictly increasing at the "
                           "requested level (grid under-resolved)");
    for (int it = 0; it < 60 && hi - lo > 1e-13 * std::max(1.0, std::abs(hi)); ++it) {
      const double mid = 0.5 * (lo + hi);
      if (sublevel_area(grid, mid) < target)
        lo = mid;
      else
        hi = mid;
    }
    out.levels.push_back(0.5 * (lo + hi));
  }
  return out;
}

namespace {

// Catmull-Rom weights for the normalized offset t in [0,1].
inline void cr_weights(double t, double w[4]) {
  const double t2 = t * t, t3 = t2 * t;
  w[0] = -0.5 * t3 + t2 - 0.5 * t;
  w[1] = 1.5 * t3 - 2.5 * t2 + 1.0;
  w[2] = -1.5 * t3 + 2.0 * t2 + 0.5 * t;
  w[3] = 0.5 * t3 - 0.5 * t2;
}

// Bicubic sampler of b_hat with clamped stencils, followed by the smooth
// ceiling map that flattens the symbol above E_max into E_max + collar.
class SymbolSampler {
 public:
  SymbolSampler(const HatFieldGrid& grid, double collar_frac)
      : g_(grid),
        collar_(std::max(collar_frac * (grid.E_max - grid.b0), 1e-12)),
        ceiling_(grid.E_max + collar_) {}

  double ceiling() const { return ceiling_; }

  // sigma(position q=v, momentum eta=u axis)
  double operator()(double v, double eta) const {
    const bool inside = eta >= g_.u_grid(0) && eta <= g_.u_grid(g_.n_u() - 1) &&
                        v >= g_.v_grid(0) && v <= g_.v_grid(g_.n_v() - 1);
    if (!inside) return ceiling_;
    return cap(interp(eta, v));
  }

 private:
  double cap(double t) const {
    if (t <= g_.E_max) return t;
    return g_.E_max + collar_ * std::tanh((t - g_.E_max) / collar_);
  }

  double interp(double u, double v) const {
    const int n_u = g_.n_u(), n_v = g_.n_v();
    const double su = (u - g_.u_grid(0)) / g_.du();
    const double sv = (v - g_.v_grid(0)) / g_.dv();
    int iu = std::clamp(static_cast<int>(std::floor(su)), 0, n_u - 2);
    int iv = std::clamp(static_cast<int>(std::floor(sv)), 0, n_v - 2);
    double wu[4], wv[4];
    cr_weights(su - iu, wu);
    cr_weights(sv - iv, wv);
    double acc = 0.0;
    for (int a = 0; a < 4; ++a) {
      const int ii = std::clamp(iu - 1 + a, 0, n_u - 1);
      for (int b = 0; b < 4; ++b) {
        const int jj = std::clamp(iv - 1 + b, 0, n_v - 1);
        acc += wu[a] * wv[b] * g_.b_hat(ii, jj);
      }
    }
    return acc;
  }

  const HatFieldGrid& g_;
  double collar_;
  double ceiling_;
};

}  // namespace

std::vector<double> quantize_1d(const HatFieldGrid& grid, double h, int n_modes,
                                double collar_frac) {
  if (h <= 0.0) throw ConfigError("quantize_1d: h must be positive");
  if (n_modes < 1) throw ConfigError("quantize_1d: n_modes must be positive");

  // Periodization box: position covers the v-window with margin, the Fourier
  // momenta must cover the u-window with margin.
  const double v_lo = grid.v_grid(0), v_hi = grid.v_grid(grid.n_v() - 1);
  const double u_amp = std::max(std::abs(grid.u_grid(0)), std::abs(grid.u_grid(grid.n_u() - 1)));
  const double L = 1.30 * (v_hi - v_lo);
  const double v_c = 0.5 * (v_lo + v_hi);
  const double eta_need = 1.15 * u_amp;

  int N = static_cast<int>(std::ceil(L * eta_need / (M_PI * h)));
  N = std::max(N, 64);
  N += N % 2;
  if (N > 4096)
    throw NumericalError("quantize_1d: periodization would need > 4096 Fourier modes");
  if (n_modes > N) throw ConfigError("quantize_1d: n_modes exceeds basis size");

  const double eta_max = M_PI * h * N / L;
  if (eta_max < u_amp)
    throw NumericalError("quantize_1d: momentum window touches the symbol support (aliasing)");

  const SymbolSampler sigma(grid, collar_frac);

  // Midpoint-sampled Weyl matrix on the uniform periodic grid:
  //   M(j,j') = (1/N) sum_k sigma((q_j+q_j')/2, eta_k) exp(2 pi i k (j-j')/N),
  // Hermitian by construction for a real symbol.
  Eigen::VectorXd q(N);
  for (int j = 0; j < N; ++j) q(j) = v_c - 0.5 * L + L * j / N;

  // sigma on the half-step midpoint lattice times the momentum grid.
  Eigen::MatrixXd sig(2 * N - 1, N);
  Eigen::VectorXd eta(N);
  for (int k = 0; k < N; ++k) eta(k) = 2.0 * M_PI * h * (k - N / 2) / L;
  for (int m = 0; m < 2 * N - 1; ++m) {
    const double qm = v_c - 0.5 * L + 0.5 * L * m / N;  // (q_j + q_j')/2
    for (int k = 0; k < N; ++k) sig(m, k) = sigma(qm, eta(k));
  }

  using cd = std::complex<double>;
  Eigen::MatrixXcd M(N, N);
  std::vector<cd> twiddle(2 * N);
  for (int d = 0; d < 2 * N; ++d)
    twiddle[d] = std::exp(cd(0.0, 2.0 * M_PI * (d - N) / N));
  for (int j = 0; j < N; ++j) {
    for (int jp = 0; jp <= j; ++jp) {
      const int m = j + jp;
      const int delta = j - jp;
      cd acc(0.0, 0.0);
      for (int k = 0; k < N; ++k) {
        // exp(2 pi i k delta / N) with k shifted by -N/2
        const long long kk = static_cast<long long>(k - N / 2) * delta % N;
        acc += sig(m, k) * twiddle[static_cast<int>(kk) + N];
      }
      M(j, jp) = acc / static_cast<double>(N);
      M(jp, j) = std::conj(M(j, jp));
    }
  }

  const double herm_resid =
      (M - M.adjoint()).cwiseAbs().maxCoeff() / M.cwiseAbs().maxCoeff();
  if (herm_resid > 1e-10)
    throw NumericalError("quantize_1d: non-Hermitian discretization residual");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es;
  es.compute((M + M.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  std::vector<double> out(n_modes);
  for (int i = 0; i < n_modes; ++i) out[i] = es.eigenvalues()(i);
  return out;
}

void write_grid_csv(std::ostream& os, const HatFieldGrid& grid) {
  os << "u,v,b_hat\n";
  char buf[96];
  for (int j = 0; j < grid.n_v(); ++j)
    for (int i = 0; i < grid.n_u(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", grid.u_grid(i), grid.v_grid(j),
                    grid.b_hat(i, j));
      os << buf;
    }
}

}  // namespace magspec
