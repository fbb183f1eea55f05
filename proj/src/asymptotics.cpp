#include "magspec/asymptotics.hpp"

#include <cmath>
#include <set>

namespace magspec {

ExpansionPrediction predict_lambda(const WellData& well, int j, double h, double Cj) {
  if (h <= 0.0) throw ConfigError("predict_lambda: h must be positive");
  if (j < 0) throw ConfigError("predict_lambda: j must be nonnegative");
  if (Cj <= 0.0) throw ConfigError("predict_lambda: Cj must be positive");
  ExpansionPrediction p;
  p.j = j;
  p.h = h;
  p.value = h * well.b0 +
            h * h * (2.0 * std::sqrt(well.d) / well.b0 * j + well.a * well.a / (2.0 * well.b0));
  p.lower = p.value - Cj * std::pow(h, 19.0 / 8.0);
  p.upper = p.value + Cj * std::pow(h, 2.5);
  return p;
}

double predict_gap(const WellData& well, double h) {
  if (h <= 0.0) throw ConfigError("predict_gap: h must be positive");
  return 2.0 * std::sqrt(well.d) / well.b0 * h * h;
}

FitResult fit_expansion_basis(const std::vector<std::pair<double, double>>& samples,
                              const std::vector<double>& exponents) {
  const int n = static_cast<int>(samples.size());
  const int k = static_cast<int>(exponents.size());
  if (n < k + 1)
    throw ConfigError("fit_expansion: need at least order+2 samples");
  {
    std::set<double> hs;
    for (const auto& [h, lam] : samples) {
      if (h <= 0.0) throw ConfigError("fit_expansion: h must be positive");
      hs.insert(h);
    }
    if (static_cast<int>(hs.size()) != n)
      throw ConfigError("fit_expansion: h values must be distinct");
  }

  Eigen::MatrixXd X(n, k);
  Eigen::VectorXd y(n);
  for (int r = 0; r < n; ++r) {
    const auto& [h, lam] = samples[r];
    for (int c = 0; c < k; ++c) X(r, c) = std::pow(h, exponents[c]);
    y(r) = lam / h;
  }

  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  if (qr.rank() < k)
    throw NumericalError("fit_expansion: rank-deficient design matrix");

  FitResult out;
  out.coefficients = qr.solve(y);
  out.residual_norm = (X * out.coefficients - y).norm();
  const Eigen::VectorXd diag = qr.matrixR().topLeftCorner(k, k).diagonal().cwiseAbs();
  out.condition = diag.maxCoeff() / diag.minCoeff();
  return out;
}

FitResult fit_expansion(const std::vector<std::pair<double, double>>& samples, int order) {
  if (order < 0) throw ConfigError("fit_expansion: order must be nonnegative");
  std::vector<double> exps(order + 1);
  for (int i = 0; i <= order; ++i) exps[i] = static_cast<double>(i);
  return fit_expansion_basis(samples, exps);
}

}  // namespace magspec
