#pragma once

#include <Eigen/Dense>

#include <utility>
#include <vector>

#include "magspec/field.hpp"

namespace magspec {

/// Two-term eigenvalue prediction with its proven one-sided windows
/// (h^{19/8} below, h^{5/2} above) scaled by a caller-supplied constant.
struct ExpansionPrediction {
  int j = 0;
  double h = 0.0;
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

struct FitResult {
  Eigen::VectorXd coefficients;
  double residual_norm = 0.0;
  double condition = 0.0;
};

/// lambda_j ~ h b0 + h^2 (2 sqrt(d)/b0 * j + a^2/(2 b0)).
ExpansionPrediction predict_lambda(const WellData& well, int j, double h, double Cj = 1.0);

/// Consecutive-gap coefficient at second order: 2 sqrt(d)/b0 * h^2.
double predict_gap(const WellData& well, double h);

/// Least-squares fit of lambda(h)/h against {1, h, ..., h^order}. Solved by
/// column-pivoted QR; the h grid should span at most a decade.
FitResult fit_expansion(const std::vector<std::pair<double, double>>& samples, int order);

/// Same normalization, arbitrary real exponent basis {h^e : e in exponents}.
/// Used for the half-power parity probe.
FitResult fit_expansion_basis(const std::vector<std::pair<double, double>>& samples,
                              const std::vector<double>& exponents);

}  // namespace magspec
