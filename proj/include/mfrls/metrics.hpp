#pragma once

#include <span>

#include "mfrls/arx.hpp"

namespace mfrls {

/// One-step-ahead coefficient of determination in percent,
/// (1 - sum (y - yhat)^2 / sum (y - mean y)^2) * 100. Unbounded below.
/// Throws DegenerateMetric for constant y, DimensionMismatch on length mismatch.
double cod(std::span<const double> y, std::span<const double> y_pred);

/// Average track fit in percent, (1 - mean_t ||thetahat_t - theta_t|| / ||theta_t||) * 100.
/// Throws DegenerateMetric when some ||theta_t|| = 0.
double atf(std::span<const Vector> theta_hat, std::span<const Vector> theta_true);

}  // namespace mfrls
