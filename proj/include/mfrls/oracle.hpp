#pragma once

// Batch solvers that serve as ground truth for the recursive estimators.
// They form the normal equations explicitly and solve them with a full
// pivoting LU, a path independent of the estimators' recursions.

#include "mfrls/arx.hpp"

namespace mfrls::oracle {

/// Rows phi(s)^T newest first, matched with y newest first. The row at
/// offset k carries weight lambda^k.
struct BatchProblem {
    Matrix phi;
    Vector y;
};

/// Stacks regressors for t = first ... last (1-based) newest first.
BatchProblem stack_problem(std::span<const double> y, std::span<const double> u,
                           const ModelOrders& orders, std::size_t first, std::size_t last);

/// argmin sum_k lambda^k (y_k - phi_k^T theta)^2 via Phi^T Q Phi theta = Phi^T Q y.
/// Throws RankDeficiency when the weighted normal matrix is singular.
Vector batch_weighted_ls(const Matrix& phi, const Vector& y, double lambda);

/// [phi phi^T + W]^{-1} (phi y + W theta_prev). Throws RankDeficiency when
/// the system is singular.
Vector batch_regularized_ls(const Vector& phi, double y, const Vector& theta_prev, const Matrix& w);

/// (y - phi^T theta)^2 + (theta - theta_prev)^T W (theta - theta_prev).
double regularized_objective(const Vector& phi, double y, const Vector& theta_prev,
                             const Matrix& w, const Vector& theta);

/// || Phi^T Q (y - Phi theta) ||, zero at the weighted least-squares optimum.
double optimality_residual(const Matrix& phi, const Vector& y, double lambda, const Vector& theta);

/// || Phi^T Q y ||, the natural scale for optimality_residual.
double weighted_rhs_norm(const Matrix& phi, const Vector& y, double lambda);

}  // namespace mfrls::oracle
