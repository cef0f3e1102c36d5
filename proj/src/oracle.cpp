#include "mfrls/oracle.hpp"

#include <cmath>
#include <string>

#include "mfrls/errors.hpp"

namespace mfrls::oracle {
namespace {

Vector weight_profile(Eigen::Index rows, double lambda) {
    if (!(lambda > 0.0 && lambda <= 1.0)) {
        throw DomainError("batch weighted LS: lambda " + std::to_string(lambda) +
                          " outside (0, 1]");
    }
    Vector w(rows);
    double v = 1.0;
    for (Eigen::Index k = 0; k < rows; ++k) {
        w[k] = v;
        v *= lambda;
    }
    return w;
}

void check_shapes(const Matrix& phi, const Vector& y) {
    if (phi.rows() != y.size()) {
        throw DimensionMismatch("batch problem: " + std::to_string(phi.rows()) + " rows but " +
                                std::to_string(y.size()) + " observations");
    }
}

Vector solve_full_pivot(const Matrix& a, const Vector& b, const char* who) {
    const Eigen::FullPivLU<Matrix> lu(a);
    if (!lu.isInvertible()) throw RankDeficiency(std::string(who) + ": normal matrix is singular");
    return lu.solve(b);
}

}  // namespace

BatchProblem stack_problem(std::span<const double> y, std::span<const double> u,
                           const ModelOrders& orders, std::size_t first, std::size_t last) {
    if (first > last) throw DomainError("stack_problem: empty time range");
    const auto rows = static_cast<Eigen::Index>(last - first + 1);
    BatchProblem problem{Matrix(rows, static_cast<Eigen::Index>(orders.p())), Vector(rows)};
    for (Eigen::Index k = 0; k < rows; ++k) {
        const std::size_t t = last - static_cast<std::size_t>(k);
        problem.phi.row(k) = build_regressor(y, u, orders, t).transpose();
        problem.y[k] = y[t - 1];
    }
    return problem;
}

Vector batch_weighted_ls(const Matrix& phi, const Vector& y, double lambda) {
    check_shapes(phi, y);
    const Vector w = weight_profile(phi.rows(), lambda);
    const Matrix weighted = w.asDiagonal() * phi;
    const Matrix normal = phi.transpose() * weighted;
    const Vector rhs = weighted.transpose() * y;
    const Eigen::FullPivLU<Matrix> lu(normal);
    if (lu.rank() < phi.cols()) {
        throw RankDeficiency("batch weighted LS: weighted normal matrix has rank " +
                             std::to_string(lu.rank()) + " < " + std::to_string(phi.cols()));
    }
    return lu.solve(rhs);
}

Vector batch_regularized_ls(const Vector& phi, double y, const Vector& theta_prev,
                            const Matrix& w) {
    if (w.rows() != phi.size() || w.cols() != phi.size() || theta_prev.size() != phi.size()) {
        throw DimensionMismatch("batch regularized LS: inconsistent dimensions");
    }
    const Matrix a = phi * phi.transpose() + w;
    const Vector b = phi * y + w * theta_prev;
    return solve_full_pivot(a, b, "batch regularized LS");
}

double regularized_objective(const Vector& phi, double y, const Vector& theta_prev,
                             const Matrix& w, const Vector& theta) {
    const double e = y - phi.dot(theta);
    const Vector d = theta - theta_prev;
    return e * e + d.dot(w * d);
}

double optimality_residual(const Matrix& phi, const Vector& y, double lambda, const Vector& theta) {
    check_shapes(phi, y);
    const Vector w = weight_profile(phi.rows(), lambda);
    const Vector resid = y - phi * theta;
    return (phi.transpose() * w.asDiagonal() * resid).norm();
}

double weighted_rhs_norm(const Matrix& phi, const Vector& y, double lambda) {
    check_shapes(phi, y);
    const Vector w = weight_profile(phi.rows(), lambda);
    return (phi.transpose() * w.asDiagonal() * y).norm();
}

}  // namespace mfrls::oracle
