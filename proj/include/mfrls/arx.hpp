#pragma once

#include <cstddef>
#include <span>

#include <Eigen/Dense>

namespace mfrls {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Degrees of A_t (n) and B_t (m). Parameters are ordered
/// [-a_1 ... -a_n, b_1 ... b_m] and regressors [y(t-1) ... y(t-n), u(t-1) ... u(t-m)].
struct ModelOrders {
    std::size_t n = 2;
    std::size_t m = 2;

    std::size_t p() const noexcept { return n + m; }
    /// First time index with a complete regressor is max_lag() + 1.
    std::size_t max_lag() const noexcept { return n > m ? n : m; }

    /// Throws DomainError when p == 0.
    void validate() const;

    friend bool operator==(const ModelOrders&, const ModelOrders&) = default;
};

/// Regressor at 1-based time t. y[k-1] and u[k-1] hold y(k), u(k); only
/// indices below t are read. Throws IndexOutOfRange when t <= max_lag() or
/// the histories are too short.
Vector build_regressor(std::span<const double> y, std::span<const double> u,
                       const ModelOrders& orders, std::size_t t);

}  // namespace mfrls
