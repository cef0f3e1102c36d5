#include "mfrls/arx.hpp"

#include <string>

#include "mfrls/errors.hpp"

namespace mfrls {

void ModelOrders::validate() const {
    if (p() == 0) throw DomainError("model orders: n + m must be at least 1");
}

Vector build_regressor(std::span<const double> y, std::span<const double> u,
                       const ModelOrders& orders, std::size_t t) {
    if (t <= orders.max_lag()) {
        throw IndexOutOfRange("regressor at t=" + std::to_string(t) + " needs t >= " +
                              std::to_string(orders.max_lag() + 1));
    }
    if (y.size() < t - 1 || u.size() < t - 1) {
        throw IndexOutOfRange("regressor at t=" + std::to_string(t) +
                              ": history shorter than t-1 samples");
    }
    Vector phi(static_cast<Eigen::Index>(orders.p()));
    Eigen::Index k = 0;
    for (std::size_t i = 1; i <= orders.n; ++i) phi[k++] = y[t - i - 1];
    for (std::size_t i = 1; i <= orders.m; ++i) phi[k++] = u[t - i - 1];
    return phi;
}

}  // namespace mfrls
