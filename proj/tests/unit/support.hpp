#pragma once

#include <random>
#include <vector>

#include "mfrls/arx.hpp"
#include "mfrls/rng.hpp"

namespace mfrls::test {

inline Vector random_vector(Rng& rng, std::size_t p, double scale = 1.0) {
    std::normal_distribution<double> n(0.0, scale);
    Vector v(static_cast<Eigen::Index>(p));
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = n(rng);
    return v;
}

/// A A^T + 0.1 p I, comfortably positive definite.
inline Matrix random_pd(Rng& rng, std::size_t p) {
    Matrix a(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
    std::normal_distribution<double> n(0.0, 1.0);
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i) a(i, j) = n(rng);
    return a * a.transpose() + 0.1 * static_cast<double>(p) * Matrix::Identity(a.rows(), a.cols());
}

inline std::vector<double> random_factors(Rng& rng, std::size_t p, double lo = 0.5, double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> l(p);
    for (double& v : l) v = u(rng);
    return l;
}

inline double rel_err(const Vector& a, const Vector& b) {
    const double scale = std::max(b.norm(), 1e-300);
    return (a - b).norm() / scale;
}

}  // namespace mfrls::test
