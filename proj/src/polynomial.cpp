#include "mfrls/polynomial.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "mfrls/errors.hpp"

namespace mfrls {

Polynomial polynomial_from_roots(std::span<const std::complex<double>> roots) {
    std::vector<std::complex<double>> c{1.0};
    for (const auto& r : roots) {
        std::vector<std::complex<double>> next(c.size() + 1, 0.0);
        for (std::size_t k = 0; k < c.size(); ++k) {
            next[k] += c[k];
            next[k + 1] -= r * c[k];
        }
        c = std::move(next);
    }
    Polynomial out(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) out[k] = c[k].real();
    return out;
}

double spectral_radius(const Polynomial& monic) {
    if (monic.empty() || monic.front() != 1.0) {
        throw DomainError("spectral_radius: polynomial must be monic");
    }
    const auto d = static_cast<Eigen::Index>(monic.size() - 1);
    if (d == 0) return 0.0;
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
    for (Eigen::Index k = 0; k < d; ++k) companion(0, k) = -monic[static_cast<std::size_t>(k + 1)];
    for (Eigen::Index k = 1; k < d; ++k) companion(k, k - 1) = 1.0;
    const Eigen::EigenSolver<Eigen::MatrixXd> es(companion, false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

Polynomial generate_stable_polynomial(std::size_t degree, double max_root_modulus, Rng& rng,
                                      double min_root_modulus) {
    if (degree == 0) throw DomainError("generate_stable_polynomial: degree must be >= 1");
    if (!(max_root_modulus > 0.0 && max_root_modulus < 1.0)) {
        throw DomainError("generate_stable_polynomial: root modulus bound must lie in (0, 1)");
    }
    if (!(min_root_modulus >= 0.0 && min_root_modulus <= max_root_modulus)) {
        throw DomainError("generate_stable_polynomial: invalid lower root modulus");
    }
    std::uniform_real_distribution<double> modulus(min_root_modulus, max_root_modulus);
    std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
    std::vector<std::complex<double>> roots;
    roots.reserve(degree);
    for (std::size_t k = 0; k + 1 < degree; k += 2) {
        const double rho = modulus(rng);
        const double w = angle(rng);
        roots.push_back(std::polar(rho, w));
        roots.push_back(std::polar(rho, -w));
    }
    if (degree % 2 == 1) {
        const double rho = modulus(rng);
        const bool negative = std::bernoulli_distribution(0.5)(rng);
        roots.emplace_back(negative ? -rho : rho, 0.0);
    }
    return polynomial_from_roots(roots);
}

}  // namespace mfrls
