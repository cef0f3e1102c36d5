#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "mfrls/polynomial.hpp"
#include "mfrls/rng.hpp"

using namespace mfrls;

TEST_CASE("polynomial from a real root") {
    const std::vector<std::complex<double>> r{{0.5, 0.0}};
    const Polynomial p = polynomial_from_roots(r);
    REQUIRE(p.size() == 2);
    CHECK(p[0] == 1.0);
    CHECK(p[1] == -0.5);
}

TEST_CASE("polynomial from a conjugate pair") {
    const auto z = std::polar(0.6, std::numbers::pi / 4);
    const std::vector<std::complex<double>> r{z, std::conj(z)};
    const Polynomial p = polynomial_from_roots(r);
    REQUIRE(p.size() == 3);
    CHECK(p[0] == 1.0);
    CHECK(std::abs(p[1] + 0.6 * std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(p[2] - 0.36) < 1e-15);
    CHECK(std::abs(spectral_radius(p) - 0.6) < 1e-12);
}

TEST_CASE("spectral radius") {
    CHECK(spectral_radius({1.0}) == 0.0);
    CHECK(std::abs(spectral_radius({1.0, -0.5}) - 0.5) < 1e-15);
    CHECK(std::abs(spectral_radius({1.0, 0.0, -0.81}) - 0.9) < 1e-12);
}

TEST_CASE("random stable polynomials respect the modulus bounds (property)") {
    Rng rng = make_stream(41, "poly");
    for (std::size_t degree = 1; degree <= 6; ++degree) {
        for (int trial = 0; trial < 50; ++trial) {
            const Polynomial p = generate_stable_polynomial(degree, 0.9, rng, 0.3);
            REQUIRE(p.size() == degree + 1);
            CHECK(p[0] == 1.0);
            const double rho = spectral_radius(p);
            CHECK(rho <= 0.9 + 1e-9);
            CHECK(rho >= 0.3 - 1e-9);
        }
    }
}
