#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "mfrls/butterworth.hpp"
#include "mfrls/errors.hpp"

using namespace mfrls;

namespace {

// Steady-state amplitude of the filtered sinusoid at frequency w (fraction of Nyquist).
double measured_gain(const SosFilter& f, double w) {
    const std::size_t n = 20000;
    std::vector<double> x(n);
    for (std::size_t k = 0; k < n; ++k) x[k] = std::sin(std::numbers::pi * w * static_cast<double>(k));
    const std::vector<double> y = f.filter(x);
    double peak = 0.0;
    for (std::size_t k = n / 2; k < n; ++k) peak = std::max(peak, std::abs(y[k]));
    return peak;
}

}  // namespace

TEST_CASE("unit DC gain") {
    for (const double c : {0.05, 0.1, 0.5, 0.9}) {
        const SosFilter f = butterworth_lowpass(10, c);
        CHECK(f.sections.size() == 5);
        CHECK(std::abs(std::abs(f.response(0.0)) - 1.0) < 1e-6);
        const std::vector<double> ones(3000, 2.5);
        CHECK(std::abs(f.filter(ones).back() - 2.5) < 1e-6);
    }
}

TEST_CASE("-3 dB at the cutoff") {
    for (const double c : {0.1, 0.3, 0.5}) {
        const SosFilter f = butterworth_lowpass(10, c);
        CHECK(std::abs(std::abs(f.response(c)) - 1.0 / std::sqrt(2.0)) < 1e-9);
        CHECK(std::abs(measured_gain(f, c) / (1.0 / std::sqrt(2.0)) - 1.0) < 0.01);
    }
}

TEST_CASE("order 10 attenuates by at least 60 dB at twice the cutoff") {
    for (const double c : {0.05, 0.1, 0.2, 0.4}) {
        const SosFilter f = butterworth_lowpass(10, c);
        CHECK(20.0 * std::log10(std::abs(f.response(2.0 * c))) <= -60.0);
    }
}

TEST_CASE("magnitude response is monotone") {
    const SosFilter f = butterworth_lowpass(6, 0.3);
    double prev = 2.0;
    for (int k = 0; k <= 100; ++k) {
        const double g = std::abs(f.response(k / 100.0));
        CHECK(g <= prev + 1e-12);
        prev = g;
    }
}

TEST_CASE("domain checks") {
    CHECK_THROWS_AS(butterworth_lowpass(9, 0.1), DomainError);
    CHECK_THROWS_AS(butterworth_lowpass(0, 0.1), DomainError);
    CHECK_THROWS_AS(butterworth_lowpass(10, 0.0), DomainError);
    CHECK_THROWS_AS(butterworth_lowpass(10, 1.0), DomainError);
}
