#include "mfrls/butterworth.hpp"

#include <cmath>
#include <numbers>

#include "mfrls/errors.hpp"

namespace mfrls {

std::complex<double> SosFilter::response(double w) const {
    const std::complex<double> z1 = std::polar(1.0, -std::numbers::pi * w);  // z^{-1}
    const std::complex<double> z2 = z1 * z1;
    std::complex<double> h = 1.0;
    for (const Biquad& s : sections) {
        h *= (s.b0 + s.b1 * z1 + s.b2 * z2) / (1.0 + s.a1 * z1 + s.a2 * z2);
    }
    return h;
}

std::vector<double> SosFilter::filter(std::span<const double> x) const {
    std::vector<double> y(x.begin(), x.end());
    for (const Biquad& s : sections) {
        double w1 = 0.0;
        double w2 = 0.0;
        for (double& v : y) {
            const double in = v;
            const double out = s.b0 * in + w1;
            w1 = s.b1 * in - s.a1 * out + w2;
            w2 = s.b2 * in - s.a2 * out;
            v = out;
        }
    }
    return y;
}

SosFilter butterworth_lowpass(int order, double cutoff) {
    if (order < 2 || order % 2 != 0) {
        throw DomainError("butterworth_lowpass: order must be even and >= 2");
    }
    if (!(cutoff > 0.0 && cutoff < 1.0)) {
        throw DomainError("butterworth_lowpass: cutoff must lie in (0, 1)");
    }
    constexpr double k = 2.0;  // bilinear s = k (1 - z^-1) / (1 + z^-1)
    const double wc = k * std::tan(std::numbers::pi * cutoff / 2.0);
    const double wc2 = wc * wc;

    SosFilter f;
    f.sections.reserve(static_cast<std::size_t>(order / 2));
    for (int i = 0; i < order / 2; ++i) {
        // Analog section wc^2 / (s^2 + 2 sin(theta) wc s + wc^2).
        const double theta = std::numbers::pi * (2.0 * i + 1.0) / (2.0 * order);
        const double damp = 2.0 * std::sin(theta) * wc * k;
        const double a0 = k * k + damp + wc2;
        Biquad s;
        s.b0 = wc2 / a0;
        s.b1 = 2.0 * wc2 / a0;
        s.b2 = wc2 / a0;
        s.a1 = (2.0 * wc2 - 2.0 * k * k) / a0;
        s.a2 = (k * k - damp + wc2) / a0;
        f.sections.push_back(s);
    }
    return f;
}

}  // namespace mfrls
