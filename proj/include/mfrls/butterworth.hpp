#pragma once

#include <complex>
#include <span>
#include <vector>

namespace mfrls {

/// y = (b0 + b1 z^-1 + b2 z^-2) / (1 + a1 z^-1 + a2 z^-2) x
struct Biquad {
    double b0 = 1.0, b1 = 0.0, b2 = 0.0;
    double a1 = 0.0, a2 = 0.0;
};

struct SosFilter {
    std::vector<Biquad> sections;

    /// H(e^{i pi w}) with w a fraction of the Nyquist frequency.
    std::complex<double> response(double w) const;
    /// Runs the cascade from rest (transposed direct form II).
    std::vector<double> filter(std::span<const double> x) const;
};

/// Digital Butterworth low-pass of even order, cutoff as a fraction of the
/// Nyquist frequency in (0, 1). Bilinear transform with pre-warping; each
/// conjugate pole pair becomes one second-order section with unit DC gain.
SosFilter butterworth_lowpass(int order, double cutoff);

}  // namespace mfrls
