#pragma once

#include <complex>
#include <span>
#include <vector>

#include "mfrls/rng.hpp"

namespace mfrls {

/// Coefficients [c_0, c_1, ..., c_d] of c_0 + c_1 z^{-1} + ... + c_d z^{-d}.
using Polynomial = std::vector<double>;

/// Monic polynomial prod_k (1 - r_k z^{-1}); roots must be closed under conjugation.
Polynomial polynomial_from_roots(std::span<const std::complex<double>> roots);

/// Largest root modulus of a monic polynomial, from its companion matrix.
double spectral_radius(const Polynomial& monic);

/// Random monic polynomial of the given degree with root moduli drawn
/// uniformly in [min_root_modulus, max_root_modulus]. Roots come in complex
/// conjugate pairs, plus one real root of random sign for odd degree.
Polynomial generate_stable_polynomial(std::size_t degree, double max_root_modulus, Rng& rng,
                                      double min_root_modulus = 0.0);

}  // namespace mfrls
