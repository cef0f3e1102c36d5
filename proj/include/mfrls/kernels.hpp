#pragma once

// Elementwise kernels used in every estimator step: the Hadamard forgetting
// map, the rank-one information update and the dot product. Each kernel has
// a scalar reference implementation and vectorized variants; the dispatcher
// picks one at first use from the CPU's feature set.
//
// Matrices are dense column-major p x p buffers (Eigen's default layout).
// The elementwise kernels never use fused multiply-add so that every variant
// is bit-identical to the scalar reference.

#include <cstddef>
#include <span>
#include <string_view>

namespace mfrls::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa);

/// Variant chosen by the dispatcher (honours force_scalar()).
Isa active_isa();

/// True when the running CPU can execute the given variant.
bool isa_available(Isa isa);

/// Pin dispatch to the scalar reference (tests, debugging).
void force_scalar(bool on);

// out = q o r   (entrywise)
void hadamard(std::span<const double> q, std::span<const double> r, std::span<double> out);

// out = q o r + phi phi^T, with r, q, out p x p and phi of length p.
void hadamard_add_outer(std::span<const double> q, std::span<const double> r,
                        std::span<const double> phi, std::span<double> out);

// out = alpha * r + phi phi^T
void scale_add_outer(double alpha, std::span<const double> r, std::span<const double> phi,
                     std::span<double> out);

double dot(std::span<const double> a, std::span<const double> b);

// Explicit variants, exposed for the equivalence tests. Calling a variant the
// CPU does not support is undefined; check isa_available() first.
namespace scalar {
void hadamard(const double* q, const double* r, double* out, std::size_t n);
void hadamard_add_outer(const double* q, const double* r, const double* phi, double* out,
                        std::size_t p);
void scale_add_outer(double alpha, const double* r, const double* phi, double* out,
                     std::size_t p);
double dot(const double* a, const double* b, std::size_t n);
}  // namespace scalar

namespace avx2 {
void hadamard(const double* q, const double* r, double* out, std::size_t n);
void hadamard_add_outer(const double* q, const double* r, const double* phi, double* out,
                        std::size_t p);
void scale_add_outer(double alpha, const double* r, const double* phi, double* out,
                     std::size_t p);
double dot(const double* a, const double* b, std::size_t n);
}  // namespace avx2

namespace neon {
void hadamard(const double* q, const double* r, double* out, std::size_t n);
void hadamard_add_outer(const double* q, const double* r, const double* phi, double* out,
                        std::size_t p);
void scale_add_outer(double alpha, const double* r, const double* phi, double* out,
                     std::size_t p);
double dot(const double* a, const double* b, std::size_t n);
}  // namespace neon

}  // namespace mfrls::kernels
