// AArch64 Advanced SIMD variants; reduces to the scalar reference elsewhere.

#include "mfrls/kernels.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON)
#include <arm_neon.h>
#endif

namespace mfrls::kernels::neon {

#if defined(__aarch64__) && defined(__ARM_NEON)

void hadamard(const double* q, const double* r, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(out + i, vmulq_f64(vld1q_f64(q + i), vld1q_f64(r + i)));
    for (; i < n; ++i) out[i] = q[i] * r[i];
}

void hadamard_add_outer(const double* q, const double* r, const double* phi, double* out,
                        std::size_t p) {
    for (std::size_t j = 0; j < p; ++j) {
        const double pj = phi[j];
        const float64x2_t vpj = vdupq_n_f64(pj);
        const std::size_t col = j * p;
        std::size_t i = 0;
        for (; i + 2 <= p; i += 2) {
            const float64x2_t prod = vmulq_f64(vld1q_f64(q + col + i), vld1q_f64(r + col + i));
            const float64x2_t outer = vmulq_f64(vld1q_f64(phi + i), vpj);
            vst1q_f64(out + col + i, vaddq_f64(prod, outer));
        }
        for (; i < p; ++i) out[col + i] = q[col + i] * r[col + i] + phi[i] * pj;
    }
}

void scale_add_outer(double alpha, const double* r, const double* phi, double* out,
                     std::size_t p) {
    const float64x2_t va = vdupq_n_f64(alpha);
    for (std::size_t j = 0; j < p; ++j) {
        const double pj = phi[j];
        const float64x2_t vpj = vdupq_n_f64(pj);
        const std::size_t col = j * p;
        std::size_t i = 0;
        for (; i + 2 <= p; i += 2) {
            const float64x2_t scaled = vmulq_f64(va, vld1q_f64(r + col + i));
            const float64x2_t outer = vmulq_f64(vld1q_f64(phi + i), vpj);
            vst1q_f64(out + col + i, vaddq_f64(scaled, outer));
        }
        for (; i < p; ++i) out[col + i] = alpha * r[col + i] + phi[i] * pj;
    }
}

double dot(const double* a, const double* b, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

#else

void hadamard(const double* q, const double* r, double* out, std::size_t n) {
    scalar::hadamard(q, r, out, n);
}
void hadamard_add_outer(const double* q, const double* r, const double* phi, double* out,
                        std::size_t p) {
    scalar::hadamard_add_outer(q, r, phi, out, p);
}
void scale_add_outer(double alpha, const double* r, const double* phi, double* out,
                     std::size_t p) {
    scalar::scale_add_outer(alpha, r, phi, out, p);
}
double dot(const double* a, const double* b, std::size_t n) { return scalar::dot(a, b, n); }

#endif

}  // namespace mfrls::kernels::neon
