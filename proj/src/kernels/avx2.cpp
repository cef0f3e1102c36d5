// Built with -mavx2 on x86-64; reduces to the scalar reference elsewhere.

#include "mfrls/kernels.hpp"

#if defined(__AVX2__)
#include <immintrin.h>
#endif

namespace mfrls::kernels::avx2 {

#if defined(__AVX2__)

void hadamard(const double* q, const double* r, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vq = _mm256_loadu_pd(q + i);
        const __m256d vr = _mm256_loadu_pd(r + i);
        _mm256_storeu_pd(out + i, _mm256_mul_pd(vq, vr));
    }
    for (; i < n; ++i) out[i] = q[i] * r[i];
}

void hadamard_add_outer(const double* q, const double* r, const double* phi, double* out,
                        std::size_t p) {
    for (std::size_t j = 0; j < p; ++j) {
        const double pj = phi[j];
        const __m256d vpj = _mm256_set1_pd(pj);
        const std::size_t col = j * p;
        std::size_t i = 0;
        for (; i + 4 <= p; i += 4) {
            const __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(q + col + i),
                                               _mm256_loadu_pd(r + col + i));
            const __m256d outer = _mm256_mul_pd(_mm256_loadu_pd(phi + i), vpj);
            _mm256_storeu_pd(out + col + i, _mm256_add_pd(prod, outer));
        }
        for (; i < p; ++i) out[col + i] = q[col + i] * r[col + i] + phi[i] * pj;
    }
}

void scale_add_outer(double alpha, const double* r, const double* phi, double* out,
                     std::size_t p) {
    const __m256d va = _mm256_set1_pd(alpha);
    for (std::size_t j = 0; j < p; ++j) {
        const double pj = phi[j];
        const __m256d vpj = _mm256_set1_pd(pj);
        const std::size_t col = j * p;
        std::size_t i = 0;
        for (; i + 4 <= p; i += 4) {
            const __m256d scaled = _mm256_mul_pd(va, _mm256_loadu_pd(r + col + i));
            const __m256d outer = _mm256_mul_pd(_mm256_loadu_pd(phi + i), vpj);
            _mm256_storeu_pd(out + col + i, _mm256_add_pd(scaled, outer));
        }
        for (; i < p; ++i) out[col + i] = alpha * r[col + i] + phi[i] * pj;
    }
}

double dot(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    }
    const __m128d lo = _mm256_castpd256_pd128(acc);
    const __m128d hi = _mm256_extractf128_pd(acc, 1);
    const __m128d pair = _mm_add_pd(lo, hi);
    double s = _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
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

}  // namespace mfrls::kernels::avx2
