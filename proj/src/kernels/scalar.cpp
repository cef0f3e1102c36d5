#include "mfrls/kernels.hpp"

namespace mfrls::kernels::scalar {

void hadamard(const double* q, const double* r, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = q[i] * r[i];
}

void hadamard_add_outer(const double* q, const double* r, const double* phi, double* out,
                        std::size_t p) {
    for (std::size_t j = 0; j < p; ++j) {
        const double pj = phi[j];
        const std::size_t col = j * p;
        for (std::size_t i = 0; i < p; ++i) {
            out[col + i] = q[col + i] * r[col + i] + phi[i] * pj;
        }
    }
}

void scale_add_outer(double alpha, const double* r, const double* phi, double* out,
                     std::size_t p) {
    for (std::size_t j = 0; j < p; ++j) {
        const double pj = phi[j];
        const std::size_t col = j * p;
        for (std::size_t i = 0; i < p; ++i) {
            out[col + i] = alpha * r[col + i] + phi[i] * pj;
        }
    }
}

double dot(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

}  // namespace mfrls::kernels::scalar
