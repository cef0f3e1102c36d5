#include <atomic>
#include <cassert>

#include "mfrls/kernels.hpp"

namespace mfrls::kernels {
namespace {

std::atomic<bool> g_force_scalar{false};

Isa detect() {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
    if (__builtin_cpu_supports("avx2")) return Isa::Avx2;
#elif defined(__aarch64__) && defined(__ARM_NEON)
    return Isa::Neon;
#endif
    return Isa::Scalar;
}

Isa detected() {
    static const Isa isa = detect();
    return isa;
}

void check_square(std::size_t n, std::size_t p) {
    assert(n == p * p);
    (void)n;
    (void)p;
}

}  // namespace

std::string_view isa_name(Isa isa) {
    switch (isa) {
        case Isa::Avx2: return "avx2";
        case Isa::Neon: return "neon";
        case Isa::Scalar: break;
    }
    return "scalar";
}

bool isa_available(Isa isa) {
    if (isa == Isa::Scalar) return true;
    return detected() == isa;
}

Isa active_isa() {
    return g_force_scalar.load(std::memory_order_relaxed) ? Isa::Scalar : detected();
}

void force_scalar(bool on) { g_force_scalar.store(on, std::memory_order_relaxed); }

void hadamard(std::span<const double> q, std::span<const double> r, std::span<double> out) {
    assert(q.size() == r.size() && r.size() == out.size());
    switch (active_isa()) {
        case Isa::Avx2: return avx2::hadamard(q.data(), r.data(), out.data(), out.size());
        case Isa::Neon: return neon::hadamard(q.data(), r.data(), out.data(), out.size());
        case Isa::Scalar: break;
    }
    scalar::hadamard(q.data(), r.data(), out.data(), out.size());
}

void hadamard_add_outer(std::span<const double> q, std::span<const double> r,
                        std::span<const double> phi, std::span<double> out) {
    const std::size_t p = phi.size();
    check_square(out.size(), p);
    assert(q.size() == out.size() && r.size() == out.size());
    switch (active_isa()) {
        case Isa::Avx2: return avx2::hadamard_add_outer(q.data(), r.data(), phi.data(), out.data(), p);
        case Isa::Neon: return neon::hadamard_add_outer(q.data(), r.data(), phi.data(), out.data(), p);
        case Isa::Scalar: break;
    }
    scalar::hadamard_add_outer(q.data(), r.data(), phi.data(), out.data(), p);
}

void scale_add_outer(double alpha, std::span<const double> r, std::span<const double> phi,
                     std::span<double> out) {
    const std::size_t p = phi.size();
    check_square(out.size(), p);
    assert(r.size() == out.size());
    switch (active_isa()) {
        case Isa::Avx2: return avx2::scale_add_outer(alpha, r.data(), phi.data(), out.data(), p);
        case Isa::Neon: return neon::scale_add_outer(alpha, r.data(), phi.data(), out.data(), p);
        case Isa::Scalar: break;
    }
    scalar::scale_add_outer(alpha, r.data(), phi.data(), out.data(), p);
}

double dot(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    switch (active_isa()) {
        case Isa::Avx2: return avx2::dot(a.data(), b.data(), a.size());
        case Isa::Neon: return neon::dot(a.data(), b.data(), a.size());
        case Isa::Scalar: break;
    }
    return scalar::dot(a.data(), b.data(), a.size());
}

}  // namespace mfrls::kernels
