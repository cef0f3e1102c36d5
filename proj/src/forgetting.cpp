#include "mfrls/forgetting.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "mfrls/errors.hpp"
#include "mfrls/kernels.hpp"

namespace mfrls {
namespace {

std::span<const double> span_of(const Matrix& m) {
    return {m.data(), static_cast<std::size_t>(m.size())};
}

std::span<double> span_of(Matrix& m) { return {m.data(), static_cast<std::size_t>(m.size())}; }

void check_factors(std::span<const double> lambda) {
    if (lambda.empty()) throw DomainError("forgetting vector is empty");
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        const double l = lambda[i];
        if (!(l > 0.0 && l <= 1.0)) {
            throw DomainError("forgetting factor lambda[" + std::to_string(i) +
                              "] = " + std::to_string(l) + " outside (0, 1]");
        }
    }
}

}  // namespace

std::string_view kind_name(ForgettingKind kind) {
    switch (kind) {
        case ForgettingKind::Scalar: return "scalar";
        case ForgettingKind::VectorType: return "vector";
        case ForgettingKind::Diagonal: return "di";
        case ForgettingKind::TunedCorrelated: return "tc";
        case ForgettingKind::CubicSpline: return "cs";
    }
    return "?";
}

ForgettingKind parse_kind(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "scalar") return ForgettingKind::Scalar;
    if (lower == "vector" || lower == "vf") return ForgettingKind::VectorType;
    if (lower == "di" || lower == "diagonal") return ForgettingKind::Diagonal;
    if (lower == "tc" || lower == "tuned") return ForgettingKind::TunedCorrelated;
    if (lower == "cs" || lower == "spline") return ForgettingKind::CubicSpline;
    throw DomainError("unknown forgetting kind '" + std::string(name) + "'");
}

void ForgettingSpec::validate() const {
    check_factors(lambda);
    if (kind == ForgettingKind::Scalar && lambda.size() != 1) {
        throw DomainError("scalar forgetting takes exactly one factor, got " +
                          std::to_string(lambda.size()));
    }
}

void ForgettingSpec::validate_for(std::size_t p) const {
    validate();
    if (kind != ForgettingKind::Scalar && lambda.size() != p) {
        throw DimensionMismatch(std::string(kind_name(kind)) + " forgetting needs " +
                                std::to_string(p) + " factors, got " +
                                std::to_string(lambda.size()));
    }
}

ForgettingSpec ForgettingSpec::scalar(double lambda) {
    return make(ForgettingKind::Scalar, {lambda});
}

ForgettingSpec ForgettingSpec::make(ForgettingKind kind, std::vector<double> lambda) {
    ForgettingSpec spec{kind, std::move(lambda)};
    spec.validate();
    return spec;
}

ForgettingKernel kernel_diagonal(std::span<const double> lambda) {
    check_factors(lambda);
    const auto p = static_cast<Eigen::Index>(lambda.size());
    Matrix q = Matrix::Zero(p, p);
    for (Eigen::Index i = 0; i < p; ++i) {
        for (Eigen::Index j = 0; j < p; ++j) {
            if (lambda[i] == lambda[j]) q(i, j) = lambda[i];
        }
    }
    return {std::move(q)};
}

ForgettingKernel kernel_tc(std::span<const double> lambda) {
    check_factors(lambda);
    const auto p = static_cast<Eigen::Index>(lambda.size());
    Matrix q(p, p);
    for (Eigen::Index i = 0; i < p; ++i) {
        for (Eigen::Index j = 0; j < p; ++j) q(i, j) = std::min(lambda[i], lambda[j]);
    }
    return {std::move(q)};
}

std::vector<double> cs_length_scales(std::span<const double> lambda) {
    check_factors(lambda);
    std::vector<double> l(lambda.size());
    std::transform(lambda.begin(), lambda.end(), l.begin(),
                   [](double x) { return std::cbrt(3.0 * x); });
    return l;
}

ForgettingKernel kernel_cs(std::span<const double> lambda) {
    const std::vector<double> l = cs_length_scales(lambda);
    const auto p = static_cast<Eigen::Index>(l.size());
    Matrix q(p, p);
    for (Eigen::Index i = 0; i < p; ++i) {
        for (Eigen::Index j = 0; j < p; ++j) {
            // Spline kernel: the branch whose quadratic factor is the smaller length.
            const double lo = std::min(l[i], l[j]);
            const double hi = std::max(l[i], l[j]);
            q(i, j) = lo * lo / 2.0 * (hi - lo / 3.0);
        }
        // l^3/3 reproduces lambda only up to rounding of the cube root.
        q(i, i) = lambda[i];
    }
    return {std::move(q)};
}

ForgettingKernel build_kernel(const ForgettingSpec& spec, std::size_t p) {
    spec.validate_for(p);
    switch (spec.kind) {
        case ForgettingKind::Scalar:
            return {Matrix::Constant(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p),
                                     spec.lambda.front())};
        case ForgettingKind::Diagonal: return kernel_diagonal(spec.lambda);
        case ForgettingKind::TunedCorrelated: return kernel_tc(spec.lambda);
        case ForgettingKind::CubicSpline: return kernel_cs(spec.lambda);
        case ForgettingKind::VectorType: break;
    }
    throw KindMismatch("vector-type forgetting scales the covariance and has no Hadamard kernel");
}

double cs_cross_weight(double lambda_small, double lambda_large) {
    const double li = std::cbrt(3.0 * lambda_small);
    const double lj = std::cbrt(3.0 * lambda_large);
    return li * li / 2.0 * (lj - li / 3.0);
}

double geometric_cross_weight(double lambda_i, double lambda_j) {
    return std::sqrt(lambda_i * lambda_j);
}

std::vector<RemarkPoint> remark_curve(double lambda1, std::size_t points) {
    if (!(lambda1 > 0.0 && lambda1 <= 1.0)) throw DomainError("remark_curve: lambda1 must lie in (0, 1]");
    std::vector<RemarkPoint> out(points);
    for (std::size_t k = 0; k < points; ++k) {
        const double l2 = static_cast<double>(k + 1) / static_cast<double>(points + 1);
        out[k] = {l2, cs_cross_weight(lambda1, l2), geometric_cross_weight(lambda1, l2)};
    }
    return out;
}

ForgettingMap::ForgettingMap(ForgettingSpec spec, std::size_t p)
    : spec_(std::move(spec)), kernel_(build_kernel(spec_, p)) {}

Matrix ForgettingMap::apply(const Matrix& r) const {
    if (r.rows() != kernel_.q.rows() || r.cols() != kernel_.q.cols()) {
        throw DimensionMismatch("forgetting map: matrix size does not match kernel");
    }
    Matrix out(r.rows(), r.cols());
    kernels::hadamard(span_of(kernel_.q), span_of(r), span_of(out));
    return out;
}

void ForgettingMap::apply_add_outer(const Matrix& r, const Vector& phi, Matrix& out) const {
    if (r.rows() != kernel_.q.rows() || phi.size() != r.rows()) {
        throw DimensionMismatch("forgetting map: matrix size does not match kernel");
    }
    out.resize(r.rows(), r.cols());
    kernels::hadamard_add_outer(span_of(kernel_.q), span_of(r),
                                {phi.data(), static_cast<std::size_t>(phi.size())}, span_of(out));
}

Matrix apply_map(const ForgettingSpec& spec, const Matrix& r) {
    if (spec.kind == ForgettingKind::VectorType) {
        throw KindMismatch("vector-type forgetting is not a Hadamard map");
    }
    const ForgettingMap map(spec, static_cast<std::size_t>(r.rows()));
    Matrix out = map.apply(r);
    const Eigen::LLT<Matrix> llt(out);
    if (llt.info() != Eigen::Success) {
        const double scale = out.cwiseAbs().maxCoeff();
        const double min_eig = Eigen::SelfAdjointEigenSolver<Matrix>(out, Eigen::EigenvaluesOnly)
                                   .eigenvalues()
                                   .minCoeff();
        if (min_eig < -1e-10 * scale) {
            throw MapDegeneracy("forgetting map lost positive semidefiniteness (min eigenvalue " +
                                std::to_string(min_eig) + ")");
        }
    }
    return out;
}

}  // namespace mfrls
