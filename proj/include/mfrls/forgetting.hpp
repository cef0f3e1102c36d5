#pragma once

// Forgetting schemes and the Hadamard-product forgetting maps
// F(R) = Q o R built from a per-parameter forgetting vector.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "mfrls/arx.hpp"

namespace mfrls {

enum class ForgettingKind { Scalar, VectorType, Diagonal, TunedCorrelated, CubicSpline };

std::string_view kind_name(ForgettingKind kind);
/// Accepts "scalar", "vector", "di", "tc", "cs" (case-insensitive).
ForgettingKind parse_kind(std::string_view name);

/// Which scheme plus its forgetting factors. One factor for Scalar, one per
/// parameter otherwise. Factors lie in (0, 1].
struct ForgettingSpec {
    ForgettingKind kind = ForgettingKind::Scalar;
    std::vector<double> lambda;

    /// Throws DomainError on an empty vector, wrong Scalar arity or a factor
    /// outside (0, 1].
    void validate() const;
    /// Validates and additionally checks the vector length against p.
    void validate_for(std::size_t p) const;

    static ForgettingSpec scalar(double lambda);
    static ForgettingSpec make(ForgettingKind kind, std::vector<double> lambda);
};

/// Symmetric p x p kernel Q with Q_ii = lambda_i.
struct ForgettingKernel {
    Matrix q;
};

/// Q_ij = lambda_i when lambda_i == lambda_j (bitwise), 0 otherwise.
ForgettingKernel kernel_diagonal(std::span<const double> lambda);
/// Q_ij = min(lambda_i, lambda_j).
ForgettingKernel kernel_tc(std::span<const double> lambda);
/// l_i = cbrt(3 lambda_i), so that l_i^3 / 3 = lambda_i.
std::vector<double> cs_length_scales(std::span<const double> lambda);
/// Q_ij = min(l_i^2/2 (l_j - l_i/3), l_j^2/2 (l_i - l_j/3)).
ForgettingKernel kernel_cs(std::span<const double> lambda);

/// Kernel of a Hadamard-type spec for p parameters. Scalar gives lambda * ones.
/// Throws KindMismatch for VectorType.
ForgettingKernel build_kernel(const ForgettingSpec& spec, std::size_t p);

/// Cubic-spline cross weight f(l_i <= l_j) = l_i^2/2 (l_j - l_i/3), used for
/// comparing against the geometric-mean weight sqrt(lambda_1 lambda_2).
double cs_cross_weight(double lambda_small, double lambda_large);
/// Reference only: geometric-mean kernel entry sqrt(lambda_i lambda_j).
double geometric_cross_weight(double lambda_i, double lambda_j);

struct RemarkPoint {
    double lambda2 = 0.0;
    double f = 0.0;  ///< cs_cross_weight(lambda1, lambda2)
    double g = 0.0;  ///< geometric_cross_weight(lambda1, lambda2)
};

/// f and g at lambda2 = k / (points + 1), k = 1..points. The curves touch at
/// lambda2 = lambda1; the default grid does not contain 0.3.
std::vector<RemarkPoint> remark_curve(double lambda1 = 0.3, std::size_t points = 200);

/// A forgetting map with its kernel built once. Not usable for VectorType.
class ForgettingMap {
public:
    ForgettingMap(ForgettingSpec spec, std::size_t p);

    const ForgettingSpec& spec() const noexcept { return spec_; }
    const Matrix& kernel() const noexcept { return kernel_.q; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(kernel_.q.rows()); }

    /// Q o R, no positivity check.
    Matrix apply(const Matrix& r) const;
    /// out = Q o R + phi phi^T, no positivity check.
    void apply_add_outer(const Matrix& r, const Vector& phi, Matrix& out) const;

private:
    ForgettingSpec spec_;
    ForgettingKernel kernel_;
};

/// F(R) for Scalar, Diagonal, TunedCorrelated and CubicSpline specs. The
/// result is verified positive semidefinite (smallest eigenvalue >= -1e-10 ||F||),
/// else MapDegeneracy. Throws KindMismatch for VectorType.
Matrix apply_map(const ForgettingSpec& spec, const Matrix& r);

}  // namespace mfrls
