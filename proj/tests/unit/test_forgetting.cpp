#include <doctest.h>

#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "mfrls/errors.hpp"
#include "mfrls/forgetting.hpp"
#include "support.hpp"

using namespace mfrls;

namespace {

Matrix mat2(double a, double b, double c, double d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

double min_eig(const Matrix& m) {
    return Eigen::SelfAdjointEigenSolver<Matrix>(m, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
}

}  // namespace

TEST_CASE("kind names round-trip") {
    for (const auto k : {ForgettingKind::Scalar, ForgettingKind::VectorType, ForgettingKind::Diagonal,
                         ForgettingKind::TunedCorrelated, ForgettingKind::CubicSpline}) {
        CHECK(parse_kind(kind_name(k)) == k);
    }
    CHECK(parse_kind("TC") == ForgettingKind::TunedCorrelated);
    CHECK_THROWS_AS(parse_kind("xx"), DomainError);
}

TEST_CASE("spec validation") {
    CHECK_NOTHROW(ForgettingSpec::scalar(1.0).validate());
    CHECK_THROWS_AS(ForgettingSpec::scalar(0.0).validate(), DomainError);
    CHECK_THROWS_AS(ForgettingSpec::scalar(1.2).validate(), DomainError);
    CHECK_THROWS_AS(ForgettingSpec::make(ForgettingKind::Scalar, {0.5, 0.5}).validate(), DomainError);
    CHECK_THROWS_AS(ForgettingSpec::make(ForgettingKind::TunedCorrelated, {}).validate(), DomainError);
    CHECK_THROWS_AS(ForgettingSpec::make(ForgettingKind::CubicSpline, {0.5}).validate_for(2), DimensionMismatch);
    CHECK_THROWS_AS(ForgettingSpec::make(ForgettingKind::CubicSpline, {0.5, NAN}).validate(), DomainError);
}

TEST_CASE("diagonal kernel") {
    const std::vector<double> a{0.5, 0.25};
    CHECK(kernel_diagonal(a).q == mat2(0.5, 0, 0, 0.25));
    const std::vector<double> b{0.3, 0.3};
    CHECK(kernel_diagonal(b).q == mat2(0.3, 0.3, 0.3, 0.3));
    const std::vector<double> c{0.9, 0.9, 0.2, 0.2};
    Matrix expect(4, 4);
    expect << 0.9, 0.9, 0, 0,
              0.9, 0.9, 0, 0,
              0, 0, 0.2, 0.2,
              0, 0, 0.2, 0.2;
    CHECK(kernel_diagonal(c).q == expect);
}

TEST_CASE("tuned/correlated kernel") {
    const std::vector<double> a{0.5, 0.25};
    CHECK(kernel_tc(a).q == mat2(0.5, 0.25, 0.25, 0.25));
    const std::vector<double> b{0.3, 0.3};
    CHECK(kernel_tc(b).q == Matrix::Constant(2, 2, 0.3));
    const std::vector<double> c{0.9, 0.5, 0.1};
    Matrix expect(3, 3);
    expect << 0.9, 0.5, 0.1,
              0.5, 0.5, 0.1,
              0.1, 0.1, 0.1;
    CHECK(kernel_tc(c).q == expect);
}

TEST_CASE("cubic-spline length scales") {
    const std::vector<double> third{1.0 / 3.0};
    CHECK(cs_length_scales(third)[0] == doctest::Approx(1.0).epsilon(1e-15));
    const std::vector<double> l03{0.3};
    const double l = cs_length_scales(l03)[0];
    CHECK(std::abs(l - 0.965489) < 1e-6);
    CHECK(std::abs(l - static_cast<double>(std::cbrt(0.9L))) < 1e-15);
    CHECK(std::abs(l * l * l - 0.9) < 1e-15);
    const std::vector<double> bad{9.0};
    CHECK_THROWS_AS(cs_length_scales(bad), DomainError);
}

TEST_CASE("cubic-spline kernel entries") {
    const std::vector<double> eq{0.7, 0.7};
    const Matrix q = kernel_cs(eq).q;
    CHECK(q(0, 0) == 0.7);
    CHECK(std::abs(q(0, 1) - 0.7) < 1e-15);

    // Long-double evaluation of both branch expressions. The spline kernel
    // takes the one led by the smaller length; it is the larger of the two.
    const std::vector<double> lam{0.3, 0.6};
    const long double l1 = std::cbrt(0.9L), l2 = std::cbrt(1.8L);
    const long double b1 = l1 * l1 / 2 * (l2 - l1 / 3), b2 = l2 * l2 / 2 * (l1 - l2 / 3);
    CHECK(b2 < b1);
    CHECK(std::abs(b1 - b2 - (l2 - l1) * (l2 - l1) * (l2 - l1) / 6) < 1e-18L);
    const double expect = static_cast<double>(b1);
    const Matrix c = kernel_cs(lam).q;
    CHECK(std::abs(c(0, 1) - expect) < 1e-15);
    CHECK(c(1, 0) == c(0, 1));
    CHECK(c(0, 0) == 0.3);
    CHECK(c(1, 1) == 0.6);
    // With l1 <= l2 the cross entry is the remark's f.
    CHECK(std::abs(c(0, 1) - cs_cross_weight(0.3, 0.6)) < 1e-15);
    for (const auto& pt : remark_curve(0.3, 200)) {
        if (pt.lambda2 < 0.3) continue;
        const std::vector<double> pair{0.3, pt.lambda2};
        CHECK(kernel_cs(pair).q(0, 1) == pt.f);
    }
}

TEST_CASE("remark curve: cubic-spline weight stays below the geometric mean") {
    const auto curve = remark_curve(0.3, 200);
    REQUIRE(curve.size() == 200);
    for (const auto& pt : curve) {
        CAPTURE(pt.lambda2);
        CHECK(pt.lambda2 > 0.0);
        CHECK(pt.lambda2 < 1.0);
        CHECK(pt.f < pt.g);
    }
    // The two curves touch at lambda2 = lambda1.
    CHECK(std::abs(cs_cross_weight(0.3, 0.3) - geometric_cross_weight(0.3, 0.3)) < 1e-15);
}

TEST_CASE("apply_map examples") {
    const Matrix r = mat2(2, 1, 1, 3);
    CHECK(apply_map(ForgettingSpec::scalar(0.9), r).isApprox(0.9 * r, 1e-15));
    CHECK(apply_map(ForgettingSpec::make(ForgettingKind::Diagonal, {0.5, 0.25}), r) == mat2(1.0, 0, 0, 0.75));
    CHECK(apply_map(ForgettingSpec::make(ForgettingKind::TunedCorrelated, {0.5, 0.25}), r) ==
          mat2(1.0, 0.25, 0.25, 0.75));
    CHECK_THROWS_AS(apply_map(ForgettingSpec::make(ForgettingKind::VectorType, {0.5, 0.25}), r), KindMismatch);
    CHECK_THROWS_AS(build_kernel(ForgettingSpec::make(ForgettingKind::VectorType, {0.5, 0.25}), 2), KindMismatch);
}

TEST_CASE("apply_map rejects an indefinite result") {
    const Matrix indefinite = mat2(1, 2, 2, 1);
    CHECK_THROWS_AS(apply_map(ForgettingSpec::make(ForgettingKind::TunedCorrelated, {0.9, 0.9}), indefinite),
                    MapDegeneracy);
}

TEST_CASE("forgetting map agrees with apply_map") {
    Rng rng = make_stream(11, "map");
    for (const auto kind : {ForgettingKind::Diagonal, ForgettingKind::TunedCorrelated, ForgettingKind::CubicSpline}) {
        const auto lam = test::random_factors(rng, 5);
        const ForgettingSpec spec = ForgettingSpec::make(kind, lam);
        const ForgettingMap map(spec, 5);
        const Matrix r = test::random_pd(rng, 5);
        CHECK(map.apply(r) == apply_map(spec, r));
        const Vector phi = test::random_vector(rng, 5);
        Matrix out(5, 5);
        map.apply_add_outer(r, phi, out);
        CHECK((out - (map.apply(r) + phi * phi.transpose())).cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("kernels: PSD, pinned diagonal, equal-factor collapse (property)") {
    Rng rng = make_stream(12, "kernel-props");
    std::uniform_int_distribution<int> dim(1, 8);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t p = static_cast<std::size_t>(dim(rng));
        const auto lam = test::random_factors(rng, p, 0.01, 1.0);
        for (const auto& q : {kernel_diagonal(lam).q, kernel_tc(lam).q, kernel_cs(lam).q}) {
            CHECK(min_eig(q) >= -1e-10);
            CHECK(q.isApprox(q.transpose(), 0.0));
            for (std::size_t i = 0; i < p; ++i) {
                CHECK(q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) == lam[i]);
            }
        }
        const std::vector<double> same(p, lam[0]);
        const Matrix ones = Matrix::Constant(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p), lam[0]);
        CHECK(kernel_diagonal(same).q == ones);
        CHECK(kernel_tc(same).q == ones);
        CHECK((kernel_cs(same).q - ones).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("Hadamard maps keep positive definite matrices positive definite (property)") {
    Rng rng = make_stream(13, "schur");
    std::uniform_int_distribution<int> dim(1, 8);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t p = static_cast<std::size_t>(dim(rng));
        const Matrix r = test::random_pd(rng, p);
        auto lam = test::random_factors(rng, p, 0.01, 1.0);
        if (p > 2) lam[1] = lam[0];
        for (const auto kind : {ForgettingKind::Diagonal, ForgettingKind::TunedCorrelated, ForgettingKind::CubicSpline}) {
            CHECK(min_eig(apply_map(ForgettingSpec::make(kind, lam), r)) > 0.0);
        }
    }
}
