#include <doctest.h>

#include <vector>

#include "mfrls/arx.hpp"
#include "mfrls/errors.hpp"

using namespace mfrls;

TEST_CASE("model orders") {
    const ModelOrders o{2, 1};
    CHECK(o.p() == 3);
    CHECK(o.max_lag() == 2);
    CHECK_THROWS_AS(ModelOrders({0, 0}).validate(), DomainError);
}

TEST_CASE("regressor reads lags most recent first") {
    const std::vector<double> y1{2.0}, u1{3.0};
    const Vector a = build_regressor(y1, u1, {1, 1}, 2);
    CHECK(a.size() == 2);
    CHECK(a[0] == 2.0);
    CHECK(a[1] == 3.0);

    const std::vector<double> y2{1, 2}, u2{3, 4};
    const Vector b = build_regressor(y2, u2, {2, 2}, 3);
    CHECK(b[0] == 2.0);
    CHECK(b[1] == 1.0);
    CHECK(b[2] == 4.0);
    CHECK(b[3] == 3.0);
}

TEST_CASE("regressor needs a full history") {
    const std::vector<double> y{1, 2, 3}, u{1, 2, 3};
    CHECK_THROWS_AS(build_regressor(y, u, {2, 1}, 2), IndexOutOfRange);
    CHECK_NOTHROW(build_regressor(y, u, {2, 1}, 3));
    CHECK_THROWS_AS(build_regressor(y, u, {2, 1}, 5), IndexOutOfRange);
}

TEST_CASE("regressor ignores samples at and after t") {
    std::vector<double> y{1, 2, 3, 4}, u{5, 6, 7, 8};
    const Vector before = build_regressor(y, u, {2, 2}, 3);
    y[2] = 100.0;
    u[3] = -100.0;
    CHECK(build_regressor(y, u, {2, 2}, 3) == before);
}
