#include <doctest.h>

#include <cmath>
#include <vector>

#include "mfrls/errors.hpp"
#include "mfrls/evaluation.hpp"
#include "mfrls/metrics.hpp"

using namespace mfrls;

namespace {

Dataset small_dataset(std::uint64_t seed = 42) {
    SimulationConfig cfg;
    return generate_dataset(cfg, seed);
}

// Constant-theta, noise-free dataset.
Dataset static_dataset() {
    Dataset ds = small_dataset(7);
    Vector theta(4);
    theta << 1.2, -0.5, 0.8, 0.4;
    ds.trajectory->theta.assign(ds.size(), theta);
    Rng noise = make_stream(1, "n"), init = make_stream(1, "i");
    ds.y = simulate_arx(*ds.trajectory, ds.u, 0.0, noise, init);
    ds.sigma2 = 0.0;
    return ds;
}

}  // namespace

TEST_CASE("method names and arity") {
    for (const Method m : kAllMethods) CHECK(parse_method(method_name(m)) == m);
    CHECK(parse_method("tc") == Method::TC);
    CHECK_THROWS_AS(parse_method("XYZ"), DomainError);
    CHECK(method_arity(Method::RARX) == 1);
    CHECK(method_arity(Method::CS) == 2);
}

TEST_CASE("factor pair layout") {
    CHECK(expand_pair({2, 2}, 0.3, 0.9) == std::vector<double>{0.3, 0.3, 0.9, 0.9});
    CHECK(expand_pair({1, 3}, 0.3, 0.9) == std::vector<double>{0.3, 0.9, 0.9, 0.9});
    CHECK(method_spec(Method::RARX, {2, 2}, 0.7, 0.1).kind == ForgettingKind::Scalar);
    CHECK(method_spec(Method::VF, {2, 2}, 0.7, 0.1).kind == ForgettingKind::VectorType);
}

TEST_CASE("even grid") {
    const auto g = even_grid();
    REQUIRE(g.size() == 20);
    CHECK(g.front() == 0.1);
    CHECK(g.back() == 1.0);
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(std::abs(g[i] - g[i - 1] - 0.9 / 19.0) < 1e-15);
    CHECK(even_grid(1) == std::vector<double>{1.0});
}

TEST_CASE("estimation window and causality") {
    const Dataset ds = small_dataset();
    const EstimationResult r = run_estimation(ds, method_spec(Method::TC, ds.orders, 0.6, 0.95));
    CHECK(r.first_t == 3);
    REQUIRE(r.theta_hat.size() == ds.size() - 2);
    CHECK_FALSE(r.failed);
    // y_pred at t uses the estimate after step t-1.
    CHECK(r.y_pred[0] == 0.0);
    for (std::size_t k = 1; k < r.theta_hat.size(); ++k) {
        const std::size_t t = r.first_t + k;
        const Vector phi = build_regressor(ds.y, ds.u, ds.orders, t);
        CHECK(r.y_pred[k] == doctest::Approx(phi.dot(r.theta_hat[k - 1])).epsilon(1e-14));
        CHECK(r.y[k] == ds.y[t - 1]);
    }
}

TEST_CASE("equal factors collapse TC to RARX") {
    const Dataset ds = small_dataset();
    const auto a = run_estimation(ds, method_spec(Method::TC, ds.orders, 0.8, 0.8));
    const auto b = run_estimation(ds, method_spec(Method::RARX, ds.orders, 0.8, 0.8));
    double worst = 0.0;
    for (std::size_t k = 0; k < a.theta_hat.size(); ++k) {
        worst = std::max(worst, (a.theta_hat[k] - b.theta_hat[k]).norm() / b.theta_hat[k].norm());
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("ordinary RLS converges on a static noise-free system") {
    const Dataset ds = static_dataset();
    const auto r = run_estimation(ds, ForgettingSpec::scalar(1.0));
    const Vector& truth = ds.trajectory->theta.front();
    const std::size_t q = r.theta_hat.size() * 3 / 4;
    for (std::size_t k = q; k < r.theta_hat.size(); ++k) {
        CHECK((r.theta_hat[k] - truth).norm() / truth.norm() < 1e-3);
    }
}

TEST_CASE("grid search") {
    const Dataset ds = small_dataset();
    const std::vector<double> single{0.5};
    const GridResult g = grid_search(ds, Method::TC, single);
    CHECK(g.lambda1 == 0.5);
    CHECK(g.lambda2 == 0.5);
    CHECK(g.evaluated == 1);
    const auto direct = run_estimation(ds, method_spec(Method::TC, ds.orders, 0.5, 0.5));
    CHECK(g.cod == result_cod(direct));
    CHECK(g.atf == *result_atf(direct, ds));

    const std::vector<double> grid{0.4, 0.7, 1.0};
    const GridResult full = grid_search(ds, Method::CS, grid);
    CHECK(full.evaluated == 9);
    for (const double l1 : grid) {
        for (const double l2 : grid) {
            const auto r = run_estimation(ds, method_spec(Method::CS, ds.orders, l1, l2));
            CHECK(result_cod(r) <= full.cod);
        }
    }
    const GridResult rarx = grid_search(ds, Method::RARX, grid);
    CHECK(rarx.evaluated == 3);
    CHECK(rarx.lambda2 == rarx.lambda1);
}

TEST_CASE("static noisy system selects no forgetting") {
    Dataset ds = static_dataset();
    Rng noise = make_stream(2, "n"), init = make_stream(2, "i");
    ds.y = simulate_arx(*ds.trajectory, ds.u, 0.01, noise, init);
    ds.sigma2 = 0.01;
    const auto grid = even_grid();
    CHECK(grid_search(ds, Method::RARX, grid).lambda1 == 1.0);
    const GridResult tc = grid_search(ds, Method::TC, grid);
    CHECK(tc.lambda1 == 1.0);
    CHECK(tc.lambda2 == 1.0);
}

TEST_CASE("ties go to the larger factors") {
    // Zero history everywhere: the regressor is always zero, so every grid
    // point predicts 0 and scores the same COD.
    Dataset ds = small_dataset();
    ds.y.assign(ds.size(), 0.0);
    ds.y.back() = 1.0;
    ds.u.assign(ds.size(), 0.0);
    ds.trajectory.reset();
    const std::vector<double> grid{0.5, 0.9, 0.7};
    for (const Method m : kAllMethods) {
        const GridResult g = grid_search(ds, m, grid);
        CHECK(g.lambda1 == 0.9);
        CHECK(g.lambda2 == 0.9);
        CHECK(std::isnan(g.atf));
    }
}

TEST_CASE("quartiles") {
    const Quartiles q = quartiles({4, 1, 3, 2, 5});
    CHECK(q.min == 1);
    CHECK(q.q1 == 2);
    CHECK(q.median == 3);
    CHECK(q.q3 == 4);
    CHECK(q.max == 5);
    const Quartiles e = quartiles({1, 2, 3, 4});
    CHECK(e.median == 2.5);
    CHECK(e.q1 == 1.75);
    CHECK(std::isnan(quartiles({}).median));
}

TEST_CASE("smallest study is deterministic") {
    StudyConfig cfg;
    cfg.runs = 1;
    cfg.grid = {0.5};
    const StudyReport a = monte_carlo(cfg);
    REQUIRE(a.records.size() == 5);
    const StudyReport b = monte_carlo(cfg);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(a.records[i].method == kAllMethods[i]);
        CHECK(a.records[i].cod == b.records[i].cod);
        CHECK(a.records[i].atf == b.records[i].atf);
    }
    CHECK(a.run_seeds.size() == 1);
}

TEST_CASE("study results do not depend on the thread count") {
    StudyConfig cfg;
    cfg.runs = 6;
    cfg.grid = {0.4, 0.8, 1.0};
    cfg.methods = {Method::RARX, Method::TC};
    std::vector<std::size_t> order;
    const StudyReport one = monte_carlo(cfg, [&](std::span<const StudyRecord> recs) {
        order.push_back(recs.front().run);
    });
    cfg.jobs = 3;
    const StudyReport three = monte_carlo(cfg);
    REQUIRE(one.records.size() == three.records.size());
    for (std::size_t i = 0; i < one.records.size(); ++i) {
        CHECK(one.records[i].run == three.records[i].run);
        CHECK(one.records[i].lambda1 == three.records[i].lambda1);
        CHECK(one.records[i].cod == three.records[i].cod);
    }
    CHECK(order == std::vector<std::size_t>{0, 1, 2, 3, 4, 5});
}

TEST_CASE("study config validation") {
    StudyConfig cfg;
    cfg.runs = 0;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg = StudyConfig{};
    cfg.grid = {0.0};
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg = StudyConfig{};
    cfg.methods.clear();
    CHECK_THROWS_AS(cfg.validate(), DomainError);
}
