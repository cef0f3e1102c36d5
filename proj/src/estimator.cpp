#include "mfrls/estimator.hpp"

#include <cmath>
#include <string>

#include <spdlog/spdlog.h>

#include "mfrls/errors.hpp"
#include "mfrls/kernels.hpp"

namespace mfrls {
namespace {

std::span<double> span_of(Matrix& m) { return {m.data(), static_cast<std::size_t>(m.size())}; }
std::span<const double> span_of(const Vector& v) {
    return {v.data(), static_cast<std::size_t>(v.size())};
}

void symmetrize(Matrix& m) {
    const Eigen::Index p = m.rows();
    for (Eigen::Index j = 0; j < p; ++j) {
        for (Eigen::Index i = j + 1; i < p; ++i) {
            const double avg = 0.5 * (m(i, j) + m(j, i));
            m(i, j) = avg;
            m(j, i) = avg;
        }
    }
}

void check_dims(const EstimatorState& state, const Vector& phi) {
    if (phi.size() != state.theta.size() || state.info.rows() != state.theta.size() ||
        state.info.cols() != state.theta.size()) {
        throw DimensionMismatch("estimator: regressor length " + std::to_string(phi.size()) +
                                " does not match state dimension " +
                                std::to_string(state.theta.size()));
    }
}

void require_form(const EstimatorState& state, InfoForm form, const char* who) {
    if (state.form != form) {
        throw DomainError(std::string(who) + ": state is in the wrong form (" +
                          (form == InfoForm::Information ? "information" : "covariance") +
                          " form required)");
    }
}

// Fails when the smallest eigenvalue of a forgotten matrix is clearly negative.
void check_degeneracy(const Matrix& forgotten, const GuardOptions& guard, std::size_t step) {
    const double scale = forgotten.cwiseAbs().maxCoeff();
    const double min_eig = Eigen::SelfAdjointEigenSolver<Matrix>(forgotten, Eigen::EigenvaluesOnly)
                               .eigenvalues()
                               .minCoeff();
    if (min_eig < -guard.degeneracy_tol * scale) {
        throw MapDegeneracy("forgetting map lost positive semidefiniteness at step " +
                            std::to_string(step) + " (min eigenvalue " + std::to_string(min_eig) +
                            ")");
    }
}

// Cholesky of a symmetric matrix that should be positive definite. On a
// failed factorization or a reciprocal condition below the threshold, runs
// on_trip (degeneracy diagnosis), adds jitter to the diagonal of m in place
// and refactors once.
template <class OnTrip>
Eigen::LLT<Matrix> factor_guarded(Matrix& m, EstimatorState& state, const GuardOptions& guard,
                                  OnTrip&& on_trip) {
    const std::size_t step = state.t + 1;
    Eigen::LLT<Matrix> llt(m);
    if (llt.info() == Eigen::Success && llt.rcond() >= guard.rcond_min) return llt;

    on_trip(step);

    const double p = static_cast<double>(m.rows());
    double jitter = guard.jitter_rel * std::abs(m.trace()) / p;
    if (!(jitter > 0.0) || !std::isfinite(jitter)) jitter = guard.jitter_rel;
    m.diagonal().array() += jitter;
    ++state.guard_trips;
    spdlog::warn("rls step {}: ill-conditioned matrix, added jitter {:.3g}", step, jitter);

    llt.compute(m);
    if (llt.info() != Eigen::Success || !(llt.rcond() >= guard.rcond_min)) {
        throw SingularInformation("information matrix numerically singular", step);
    }
    return llt;
}

Eigen::LLT<Matrix> factor_guarded(Matrix& m, EstimatorState& state, const GuardOptions& guard) {
    return factor_guarded(m, state, guard, [](std::size_t) {});
}

// Shared tail of every covariance-form step: rank-one update of the
// forgotten covariance pbar.
void covariance_update(EstimatorState& state, Matrix pbar, const Vector& phi, double y) {
    const Vector pphi = pbar * phi;
    const double denom = 1.0 + phi.dot(pphi);
    if (!(denom > 0.0) || !std::isfinite(denom)) {
        throw SingularInformation("covariance update lost positive definiteness", state.t + 1);
    }
    const double innovation = y - phi.dot(state.theta);
    state.gain = pphi / denom;
    state.theta += state.gain * innovation;
    pbar.noalias() -= state.gain * pphi.transpose();
    symmetrize(pbar);
    state.info = std::move(pbar);
    ++state.t;
}

// Shared tail of every information-form step; r already holds R_t.
template <class OnTrip>
void information_update(EstimatorState& state, Matrix r, const Vector& phi, double y,
                        const GuardOptions& guard, OnTrip&& on_trip) {
    symmetrize(r);
    const Eigen::LLT<Matrix> llt = factor_guarded(r, state, guard, on_trip);
    const double innovation = y - phi.dot(state.theta);
    state.gain = llt.solve(phi);
    state.theta += state.gain * innovation;
    state.info = std::move(r);
    ++state.t;
}

}  // namespace

EstimatorState initial_state(std::size_t p, InfoForm form, double delta) {
    if (p == 0) throw DomainError("estimator dimension must be at least 1");
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw DomainError("initial covariance scale delta must be positive and finite");
    }
    const auto n = static_cast<Eigen::Index>(p);
    EstimatorState state;
    state.theta = Vector::Zero(n);
    state.gain = Vector::Zero(n);
    state.form = form;
    state.info = form == InfoForm::Covariance ? Matrix(delta * Matrix::Identity(n, n))
                                              : Matrix(Matrix::Identity(n, n) / delta);
    return state;
}

double predict(const EstimatorState& state, const Vector& phi) {
    if (phi.size() != state.theta.size()) {
        throw DimensionMismatch("predict: regressor length does not match state");
    }
    return kernels::dot(span_of(phi), span_of(state.theta));
}

EstimatorState step_classic(EstimatorState state, const Vector& phi, double y, double lambda,
                            const GuardOptions& guard) {
    check_dims(state, phi);
    if (!(lambda > 0.0 && lambda <= 1.0)) {
        throw DomainError("forgetting factor " + std::to_string(lambda) + " outside (0, 1]");
    }
    if (state.form == InfoForm::Information) {
        Matrix r(state.info.rows(), state.info.cols());
        kernels::scale_add_outer(lambda, span_of(state.info), span_of(phi), span_of(r));
        information_update(state, std::move(r), phi, y, guard, [](std::size_t) {});
        return state;
    }
    covariance_update(state, state.info / lambda, phi, y);
    return state;
}

EstimatorState step_vector_forgetting(EstimatorState state, const Vector& phi, double y,
                                      std::span<const double> lambda, const GuardOptions&) {
    check_dims(state, phi);
    require_form(state, InfoForm::Covariance, "vector-type forgetting");
    if (lambda.size() != state.dim()) {
        throw DimensionMismatch("vector-type forgetting: factor count does not match p");
    }
    const auto p = static_cast<Eigen::Index>(lambda.size());
    Vector inv_sqrt(p);
    for (Eigen::Index i = 0; i < p; ++i) {
        if (!(lambda[i] > 0.0 && lambda[i] <= 1.0)) {
            throw DomainError("forgetting factor " + std::to_string(lambda[i]) +
                              " outside (0, 1]");
        }
        inv_sqrt[i] = 1.0 / std::sqrt(lambda[i]);
    }
    Matrix pbar = inv_sqrt.asDiagonal() * state.info * inv_sqrt.asDiagonal();
    covariance_update(state, std::move(pbar), phi, y);
    return state;
}

EstimatorState step_multi_r_form(EstimatorState state, const Vector& phi, double y,
                                 const ForgettingMap& map, const GuardOptions& guard) {
    check_dims(state, phi);
    require_form(state, InfoForm::Information, "multi-forgetting R-form");
    if (map.dim() != state.dim()) throw DimensionMismatch("forgetting map dimension mismatch");
    Matrix r;
    map.apply_add_outer(state.info, phi, r);
    const Matrix& prev = state.info;
    information_update(state, std::move(r), phi, y, guard, [&](std::size_t step) {
        check_degeneracy(map.apply(prev), guard, step);
    });
    return state;
}

EstimatorState step_multi_p_form(EstimatorState state, const Vector& phi, double y,
                                 const ForgettingMap& map, const GuardOptions& guard) {
    check_dims(state, phi);
    require_form(state, InfoForm::Covariance, "multi-forgetting P-form");
    if (map.dim() != state.dim()) throw DimensionMismatch("forgetting map dimension mismatch");
    const auto p = state.info.rows();
    const Matrix identity = Matrix::Identity(p, p);

    Matrix cov = state.info;
    const Matrix info = factor_guarded(cov, state, guard).solve(identity);
    Matrix forgotten = map.apply(info);
    symmetrize(forgotten);
    const Matrix forgotten_copy = forgotten;
    Matrix pbar = factor_guarded(forgotten, state, guard, [&](std::size_t step) {
                      check_degeneracy(forgotten_copy, guard, step);
                  }).solve(identity);
    symmetrize(pbar);
    covariance_update(state, std::move(pbar), phi, y);
    return state;
}

Estimator::Estimator(ForgettingSpec spec, std::size_t p, InfoForm form, double delta,
                     GuardOptions guard)
    : spec_(std::move(spec)), guard_(guard) {
    spec_.validate_for(p);
    if (spec_.kind == ForgettingKind::VectorType) form = InfoForm::Covariance;
    if (spec_.kind != ForgettingKind::Scalar && spec_.kind != ForgettingKind::VectorType) {
        map_.emplace(spec_, p);
    }
    state_ = initial_state(p, form, delta);
}

void Estimator::update(const Vector& phi, double y) {
    switch (spec_.kind) {
        case ForgettingKind::Scalar:
            state_ = step_classic(std::move(state_), phi, y, spec_.lambda.front(), guard_);
            return;
        case ForgettingKind::VectorType:
            state_ = step_vector_forgetting(std::move(state_), phi, y, spec_.lambda, guard_);
            return;
        case ForgettingKind::Diagonal:
        case ForgettingKind::TunedCorrelated:
        case ForgettingKind::CubicSpline: break;
    }
    state_ = state_.form == InfoForm::Information
                 ? step_multi_r_form(std::move(state_), phi, y, *map_, guard_)
                 : step_multi_p_form(std::move(state_), phi, y, *map_, guard_);
}

}  // namespace mfrls
