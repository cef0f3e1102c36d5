#pragma once

// Recursive least-squares estimators for ARX models.
//
// Every step is a pure function (state, sample) -> state. Three families:
//   * classic single-factor RLS, in information (R) or covariance (P) form;
//   * vector-type forgetting, which rescales the covariance by Lambda^{-1/2};
//   * multiple forgetting through a Hadamard map, R_t = F(R_{t-1}) + phi phi^T,
//     again in either form.
// All three solve, at each step, the regularized problem
//   min (y - phi^T theta)^2 + ||theta - theta_prev||^2_W
// with W the forgotten information matrix.

#include <cstddef>
#include <optional>
#include <span>

#include "mfrls/arx.hpp"
#include "mfrls/forgetting.hpp"

namespace mfrls {

enum class InfoForm {
    Information,  ///< info holds R_t
    Covariance,   ///< info holds P_t = R_t^{-1}
};

/// Guard applied to every inversion of an information or covariance matrix.
struct GuardOptions {
    /// Reciprocal condition estimate below which the guard trips.
    double rcond_min = 1e-12;
    /// Jitter added to the diagonal on a trip, relative to trace / p.
    double jitter_rel = 1e-10;
    /// A forgotten matrix with min eigenvalue below -tol * max|entry| is degenerate.
    double degeneracy_tol = 1e-10;
};

struct EstimatorState {
    Vector theta;  ///< current estimate
    Matrix info;   ///< R_t or P_t, see form
    InfoForm form = InfoForm::Information;
    Vector gain;   ///< K_t of the last step (zero before the first step)
    std::size_t t = 0;            ///< number of updates applied
    std::size_t guard_trips = 0;  ///< inversions that needed jitter

    std::size_t dim() const noexcept { return static_cast<std::size_t>(theta.size()); }
};

/// theta_0 = 0, P_0 = delta I (equivalently R_0 = I / delta).
EstimatorState initial_state(std::size_t p, InfoForm form, double delta = 100.0);

/// One-step-ahead prediction phi^T theta.
double predict(const EstimatorState& state, const Vector& phi);

/// Classic RLS with one factor lambda in (0, 1]; works in either form.
EstimatorState step_classic(EstimatorState state, const Vector& phi, double y, double lambda,
                            const GuardOptions& guard = {});

/// Vector-type forgetting. The covariance is rescaled by Lambda^{-1/2} before
/// the rank-one update, so Lambda = lambda I reproduces step_classic(lambda).
/// Requires the covariance form.
EstimatorState step_vector_forgetting(EstimatorState state, const Vector& phi, double y,
                                      std::span<const double> lambda,
                                      const GuardOptions& guard = {});

/// Multiple forgetting in information form: R_t = F(R_{t-1}) + phi phi^T,
/// K_t = R_t^{-1} phi.
EstimatorState step_multi_r_form(EstimatorState state, const Vector& phi, double y,
                                 const ForgettingMap& map, const GuardOptions& guard = {});

/// Multiple forgetting in covariance form: Pbar = F(P_{t-1}^{-1})^{-1},
/// K_t = Pbar phi / (1 + phi^T Pbar phi), P_t = (I - K_t phi^T) Pbar.
EstimatorState step_multi_p_form(EstimatorState state, const Vector& phi, double y,
                                 const ForgettingMap& map, const GuardOptions& guard = {});

/// Binds a forgetting scheme to a running state and routes each sample to the
/// matching step function. Scalar specs use step_classic, VectorType uses
/// step_vector_forgetting (always covariance form), the Hadamard kinds use
/// the multi-forgetting step of the requested form.
class Estimator {
public:
    Estimator(ForgettingSpec spec, std::size_t p, InfoForm form = InfoForm::Information,
              double delta = 100.0, GuardOptions guard = {});

    void update(const Vector& phi, double y);
    double predict(const Vector& phi) const { return mfrls::predict(state_, phi); }

    const EstimatorState& state() const noexcept { return state_; }
    const ForgettingSpec& spec() const noexcept { return spec_; }

private:
    ForgettingSpec spec_;
    std::optional<ForgettingMap> map_;
    EstimatorState state_;
    GuardOptions guard_;
};

}  // namespace mfrls
