#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mfrls/errors.hpp"
#include "mfrls/estimator.hpp"
#include "mfrls/simulator.hpp"

namespace mfrls {

/// The five compared identification methods.
enum class Method { RARX, VF, DI, TC, CS };

inline constexpr Method kAllMethods[] = {Method::RARX, Method::VF, Method::DI, Method::TC,
                                         Method::CS};

std::string_view method_name(Method method);
/// Case-insensitive "RARX", "VF", "DI", "TC", "CS".
Method parse_method(std::string_view name);
/// RARX takes one factor; the others take the pair (lambda1, lambda2).
std::size_t method_arity(Method method);

/// [lambda1 x n, lambda2 x m]: lambda1 on the A-parameters, lambda2 on B.
std::vector<double> expand_pair(const ModelOrders& orders, double lambda1, double lambda2);

/// Scheme for a method; lambda2 is ignored for RARX.
ForgettingSpec method_spec(Method method, const ModelOrders& orders, double lambda1,
                           double lambda2);

struct EstimationOptions {
    /// Form used by the Hadamard methods and RARX; VF always runs in covariance form.
    InfoForm form = InfoForm::Information;
    double delta = 100.0;
    GuardOptions guard;
};

/// Per-step output over the window t = first_t ... N.
struct EstimationResult {
    ForgettingSpec scheme;
    std::size_t first_t = 0;
    std::vector<Vector> theta_hat;  ///< thetahat_t
    std::vector<double> y;          ///< y(t)
    std::vector<double> y_pred;     ///< phi(t)^T thetahat_{t-1}
    std::size_t guard_trips = 0;
    bool failed = false;
    std::size_t failure_step = 0;  ///< time index t of the failing update
    std::string failure;
};

/// Runs the estimator for `spec` over the dataset. Estimator errors do not
/// propagate: the result is flagged as failed, truncated at the failing step.
EstimationResult run_estimation(const Dataset& ds, const ForgettingSpec& spec,
                                const EstimationOptions& options = {});

double result_cod(const EstimationResult& result);
/// Empty when the dataset carries no ground truth.
std::optional<double> result_atf(const EstimationResult& result, const Dataset& ds);

/// `points` evenly spaced values on [lo, hi], endpoints included.
std::vector<double> even_grid(std::size_t points = 20, double lo = 0.1, double hi = 1.0);

struct GridResult {
    double lambda1 = 0.0;
    double lambda2 = 0.0;  ///< equals lambda1 for RARX
    double cod = 0.0;
    double atf = 0.0;  ///< NaN without ground truth
    std::size_t evaluated = 0;
    std::size_t failed_points = 0;
};

/// Every grid point failed in a grid search.
class SearchFailed : public Error {
public:
    using Error::Error;
};

/// Exhaustive COD-maximizing search: 1-D for RARX, full 2-D otherwise.
/// Ties go to the larger lambda1, then the larger lambda2. Failed points
/// score -inf; SearchFailed when all of them fail.
GridResult grid_search(const Dataset& ds, Method method, std::span<const double> grid,
                       const EstimationOptions& options = {});

struct StudyConfig {
    SimulationConfig simulation;
    std::vector<double> grid = even_grid();
    std::size_t runs = 50;
    std::uint64_t master_seed = 1;
    std::vector<Method> methods{std::begin(kAllMethods), std::end(kAllMethods)};
    std::size_t jobs = 1;
    EstimationOptions estimation;

    void validate() const;
};

struct StudyRecord {
    std::size_t run = 0;
    Method method = Method::RARX;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double cod = 0.0;
    double atf = 0.0;
    bool failed = false;
};

/// Five-number summary, linear-interpolation quartiles.
struct Quartiles {
    double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
};
Quartiles quartiles(std::vector<double> values);

struct MethodSummary {
    Method method = Method::RARX;
    std::size_t records = 0;
    std::size_t failures = 0;
    Quartiles lambda1, lambda2, cod, atf;
    double mean_cod = 0.0;
    double mean_atf = 0.0;
};

struct StudyReport {
    StudyConfig config;
    std::vector<StudyRecord> records;  ///< sorted by (run, method order in config)
    std::vector<MethodSummary> summary;
    std::vector<std::uint64_t> run_seeds;

    const MethodSummary& summary_for(Method method) const;
};

std::uint64_t run_seed(std::uint64_t master_seed, std::size_t run);

/// Summary over the successful records of each method.
std::vector<MethodSummary> summarize(std::span<const StudyRecord> records,
                                     std::span<const Method> methods);

/// Called once per run, in run order, with that run's records.
using RunSink = std::function<void(std::span<const StudyRecord>)>;

/// Monte-Carlo study. Each run draws a fresh dataset from run_seed(master, run)
/// and grid-searches every method. Runs execute on `jobs` threads; results do
/// not depend on the thread count.
StudyReport monte_carlo(const StudyConfig& config, const RunSink& sink = {});

}  // namespace mfrls
