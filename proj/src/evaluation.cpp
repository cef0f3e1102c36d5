#include "mfrls/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include "mfrls/metrics.hpp"

namespace mfrls {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct WindowOutcome {
    bool failed = false;
    std::size_t failure_step = 0;
    std::string failure;
    std::size_t guard_trips = 0;
};

// Runs the estimator over t = max_lag+1 ... N, calling
// on_step(t, y_pred, theta_hat) after each update.
template <class OnStep>
WindowOutcome estimate_window(const Dataset& ds, const ForgettingSpec& spec,
                              const EstimationOptions& options, OnStep&& on_step) {
    const ModelOrders& o = ds.orders;
    WindowOutcome outcome;
    std::size_t t = o.max_lag() + 1;
    try {
        Estimator est(spec, o.p(), options.form, options.delta, options.guard);
        for (; t <= ds.size(); ++t) {
            const Vector phi = build_regressor(ds.y, ds.u, o, t);
            const double y_pred = est.predict(phi);
            est.update(phi, ds.y[t - 1]);
            outcome.guard_trips = est.state().guard_trips;
            on_step(t, y_pred, est.state().theta);
        }
    } catch (const Error& e) {
        outcome.failed = true;
        outcome.failure_step = t;
        outcome.failure = e.what();
    }
    return outcome;
}

struct WindowStats {
    double mean = 0.0;
    double ss_tot = 0.0;
};

WindowStats window_stats(const Dataset& ds) {
    const std::size_t first = ds.orders.max_lag() + 1;
    WindowStats s;
    const std::size_t count = ds.size() - first + 1;
    for (std::size_t t = first; t <= ds.size(); ++t) s.mean += ds.y[t - 1];
    s.mean /= static_cast<double>(count);
    for (std::size_t t = first; t <= ds.size(); ++t) {
        const double d = ds.y[t - 1] - s.mean;
        s.ss_tot += d * d;
    }
    return s;
}

struct PointScore {
    bool failed = true;
    double cod = -std::numeric_limits<double>::infinity();
    double atf = kNaN;
};

PointScore score_point(const Dataset& ds, const ForgettingSpec& spec,
                       const EstimationOptions& options, const WindowStats& stats) {
    double ss_res = 0.0;
    double track = 0.0;
    std::size_t steps = 0;
    const bool has_truth = ds.trajectory.has_value();
    const WindowOutcome outcome =
        estimate_window(ds, spec, options, [&](std::size_t t, double y_pred, const Vector& theta) {
            const double r = ds.y[t - 1] - y_pred;
            ss_res += r * r;
            if (has_truth) {
                const Vector& truth = ds.trajectory->theta[t - 1];
                track += (theta - truth).norm() / truth.norm();
            }
            ++steps;
        });
    PointScore score;
    if (outcome.failed || !(stats.ss_tot > 0.0)) return score;
    const double c = (1.0 - ss_res / stats.ss_tot) * 100.0;
    if (!std::isfinite(c)) return score;
    score.failed = false;
    score.cod = c;
    if (has_truth) score.atf = (1.0 - track / static_cast<double>(steps)) * 100.0;
    return score;
}

double interpolate_sorted(const std::vector<double>& v, double q) {
    const double pos = q * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return v[lo] + frac * (v[hi] - v[lo]);
}

}  // namespace

std::string_view method_name(Method method) {
    switch (method) {
        case Method::RARX: return "RARX";
        case Method::VF: return "VF";
        case Method::DI: return "DI";
        case Method::TC: return "TC";
        case Method::CS: return "CS";
    }
    return "?";
}

Method parse_method(std::string_view name) {
    std::string upper(name);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    for (const Method m : kAllMethods) {
        if (method_name(m) == upper) return m;
    }
    throw DomainError("unknown method '" + std::string(name) + "' (expected RARX, VF, DI, TC or CS)");
}

std::size_t method_arity(Method method) { return method == Method::RARX ? 1 : 2; }

std::vector<double> expand_pair(const ModelOrders& orders, double lambda1, double lambda2) {
    std::vector<double> out(orders.n, lambda1);
    out.insert(out.end(), orders.m, lambda2);
    return out;
}

ForgettingSpec method_spec(Method method, const ModelOrders& orders, double lambda1,
                           double lambda2) {
    switch (method) {
        case Method::RARX: return ForgettingSpec::scalar(lambda1);
        case Method::VF:
            return ForgettingSpec::make(ForgettingKind::VectorType,
                                        expand_pair(orders, lambda1, lambda2));
        case Method::DI:
            return ForgettingSpec::make(ForgettingKind::Diagonal,
                                        expand_pair(orders, lambda1, lambda2));
        case Method::TC:
            return ForgettingSpec::make(ForgettingKind::TunedCorrelated,
                                        expand_pair(orders, lambda1, lambda2));
        case Method::CS:
            return ForgettingSpec::make(ForgettingKind::CubicSpline,
                                        expand_pair(orders, lambda1, lambda2));
    }
    throw DomainError("unknown method");
}

EstimationResult run_estimation(const Dataset& ds, const ForgettingSpec& spec,
                                const EstimationOptions& options) {
    spec.validate_for(ds.orders.p());
    if (ds.u.size() != ds.y.size()) throw DimensionMismatch("dataset: u and y lengths differ");
    EstimationResult result;
    result.scheme = spec;
    result.first_t = ds.orders.max_lag() + 1;
    const WindowOutcome outcome =
        estimate_window(ds, spec, options, [&](std::size_t t, double y_pred, const Vector& theta) {
            result.theta_hat.push_back(theta);
            result.y.push_back(ds.y[t - 1]);
            result.y_pred.push_back(y_pred);
        });
    result.failed = outcome.failed;
    result.failure_step = outcome.failure_step;
    result.failure = outcome.failure;
    result.guard_trips = outcome.guard_trips;
    return result;
}

double result_cod(const EstimationResult& result) { return cod(result.y, result.y_pred); }

std::optional<double> result_atf(const EstimationResult& result, const Dataset& ds) {
    if (!ds.trajectory) return std::nullopt;
    const auto begin = ds.trajectory->theta.begin() + static_cast<std::ptrdiff_t>(result.first_t - 1);
    const std::vector<Vector> truth(begin, begin + static_cast<std::ptrdiff_t>(result.theta_hat.size()));
    return atf(result.theta_hat, truth);
}

std::vector<double> even_grid(std::size_t points, double lo, double hi) {
    if (points == 0) throw DomainError("grid needs at least one point");
    if (points == 1) return {hi};
    std::vector<double> g(points);
    const double step = (hi - lo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) g[i] = lo + step * static_cast<double>(i);
    g.back() = hi;
    return g;
}

GridResult grid_search(const Dataset& ds, Method method, std::span<const double> grid,
                       const EstimationOptions& options) {
    if (grid.empty()) throw DomainError("grid_search: empty grid");
    for (const double v : grid) {
        if (!(v > 0.0 && v <= 1.0)) throw DomainError("grid_search: grid values must lie in (0, 1]");
    }
    std::vector<double> sorted(grid.begin(), grid.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    const WindowStats stats = window_stats(ds);
    GridResult best;
    bool found = false;
    double best_cod = -std::numeric_limits<double>::infinity();
    auto consider = [&](double l1, double l2) {
        const PointScore s = score_point(ds, method_spec(method, ds.orders, l1, l2), options, stats);
        ++best.evaluated;
        if (s.failed) {
            ++best.failed_points;
            return;
        }
        // Descending iteration plus strict improvement keeps the larger factors on ties.
        if (!found || s.cod > best_cod) {
            found = true;
            best_cod = s.cod;
            best.lambda1 = l1;
            best.lambda2 = l2;
            best.cod = s.cod;
            best.atf = s.atf;
        }
    };
    if (method == Method::RARX) {
        for (const double l : sorted) consider(l, l);
    } else {
        for (const double l1 : sorted) {
            for (const double l2 : sorted) consider(l1, l2);
        }
    }
    if (!found) {
        throw SearchFailed(std::string("grid search for ") + std::string(method_name(method)) +
                           ": all " + std::to_string(best.evaluated) + " grid points failed");
    }
    return best;
}

void StudyConfig::validate() const {
    simulation.validate();
    if (runs == 0) throw DomainError("runs must be at least 1");
    if (grid.empty()) throw DomainError("grid must not be empty");
    for (const double v : grid) {
        if (!(v > 0.0 && v <= 1.0)) throw DomainError("grid values must lie in (0, 1]");
    }
    if (methods.empty()) throw DomainError("method list must not be empty");
    if (jobs == 0) throw DomainError("jobs must be at least 1");
}

Quartiles quartiles(std::vector<double> values) {
    Quartiles q;
    if (values.empty()) {
        q.min = q.q1 = q.median = q.q3 = q.max = kNaN;
        return q;
    }
    std::sort(values.begin(), values.end());
    q.min = values.front();
    q.max = values.back();
    q.q1 = interpolate_sorted(values, 0.25);
    q.median = interpolate_sorted(values, 0.5);
    q.q3 = interpolate_sorted(values, 0.75);
    return q;
}

const MethodSummary& StudyReport::summary_for(Method method) const {
    for (const auto& s : summary) {
        if (s.method == method) return s;
    }
    throw DomainError("study report has no summary for " + std::string(method_name(method)));
}

std::uint64_t run_seed(std::uint64_t master_seed, std::size_t run) {
    return derive_seed(master_seed, run);
}

std::vector<MethodSummary> summarize(std::span<const StudyRecord> records,
                                     std::span<const Method> methods) {
    std::vector<MethodSummary> out;
    for (const Method m : methods) {
        MethodSummary s;
        s.method = m;
        std::vector<double> l1, l2, c, a;
        for (const auto& r : records) {
            if (r.method != m) continue;
            ++s.records;
            if (r.failed) {
                ++s.failures;
                continue;
            }
            l1.push_back(r.lambda1);
            l2.push_back(r.lambda2);
            c.push_back(r.cod);
            a.push_back(r.atf);
        }
        auto mean = [](const std::vector<double>& v) {
            if (v.empty()) return kNaN;
            double sum = 0.0;
            for (const double x : v) sum += x;
            return sum / static_cast<double>(v.size());
        };
        s.mean_cod = mean(c);
        s.mean_atf = mean(a);
        s.lambda1 = quartiles(std::move(l1));
        s.lambda2 = quartiles(std::move(l2));
        s.cod = quartiles(std::move(c));
        s.atf = quartiles(std::move(a));
        out.push_back(s);
    }
    return out;
}

namespace {

std::vector<StudyRecord> execute_run(const StudyConfig& config, std::size_t run) {
    std::vector<StudyRecord> records;
    records.reserve(config.methods.size());
    std::optional<Dataset> ds;
    try {
        ds = generate_dataset(config.simulation, run_seed(config.master_seed, run));
    } catch (const Error&) {
        ds.reset();
    }
    for (const Method m : config.methods) {
        StudyRecord rec;
        rec.run = run;
        rec.method = m;
        if (!ds) {
            rec.failed = true;
            rec.lambda1 = rec.lambda2 = rec.cod = rec.atf = kNaN;
            records.push_back(rec);
            continue;
        }
        try {
            const GridResult g = grid_search(*ds, m, config.grid, config.estimation);
            rec.lambda1 = g.lambda1;
            rec.lambda2 = g.lambda2;
            rec.cod = g.cod;
            rec.atf = g.atf;
        } catch (const Error&) {
            rec.failed = true;
            rec.lambda1 = rec.lambda2 = rec.cod = rec.atf = kNaN;
        }
        records.push_back(rec);
    }
    return records;
}

}  // namespace

StudyReport monte_carlo(const StudyConfig& config, const RunSink& sink) {
    config.validate();
    StudyReport report;
    report.config = config;
    report.run_seeds.resize(config.runs);
    for (std::size_t r = 0; r < config.runs; ++r) report.run_seeds[r] = run_seed(config.master_seed, r);

    std::vector<std::optional<std::vector<StudyRecord>>> done(config.runs);
    std::size_t flushed = 0;
    std::mutex mu;
    std::atomic<std::size_t> next{0};

    // Completed runs are handed to the sink strictly in run order.
    auto worker = [&] {
        for (;;) {
            const std::size_t run = next.fetch_add(1);
            if (run >= config.runs) return;
            std::vector<StudyRecord> recs = execute_run(config, run);
            const std::lock_guard<std::mutex> lock(mu);
            done[run] = std::move(recs);
            while (flushed < config.runs && done[flushed]) {
                if (sink) sink(*done[flushed]);
                ++flushed;
            }
        }
    };
    const std::size_t threads = std::min(config.jobs, config.runs);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    for (auto& recs : done) {
        report.records.insert(report.records.end(), recs->begin(), recs->end());
    }
    report.summary = summarize(report.records, config.methods);
    return report;
}

}  // namespace mfrls
