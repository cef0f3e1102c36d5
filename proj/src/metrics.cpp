#include "mfrls/metrics.hpp"

#include <string>

#include "mfrls/errors.hpp"

namespace mfrls {

double cod(std::span<const double> y, std::span<const double> y_pred) {
    if (y.size() != y_pred.size()) {
        throw DimensionMismatch("cod: " + std::to_string(y.size()) + " observations vs " +
                                std::to_string(y_pred.size()) + " predictions");
    }
    if (y.size() < 2) throw DegenerateMetric("cod: need at least two samples");
    double mean = 0.0;
    for (const double v : y) mean += v;
    mean /= static_cast<double>(y.size());
    double ss_res = 0.0;
    double ss_tot = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double r = y[i] - y_pred[i];
        const double d = y[i] - mean;
        ss_res += r * r;
        ss_tot += d * d;
    }
    if (!(ss_tot > 0.0)) throw DegenerateMetric("cod: output is constant");
    return (1.0 - ss_res / ss_tot) * 100.0;
}

double atf(std::span<const Vector> theta_hat, std::span<const Vector> theta_true) {
    if (theta_hat.size() != theta_true.size()) {
        throw DimensionMismatch("atf: sequence lengths differ");
    }
    if (theta_hat.empty()) throw DegenerateMetric("atf: empty sequences");
    double sum = 0.0;
    for (std::size_t t = 0; t < theta_hat.size(); ++t) {
        const double norm = theta_true[t].norm();
        if (!(norm > 0.0)) {
            throw DegenerateMetric("atf: true parameter vector has zero norm at index " +
                                   std::to_string(t));
        }
        sum += (theta_hat[t] - theta_true[t]).norm() / norm;
    }
    return (1.0 - sum / static_cast<double>(theta_hat.size())) * 100.0;
}

}  // namespace mfrls
