#include "mfrls/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "mfrls/butterworth.hpp"
#include "mfrls/errors.hpp"

namespace mfrls {
namespace {

Polynomial blend(const Polynomial& a, const Polynomial& b, double w) {
    Polynomial out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = (1.0 - w) * a[k] + w * b[k];
    return out;
}

Polynomial draw_b_polynomial(std::size_t m, Rng& rng, const BankOptions& opt) {
    std::uniform_real_distribution<double> gain(opt.min_b_gain, opt.max_b_gain);
    const double g = gain(rng);
    Polynomial shape{1.0};
    if (m > 1) shape = generate_stable_polynomial(m - 1, opt.max_root_modulus, rng, opt.min_root_modulus);
    Polynomial b(m);
    for (std::size_t k = 0; k < m; ++k) b[k] = g * shape[k];
    return b;
}

PolynomialBank draw_bank(const ModelOrders& orders, Rng& rng, const BankOptions& opt) {
    PolynomialBank bank;
    for (std::size_t j = 0; j < opt.a_count; ++j) {
        bank.a_polys.push_back(orders.n == 0 ? Polynomial{1.0}
                                             : generate_stable_polynomial(orders.n, opt.max_root_modulus,
                                                                          rng, opt.min_root_modulus));
    }
    for (std::size_t k = 0; k < opt.b_count; ++k) {
        bank.b_polys.push_back(orders.m == 0 ? Polynomial{} : draw_b_polynomial(orders.m, rng, opt));
    }
    return bank;
}

}  // namespace

ModelOrders PolynomialBank::orders() const {
    if (a_polys.empty() || b_polys.empty()) throw DomainError("polynomial bank is empty");
    return {a_polys.front().size() - 1, b_polys.front().size()};
}

void PolynomialBank::validate() const {
    if (a_polys.size() < 2 || b_polys.size() < 2) {
        throw DomainError("polynomial bank too small: need at least 2 A and 2 B polynomials, have " +
                          std::to_string(a_polys.size()) + " and " + std::to_string(b_polys.size()));
    }
    const ModelOrders o = orders();
    for (const auto& a : a_polys) {
        if (a.size() != o.n + 1 || a.front() != 1.0) {
            throw DomainError("polynomial bank: A polynomials must be monic of equal degree");
        }
    }
    for (const auto& b : b_polys) {
        if (b.size() != o.m) throw DomainError("polynomial bank: B polynomials must share degree");
    }
    o.validate();
}

PolynomialBank generate_bank(const ModelOrders& orders, std::uint64_t seed,
                             const BankOptions& options) {
    orders.validate();
    if (options.a_count < 2 || options.b_count < 2) {
        throw DomainError("generate_bank: need at least 2 A and 2 B polynomials");
    }
    Rng rng = make_stream(seed, "bank");
    for (int attempt = 0; attempt <= options.max_retries; ++attempt) {
        PolynomialBank bank = draw_bank(orders, rng, options);
        if (max_blend_radius(bank, options.blend_checks) < options.blend_radius_max) return bank;
    }
    throw DomainError("generate_bank: no stable bank after " +
                      std::to_string(options.max_retries) + " retries");
}

double max_blend_radius(const PolynomialBank& bank, std::size_t checks) {
    const std::size_t steps = std::max<std::size_t>(checks, 2);
    double worst = 0.0;
    for (std::size_t j = 0; j + 1 < bank.a_polys.size(); ++j) {
        for (std::size_t k = 0; k < steps; ++k) {
            const double w = static_cast<double>(k) / static_cast<double>(steps - 1);
            worst = std::max(worst, spectral_radius(blend(bank.a_polys[j], bank.a_polys[j + 1], w)));
        }
    }
    return worst;
}

double raised_cosine(double s) { return 0.5 * (1.0 - std::cos(std::numbers::pi * s)); }

Vector scheduled_parameters(const PolynomialBank& bank, double position) {
    bank.validate();
    if (!(position >= 0.0 && position <= 1.0)) {
        throw DomainError("scheduled_parameters: position must lie in [0, 1]");
    }
    const ModelOrders o = bank.orders();
    const std::size_t intervals = bank.a_polys.size() - 1;
    const double x = position * static_cast<double>(intervals);
    const std::size_t j = std::min(static_cast<std::size_t>(x), intervals - 1);
    const double beta = raised_cosine(x - static_cast<double>(j));
    const double alpha = raised_cosine(position);

    const Polynomial& a0 = bank.a_polys[j];
    const Polynomial& a1 = bank.a_polys[j + 1];
    const Polynomial& b0 = bank.b_polys.front();
    const Polynomial& b1 = bank.b_polys[1];

    Vector theta(static_cast<Eigen::Index>(o.p()));
    Eigen::Index k = 0;
    // Endpoints are taken verbatim so the schedule interpolates the bank exactly.
    auto mix = [](double lo, double hi, double w) {
        if (w == 0.0) return lo;
        if (w == 1.0) return hi;
        return (1.0 - w) * lo + w * hi;
    };
    for (std::size_t i = 1; i <= o.n; ++i) theta[k++] = -mix(a0[i], a1[i], beta);
    for (std::size_t i = 0; i < o.m; ++i) theta[k++] = mix(b0[i], b1[i], alpha);
    return theta;
}

ArxTrajectory schedule_trajectory(const PolynomialBank& bank, std::size_t horizon) {
    bank.validate();
    if (horizon < 2) throw DomainError("schedule_trajectory: horizon must be at least 2");
    const ModelOrders o = bank.orders();
    ArxTrajectory traj{o, {}};
    traj.theta.reserve(horizon);
    Polynomial a(o.n + 1);
    a[0] = 1.0;
    for (std::size_t t = 1; t <= horizon; ++t) {
        const double pos = static_cast<double>(t - 1) / static_cast<double>(horizon - 1);
        Vector theta = scheduled_parameters(bank, pos);
        for (std::size_t i = 1; i <= o.n; ++i) a[i] = -theta[static_cast<Eigen::Index>(i - 1)];
        if (spectral_radius(a) >= 1.0) {
            throw DomainError("schedule_trajectory: A_t unstable at t=" + std::to_string(t));
        }
        traj.theta.push_back(std::move(theta));
    }
    return traj;
}

std::vector<double> simulate_arx(const ArxTrajectory& trajectory, std::span<const double> u,
                                 double sigma2, Rng& noise, Rng& initial) {
    if (u.size() != trajectory.size()) {
        throw DimensionMismatch("simulate_arx: input length " + std::to_string(u.size()) +
                                " differs from trajectory length " +
                                std::to_string(trajectory.size()));
    }
    if (!(sigma2 >= 0.0)) throw DomainError("simulate_arx: noise variance must be >= 0");
    const ModelOrders& o = trajectory.orders;
    const std::size_t horizon = trajectory.size();
    const std::size_t lag = std::min(o.max_lag(), horizon);
    std::normal_distribution<double> standard(0.0, 1.0);
    const double sigma = std::sqrt(sigma2);

    std::vector<double> y(horizon, 0.0);
    for (std::size_t t = 1; t <= lag; ++t) y[t - 1] = standard(initial);
    for (std::size_t t = lag + 1; t <= horizon; ++t) {
        const Vector phi = build_regressor(y, u, o, t);
        const double e = standard(noise);
        y[t - 1] = phi.dot(trajectory.theta[t - 1]) + sigma * e;
    }
    return y;
}

void SimulationConfig::validate() const {
    orders.validate();
    if (horizon <= orders.max_lag() + 1) {
        throw DomainError("horizon N must exceed max(n, m) + 1");
    }
    if (!(sigma2 >= 0.0) || !std::isfinite(sigma2)) throw DomainError("sigma2 must be >= 0");
    if (filter_order < 2 || filter_order % 2 != 0) {
        throw DomainError("filter_order must be even and >= 2");
    }
    if (!(filter_cutoff > 0.0 && filter_cutoff < 1.0)) {
        throw DomainError("filter_cutoff must lie in (0, 1)");
    }
}

std::vector<double> generate_input(const SimulationConfig& config, Rng& rng) {
    const SosFilter lowpass = butterworth_lowpass(config.filter_order, config.filter_cutoff);
    std::normal_distribution<double> standard(0.0, 1.0);
    std::vector<double> white(config.filter_warmup + config.horizon);
    for (double& v : white) v = standard(rng);
    std::vector<double> filtered = lowpass.filter(white);
    filtered.erase(filtered.begin(), filtered.begin() + static_cast<std::ptrdiff_t>(config.filter_warmup));
    return filtered;
}

Dataset generate_dataset(const SimulationConfig& config, std::uint64_t seed) {
    config.validate();
    const PolynomialBank bank = config.bank_source == BankSource::Default
                                    ? default_bank(config.orders)
                                    : generate_bank(config.orders, seed, config.bank_options);
    Rng input_rng = make_stream(seed, "input-noise");
    Rng initial_rng = make_stream(seed, "initial-conditions");
    Rng noise_rng = make_stream(seed, "output-noise");

    Dataset ds;
    ds.orders = config.orders;
    ds.sigma2 = config.sigma2;
    ds.seed = seed;
    ds.filter_order = config.filter_order;
    ds.filter_cutoff = config.filter_cutoff;
    ds.trajectory = schedule_trajectory(bank, config.horizon);
    ds.u = generate_input(config, input_rng);
    ds.y = simulate_arx(*ds.trajectory, ds.u, config.sigma2, noise_rng, initial_rng);
    return ds;
}

}  // namespace mfrls
