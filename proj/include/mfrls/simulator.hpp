#pragma once

// Synthetic time-varying ARX experiment: A-parameters blend through a chain
// of stable polynomials (fast), B-parameters blend once across the horizon
// (slow), the input is low-pass filtered white noise and the output carries
// additive white Gaussian noise.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mfrls/arx.hpp"
#include "mfrls/polynomial.hpp"
#include "mfrls/rng.hpp"

namespace mfrls {

/// a_polys are monic A^{(j)} = [1, a_1 ... a_n]; b_polys are [b_1 ... b_m].
struct PolynomialBank {
    std::vector<Polynomial> a_polys;
    std::vector<Polynomial> b_polys;

    ModelOrders orders() const;
    /// Throws DomainError when there are fewer than two polynomials of a kind
    /// or the degrees are inconsistent.
    void validate() const;
};

struct BankOptions {
    std::size_t a_count = 9;
    std::size_t b_count = 2;
    double min_root_modulus = 0.3;
    double max_root_modulus = 0.9;
    double min_b_gain = 0.5;
    double max_b_gain = 1.5;
    /// Every blend of adjacent A polynomials must stay below this radius.
    double blend_radius_max = 0.98;
    /// Blend positions probed per adjacent A pair.
    std::size_t blend_checks = 65;
    int max_retries = 100;
};

/// Seed of the shipped default bank.
inline constexpr std::uint64_t kDefaultBankSeed = 20170601;

/// Draws a bank; candidates with an unstable blend are redrawn up to
/// max_retries times, after which DomainError is thrown.
PolynomialBank generate_bank(const ModelOrders& orders, std::uint64_t seed,
                             const BankOptions& options = {});

/// The shipped bank for n = m = 2; other orders derive from kDefaultBankSeed.
PolynomialBank default_bank(const ModelOrders& orders = {});

/// Worst spectral radius over `checks` blend positions of adjacent A pairs.
double max_blend_radius(const PolynomialBank& bank, std::size_t checks);

/// theta along the schedule at normalized time position in [0, 1]: B blends
/// b^(1) -> b^(2) over the whole range, A blends a^(j) -> a^(j+1) on the j-th
/// of (a_count - 1) equal sub-ranges. Blends use the raised-cosine ramp.
Vector scheduled_parameters(const PolynomialBank& bank, double position);

/// (1 - cos(pi s)) / 2
double raised_cosine(double s);

struct ArxTrajectory {
    ModelOrders orders;
    std::vector<Vector> theta;  ///< theta[t-1] is theta_t

    std::size_t size() const noexcept { return theta.size(); }
};

/// Samples the schedule at t = 1..N (position (t-1)/(N-1)) and checks the
/// stability of every A_t.
ArxTrajectory schedule_trajectory(const PolynomialBank& bank, std::size_t horizon);

/// y(t) = phi(t)^T theta_t + e(t), e ~ N(0, sigma2). The first max_lag outputs
/// are standard normal draws from `initial`; noise comes from `noise`.
std::vector<double> simulate_arx(const ArxTrajectory& trajectory, std::span<const double> u,
                                 double sigma2, Rng& noise, Rng& initial);

enum class BankSource { Default, Regenerate };

struct SimulationConfig {
    ModelOrders orders{2, 2};
    std::size_t horizon = 160;
    double sigma2 = 0.01;
    int filter_order = 10;
    double filter_cutoff = 0.5;
    std::size_t filter_warmup = 200;
    BankSource bank_source = BankSource::Default;
    BankOptions bank_options;

    void validate() const;
};

struct Dataset {
    ModelOrders orders;
    std::vector<double> u;
    std::vector<double> y;
    std::optional<ArxTrajectory> trajectory;
    double sigma2 = 0.0;
    std::uint64_t seed = 0;
    int filter_order = 0;
    double filter_cutoff = 0.0;

    std::size_t size() const noexcept { return y.size(); }
};

/// Unit-variance white noise of length warmup + N filtered by the Butterworth
/// low-pass; the first warmup samples are dropped.
std::vector<double> generate_input(const SimulationConfig& config, Rng& rng);

/// Full protocol, deterministic in (config, seed). Sub-streams "bank",
/// "input-noise", "initial-conditions" and "output-noise" are independent.
Dataset generate_dataset(const SimulationConfig& config, std::uint64_t seed);

}  // namespace mfrls
