#pragma once

// Synthetic regression instances: correlated or i.i.d. Gaussian designs,
// the block-structured ground truth, and noisy observations.
//
// Randomness: boost::random::mt19937_64 seeded with the 64-bit seed, and
// boost::random::normal_distribution (ziggurat) for Gaussian variates.
// Both are specified bit-for-bit by Boost, so a seed reproduces the same
// data on every platform.

#include "owl/types.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <string_view>

namespace owl::bench {

enum class DesignKind { Correlated, Gaussian };

std::string_view to_string(DesignKind k);
DesignKind parse_design_kind(std::string_view s);

struct SyntheticSpec {
    /// Ground-truth scale d: n = 1000 d unless `columns` is set.
    Index scale = 1;
    /// Explicit column count (must be a multiple of 20); 0 means 1000 * scale.
    Index columns = 0;
    /// Row count; 0 means square.
    Index rows = 0;
    double rho = 0.7;
    DesignKind kind = DesignKind::Correlated;
    double noise_variance = 0.01;
    std::uint64_t seed = 1;

    Index n() const { return columns > 0 ? columns : 1000 * scale; }
    Index m() const { return rows > 0 ? rows : n(); }
    void validate() const;
};

/// Designs wider than this use the column AR(1) recurrence instead of a Cholesky factor.
inline constexpr Index kCholeskyMaxColumns = 4000;

/// Correlated: rows ~ N(0, Sigma) with Sigma_ij = rho^|i-j|, then each column
/// centered and scaled to unit sample standard deviation (m - 1 denominator).
/// Gaussian: i.i.d. standard normal entries, no standardization.
Eigen::MatrixXd gen_design(const SyntheticSpec& spec);

/// Same as gen_design for the correlated kind but always via the AR(1) recurrence.
Eigen::MatrixXd gen_design_ar1(const SyntheticSpec& spec);

/// Blocks (150, 50, 250, 50, 250, 50, 200) * d with values (0, 3, 0, -4, 0, 6, 0).
Eigen::VectorXd gen_ground_truth(Index d);

/// The same block pattern scaled to length n (n a multiple of 20).
Eigen::VectorXd gen_ground_truth_length(Index n);

/// y = H x_true + noise, noise i.i.d. N(0, variance).
Eigen::VectorXd gen_observations(const Eigen::MatrixXd& h, const Eigen::VectorXd& x_true, double variance,
                                 std::uint64_t seed);

/// ||x - x_true||^2 / n.
double mse(const Eigen::VectorXd& x, const Eigen::VectorXd& x_true);

/// Seed used for the observation noise of an instance generated with `seed`.
std::uint64_t noise_seed(std::uint64_t seed);

struct SyntheticData {
    SyntheticSpec spec;
    Eigen::MatrixXd h;
    Eigen::VectorXd y;
    Eigen::VectorXd x_true;
};

SyntheticData generate(const SyntheticSpec& spec);

} // namespace owl::bench
