#pragma once

// Shared helpers for the unit tests: seeded random vectors and weights.

#include "owl/norms.hpp"

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

namespace testing {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform(double lo = 0.0, double hi = 1.0) { return boost::random::uniform_real_distribution<double>(lo, hi)(gen_); }
    double normal() { return boost::random::normal_distribution<double>(0.0, 1.0)(gen_); }
    long integer(long lo, long hi) { return boost::random::uniform_int_distribution<long>(lo, hi)(gen_); }

    Eigen::VectorXd gaussian(Eigen::Index n, double scale = 1.0)
    {
        Eigen::VectorXd v(n);
        for (Eigen::Index i = 0; i < n; ++i) v[i] = scale * normal();
        return v;
    }

    Eigen::MatrixXd gaussian_matrix(Eigen::Index m, Eigen::Index n)
    {
        Eigen::MatrixXd a(m, n);
        for (Eigen::Index i = 0; i < m; ++i)
            for (Eigen::Index j = 0; j < n; ++j) a(i, j) = normal();
        return a;
    }

    /// Non-increasing non-negative weights with w_1 > 0. Mixes in exact
    /// ties and trailing zeros now and then.
    Eigen::VectorXd weights(Eigen::Index n)
    {
        std::vector<double> w(static_cast<std::size_t>(n));
        for (double& x : w) x = uniform(0.0, 2.0);
        const long mode = integer(0, 5);
        if (mode == 0) std::fill(w.begin(), w.end(), w[0]);
        if (mode == 1) for (std::size_t i = 0; i < w.size(); i += 2) w[i] = 0.5;
        if (mode == 2) for (std::size_t i = w.size() / 2; i < w.size(); ++i) w[i] = 0.0;
        std::sort(w.begin(), w.end(), std::greater<>());
        if (w[0] <= 0.0) w[0] = 1.0;
        return Eigen::Map<Eigen::VectorXd>(w.data(), n);
    }

    owl::WeightVector<double> weight_vector(Eigen::Index n) { return owl::WeightVector<double>(weights(n)); }

    std::vector<Eigen::Index> permutation(Eigen::Index n)
    {
        std::vector<Eigen::Index> p(static_cast<std::size_t>(n));
        std::iota(p.begin(), p.end(), Eigen::Index{0});
        for (std::size_t i = p.size(); i > 1; --i) std::swap(p[i - 1], p[static_cast<std::size_t>(integer(0, static_cast<long>(i) - 1))]);
        return p;
    }

    std::uint64_t bits() { return gen_(); }

private:
    boost::random::mt19937_64 gen_;
};

/// Applies x -> D P x for a random sign flip D and permutation P.
struct SignedPermutation {
    std::vector<Eigen::Index> perm;
    Eigen::VectorXd signs;

    SignedPermutation(Rng& rng, Eigen::Index n) : perm(rng.permutation(n)), signs(n)
    {
        for (Eigen::Index i = 0; i < n; ++i) signs[i] = rng.integer(0, 1) ? 1.0 : -1.0;
    }

    Eigen::VectorXd operator()(const Eigen::VectorXd& x) const
    {
        Eigen::VectorXd y(x.size());
        for (Eigen::Index i = 0; i < x.size(); ++i) y[i] = signs[i] * x[perm[static_cast<std::size_t>(i)]];
        return y;
    }
};

inline bool is_monotone_nonneg(const Eigen::VectorXd& x)
{
    for (Eigen::Index i = 0; i + 1 < x.size(); ++i)
        if (x[i] < x[i + 1]) return false;
    return x.size() == 0 || x[x.size() - 1] >= 0.0;
}

} // namespace testing
