#include "owl/bench/synthetic.hpp"

#include "owl/error.hpp"

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>

#include <array>
#include <cmath>

namespace owl::bench {

std::string_view to_string(DesignKind k)
{
    return k == DesignKind::Correlated ? "correlated" : "gaussian";
}

DesignKind parse_design_kind(std::string_view s)
{
    if (s == "correlated") return DesignKind::Correlated;
    if (s == "gaussian" || s == "standard-gaussian") return DesignKind::Gaussian;
    throw InvalidArgument("unknown design kind '" + std::string(s) + "'");
}

void SyntheticSpec::validate() const
{
    detail::require(scale >= 1, "SyntheticSpec: scale must be >= 1");
    detail::require(columns >= 0 && rows >= 0, "SyntheticSpec: dimensions must be positive");
    detail::require(n() % 20 == 0, "SyntheticSpec: column count must be a multiple of 20");
    detail::require(rho >= 0.0 && rho < 1.0, "SyntheticSpec: rho must lie in [0, 1)");
    detail::require(noise_variance >= 0.0 && std::isfinite(noise_variance), "SyntheticSpec: noise variance must be >= 0");
    if (kind == DesignKind::Correlated) detail::require(m() >= 2, "SyntheticSpec: centering needs at least 2 rows");
}

namespace {

using Engine = boost::random::mt19937_64;
using Normal = boost::random::normal_distribution<double>;

void standardize_columns(Eigen::MatrixXd& h)
{
    const double m = static_cast<double>(h.rows());
    for (Index j = 0; j < h.cols(); ++j) {
        auto col = h.col(j);
        col.array() -= col.mean();
        const double sd = std::sqrt(col.squaredNorm() / (m - 1.0));
        if (sd > 0.0) col /= sd;
    }
}

Eigen::MatrixXd standard_normal(Index m, Index n, std::uint64_t seed)
{
    Engine gen(seed);
    Normal normal(0.0, 1.0);
    Eigen::MatrixXd z(m, n);
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < n; ++j) z(i, j) = normal(gen);
    return z;
}

Eigen::MatrixXd correlated_cholesky(const SyntheticSpec& spec)
{
    const Index n = spec.n();
    Eigen::MatrixXd cov(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) cov(i, j) = std::pow(spec.rho, static_cast<double>(std::abs(i - j)));
    const Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success) throw NumericalError("gen_design: covariance factorization failed");
    const Eigen::MatrixXd z = standard_normal(spec.m(), n, spec.seed);
    // Each row is L z_i with Sigma = L L'.
    return z * llt.matrixL().transpose();
}

Eigen::MatrixXd correlated_ar1(const SyntheticSpec& spec)
{
    const Index n = spec.n();
    const double c = std::sqrt(1.0 - spec.rho * spec.rho);
    Eigen::MatrixXd h = standard_normal(spec.m(), n, spec.seed);
    for (Index i = 0; i < h.rows(); ++i)
        for (Index j = 1; j < n; ++j) h(i, j) = spec.rho * h(i, j - 1) + c * h(i, j);
    return h;
}

} // namespace

Eigen::MatrixXd gen_design(const SyntheticSpec& spec)
{
    spec.validate();
    if (spec.kind == DesignKind::Gaussian) return standard_normal(spec.m(), spec.n(), spec.seed);
    Eigen::MatrixXd h = spec.n() <= kCholeskyMaxColumns ? correlated_cholesky(spec) : correlated_ar1(spec);
    standardize_columns(h);
    return h;
}

Eigen::MatrixXd gen_design_ar1(const SyntheticSpec& spec)
{
    spec.validate();
    detail::require(spec.kind == DesignKind::Correlated, "gen_design_ar1: correlated designs only");
    Eigen::MatrixXd h = correlated_ar1(spec);
    standardize_columns(h);
    return h;
}

Eigen::VectorXd gen_ground_truth_length(Index n)
{
    detail::require(n >= 20 && n % 20 == 0, "gen_ground_truth: length must be a positive multiple of 20");
    // Block lengths in units of n / 20.
    constexpr std::array<Index, 7> units{3, 1, 5, 1, 5, 1, 4};
    constexpr std::array<double, 7> values{0.0, 3.0, 0.0, -4.0, 0.0, 6.0, 0.0};
    const Index unit = n / 20;
    Eigen::VectorXd x(n);
    Index at = 0;
    for (std::size_t b = 0; b < units.size(); ++b) {
        x.segment(at, units[b] * unit).setConstant(values[b]);
        at += units[b] * unit;
    }
    return x;
}

Eigen::VectorXd gen_ground_truth(Index d)
{
    detail::require(d >= 1, "gen_ground_truth: d must be >= 1");
    return gen_ground_truth_length(1000 * d);
}

Eigen::VectorXd gen_observations(const Eigen::MatrixXd& h, const Eigen::VectorXd& x_true, double variance,
                                 std::uint64_t seed)
{
    detail::require_same_size(h.cols(), x_true.size(), "gen_observations");
    detail::require(variance >= 0.0, "gen_observations: variance must be >= 0");
    Eigen::VectorXd y = h * x_true;
    if (variance == 0.0) return y;
    Engine gen(seed);
    Normal normal(0.0, std::sqrt(variance));
    for (Index i = 0; i < y.size(); ++i) y[i] += normal(gen);
    return y;
}

double mse(const Eigen::VectorXd& x, const Eigen::VectorXd& x_true)
{
    detail::require_same_size(x.size(), x_true.size(), "mse");
    detail::require(x.size() > 0, "mse: empty vectors");
    return (x - x_true).squaredNorm() / static_cast<double>(x.size());
}

std::uint64_t noise_seed(std::uint64_t seed)
{
    return seed ^ 0x9E3779B97F4A7C15ULL;
}

SyntheticData generate(const SyntheticSpec& spec)
{
    SyntheticData data;
    data.spec = spec;
    data.h = gen_design(spec);
    data.x_true = gen_ground_truth_length(spec.n());
    data.y = gen_observations(data.h, data.x_true, spec.noise_variance, noise_seed(spec.seed));
    return data;
}

} // namespace owl::bench
