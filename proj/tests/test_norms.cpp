#include "oracles/oracles.hpp"
#include "support.hpp"

#include "owl/norms.hpp"

#include <doctest.h>

#include <limits>

using owl::WeightVector;
using Eigen::VectorXd;

namespace {
VectorXd vec(std::initializer_list<double> xs)
{
    VectorXd v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}
WeightVector<double> weights(std::initializer_list<double> xs) { return WeightVector<double>(vec(xs)); }
} // namespace

TEST_CASE("weight vector validation")
{
    CHECK_NOTHROW(weights({2, 2, 0}));
    CHECK_THROWS_AS(weights({1, 2}), owl::InvalidArgument);
    CHECK_THROWS_AS(weights({0, 0}), owl::InvalidArgument);
    CHECK_THROWS_AS(weights({1, -1}), owl::InvalidArgument);
    CHECK_THROWS_AS(weights({std::numeric_limits<double>::quiet_NaN()}), owl::InvalidArgument);
    CHECK_THROWS_AS(WeightVector<double>{VectorXd()}, owl::InvalidArgument);
    // monotonicity is checked exactly
    CHECK_THROWS_AS(weights({1.0, 1.0 + 1e-16 * 4}), owl::InvalidArgument);

    const auto w = weights({3, 2, 1});
    CHECK(w.prefix_sums() == vec({3, 5, 6}));
    CHECK(w.mean() == doctest::Approx(2.0));
    CHECK(w.tau(2) == doctest::Approx(0.2));
}

TEST_CASE("oscar weights")
{
    CHECK(owl::oscar_weights<double>({1, 0}, 3).values() == vec({1, 1, 1}));
    const auto w = owl::oscar_weights<double>({1e-6, 2e-6}, 3).values();
    CHECK(w[0] == doctest::Approx(5e-6).epsilon(1e-14));
    CHECK(w[1] == doctest::Approx(3e-6).epsilon(1e-14));
    CHECK(w[2] == doctest::Approx(1e-6).epsilon(1e-14));
    CHECK(owl::oscar_weights<double>({0, 1}, 2).values() == vec({1, 0}));
    CHECK_THROWS_AS(owl::oscar_weights<double>({0, 0}, 2), owl::InvalidArgument);
    CHECK_THROWS_AS(owl::oscar_weights<double>({-1, 1}, 2), owl::InvalidArgument);
}

TEST_CASE("decompose")
{
    auto d = owl::decompose(vec({0, 0, 0}));
    CHECK(d.signs.cast<int>() == Eigen::Vector3i(0, 0, 0));
    CHECK(d.sorted_abs == vec({0, 0, 0}));

    d = owl::decompose(vec({3, -5, 2}));
    CHECK(d.signs.cast<int>() == Eigen::Vector3i(1, -1, 1));
    CHECK(d.sorted_abs == vec({5, 3, 2}));
    CHECK(d.perm == owl::IndexVector((owl::IndexVector(3) << 1, 0, 2).finished()));

    d = owl::decompose(vec({2, -2}));
    CHECK(d.perm[0] == 0);
    CHECK(d.perm[1] == 1);
    CHECK(d.sorted_abs == vec({2, 2}));

    CHECK_THROWS_AS(owl::decompose(vec({1, std::numeric_limits<double>::infinity()})), owl::InvalidArgument);

    testing::Rng rng(11);
    for (int t = 0; t < 200; ++t) {
        VectorXd v = rng.gaussian(rng.integer(1, 30));
        for (Eigen::Index i = 0; i < v.size(); ++i)
            if (rng.integer(0, 4) == 0) v[i] = (rng.integer(0, 1) ? -1.0 : 1.0) * std::round(v[i]);
        const auto dd = owl::decompose(v);
        CHECK(owl::recompose(dd) == v);
        for (Eigen::Index i = 0; i + 1 < v.size(); ++i) CHECK(dd.sorted_abs[i] >= dd.sorted_abs[i + 1]);
        for (Eigen::Index i = 0; i < v.size(); ++i) CHECK((dd.signs[i] == 0) == (v[i] == 0.0));
    }
}

TEST_CASE("owl norm examples")
{
    CHECK(owl::owl_norm(vec({3, -5, 2}), weights({1, 0, 0})) == 5.0);
    CHECK(owl::owl_norm(vec({0, 0, 0}), weights({3, 2, 1})) == 0.0);
    CHECK(owl::owl_norm(vec({1, 2}), weights({2, 1})) == 5.0);
    CHECK_THROWS_AS(owl::owl_norm(vec({1, 2, 3}), weights({2, 1})), owl::DimensionMismatch);
}

TEST_CASE("dual norm examples")
{
    CHECK(owl::dual_norm(vec({3, 1}), weights({2, 2})) == doctest::Approx(1.5));
    CHECK(owl::dual_norm(vec({3, 1}), weights({2, 0})) == doctest::Approx(2.0));
    CHECK(owl::dual_norm(vec({3, 1}), weights({2, 1})) == doctest::Approx(1.5));
    CHECK(owl::dual_norm(vec({3, 1}), weights({2, 1})) == doctest::Approx(oracle::dual_norm_brute(vec({3, 1}), vec({2, 1}))));
}

TEST_CASE("norm properties on random inputs")
{
    testing::Rng rng(12);
    for (int t = 0; t < 300; ++t) {
        const Eigen::Index n = rng.integer(1, 25);
        const VectorXd wv = rng.weights(n);
        const WeightVector<double> w(wv);
        const VectorXd u = rng.gaussian(n), v = rng.gaussian(n);
        const double a = rng.normal() * 3.0;
        const double nv = owl::owl_norm(v, w);

        CHECK(nv == doctest::Approx(oracle::owl_norm_direct(v, wv)).epsilon(1e-13));
        CHECK(owl::owl_norm(VectorXd(a * v), w) == doctest::Approx(std::abs(a) * nv).epsilon(1e-12));
        CHECK(owl::owl_norm(VectorXd(u + v), w) <= owl::owl_norm(u, w) + nv + 1e-12);
        CHECK(nv > 0.0);

        const testing::SignedPermutation q(rng, n);
        CHECK(owl::owl_norm(q(v), w) == doctest::Approx(nv).epsilon(1e-14));

        const double l1 = v.lpNorm<1>();
        CHECK(w.mean() * l1 <= nv * (1 + 1e-12));
        CHECK(nv <= w.max() * l1 * (1 + 1e-12));
        CHECK(nv >= w.max() * v.lpNorm<Eigen::Infinity>() * (1 - 1e-12));

        const double dn = owl::dual_norm(v, w);
        CHECK(dn <= v.lpNorm<Eigen::Infinity>() / w.mean() * (1 + 1e-12));
        CHECK(u.dot(v) <= owl::owl_norm(u, w) * dn * (1 + 1e-12) + 1e-14);
    }
    CHECK(owl::owl_norm(VectorXd::Zero(4), weights({1, 1, 1, 1})) == 0.0);
}

TEST_CASE("sandwich is tight for constant weights")
{
    testing::Rng rng(13);
    const auto w = weights({0.7, 0.7, 0.7, 0.7, 0.7});
    for (int t = 0; t < 50; ++t) {
        const VectorXd v = rng.gaussian(5);
        CHECK(owl::owl_norm(v, w) == doctest::Approx(0.7 * v.lpNorm<1>()).epsilon(1e-14));
        CHECK(owl::dual_norm(v, w) == doctest::Approx(v.lpNorm<Eigen::Infinity>() / 0.7).epsilon(1e-14));
    }
}

TEST_CASE("dual norm matches brute force over atoms")
{
    testing::Rng rng(14);
    for (Eigen::Index n = 1; n <= 8; ++n) {
        for (int t = 0; t < 10; ++t) {
            const VectorXd wv = rng.weights(n);
            const VectorXd v = rng.gaussian(n);
            const double brute = oracle::dual_norm_brute(v, wv);
            CHECK(std::abs(owl::dual_norm(v, WeightVector<double>(wv)) - brute) <= 1e-12 * brute);
        }
    }
}

TEST_CASE("sort counter")
{
    const long before = owl::instrumentation::sort_count;
    (void)owl::owl_norm(vec({1, 2}), weights({2, 1}));
    CHECK(owl::instrumentation::sort_count == before + 1);
}
