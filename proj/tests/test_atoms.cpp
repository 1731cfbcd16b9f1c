#include "oracles/oracles.hpp"
#include "support.hpp"

#include "owl/atoms.hpp"

#include <doctest.h>

#include <set>

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

std::set<std::vector<double>> as_set(const std::vector<VectorXd>& atoms)
{
    std::set<std::vector<double>> s;
    for (const auto& a : atoms) s.insert(std::vector<double>(a.data(), a.data() + a.size()));
    return s;
}
} // namespace

TEST_CASE("base atoms")
{
    auto b = owl::base_atoms(weights({1, 1}));
    REQUIRE(b.size() == 2);
    CHECK(b[0].materialize() == vec({1, 0}));
    CHECK(b[1].materialize() == vec({0.5, 0.5}));

    b = owl::base_atoms(weights({1, 0}));
    CHECK(b[0].materialize() == vec({1, 0}));
    CHECK(b[1].materialize() == vec({1, 1}));

    testing::Rng rng(41);
    for (int t = 0; t < 50; ++t) {
        const auto w = rng.weight_vector(rng.integer(1, 20));
        for (const auto& a : owl::base_atoms(w)) CHECK(owl::owl_norm(a.materialize(), w) == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("enumeration cardinality")
{
    CHECK(owl::enumerate_atoms(weights({1, 1})).size() == 8);
    CHECK(owl::enumerate_atoms(weights({3, 2, 1})).size() == 26);
    const auto one = owl::enumerate_atoms(weights({2}));
    REQUIRE(one.size() == 2);
    CHECK(as_set(one) == std::set<std::vector<double>>{{0.5}, {-0.5}});

    Eigen::VectorXd big = Eigen::VectorXd::Ones(13);
    CHECK_THROWS_AS(owl::enumerate_atoms(WeightVector<double>(big)), owl::InvalidArgument);
}

TEST_CASE("enumeration matches brute force")
{
    testing::Rng rng(42);
    for (Eigen::Index n = 1; n <= 6; ++n) {
        const VectorXd wv = rng.weights(n);
        const WeightVector<double> w(wv);
        const auto atoms = owl::enumerate_atoms(w);
        long expected = 1;
        for (Eigen::Index i = 0; i < n; ++i) expected *= 3;
        CHECK(static_cast<long>(atoms.size()) == expected - 1);
        CHECK(as_set(atoms) == as_set(oracle::atoms_brute(wv)));
        for (const auto& a : atoms) {
            CHECK(owl::owl_norm(a, w) == doctest::Approx(1.0).epsilon(1e-13));
            const VectorXd x = rng.gaussian(n);
            CHECK(a.dot(x) <= owl::dual_norm(x, w) + 1e-12);
        }
    }
}

TEST_CASE("linear oracle examples")
{
    CHECK(owl::linear_oracle(vec({3, -1}), owl::OwlBall<double>(weights({1, 1}), 1.0)) == vec({1, 0}));
    CHECK(owl::linear_oracle(vec({1, 1}), owl::OwlBall<double>(weights({1, 0}), 2.0)) == vec({2, 2}));
    CHECK(owl::linear_oracle(vec({0, 0, 0}), owl::OwlBall<double>(weights({2, 1, 1}), 1.0)) == vec({0.5, 0, 0}));
    CHECK(owl::linear_oracle(vec({-2, 5}), owl::OwlBall<double>(weights({1, 1}), 1.0)) == vec({0, 1}));
    // tie between levels: constant weights, equal magnitudes -> level 1
    CHECK(owl::select_atom(vec({1, -1}), weights({1, 1})).base.level == 1);
}

TEST_CASE("linear oracle attains the support function")
{
    testing::Rng rng(43);
    for (int t = 0; t < 200; ++t) {
        const Eigen::Index n = rng.integer(1, 8);
        const VectorXd wv = rng.weights(n);
        const WeightVector<double> w(wv);
        const double eps = rng.uniform(0.1, 3.0);
        const VectorXd g = rng.gaussian(n);
        const VectorXd s = owl::linear_oracle(g, owl::OwlBall<double>(w, eps));
        const double value = g.dot(s);
        CHECK(std::abs(value - eps * owl::dual_norm(g, w)) <= 1e-12 * std::abs(value));
        CHECK(std::abs(value - eps * oracle::dual_norm_brute(g, wv)) <= 1e-12 * std::abs(value));
        CHECK(owl::owl_norm(s, w) == doctest::Approx(eps).epsilon(1e-13));
    }
}

TEST_CASE("atomic decomposition of the monotone cone")
{
    testing::Rng rng(44);
    for (int t = 0; t < 100; ++t) {
        const Eigen::Index n = rng.integer(1, 6);
        const WeightVector<double> w = rng.weight_vector(n);
        VectorXd x = rng.gaussian(n).cwiseAbs();
        std::sort(x.data(), x.data() + n, std::greater<>());
        x /= owl::owl_norm(x, w);

        const VectorXd c = owl::monotone_atomic_coefficients(x, w);
        CHECK(c.minCoeff() >= 0.0);
        CHECK(std::abs(c.sum() - 1.0) <= 1e-12);
        VectorXd rebuilt = VectorXd::Zero(n);
        const auto base = owl::base_atoms(w);
        for (Eigen::Index i = 0; i < n; ++i) rebuilt += c[i] * base[static_cast<std::size_t>(i)].materialize();
        CHECK((rebuilt - x).lpNorm<Eigen::Infinity>() <= 1e-12);
    }
}
