#pragma once

// Atomic description of the OWL unit ball. The base atoms are
// b^(i) = tau_i * [1, ..., 1, 0, ..., 0] (i ones), tau_i = 1 / (w_1 + ... + w_i),
// and the full atom set is every signed permutation of a base atom.

#include "owl/error.hpp"
#include "owl/norms.hpp"
#include "owl/prox.hpp"
#include "owl/types.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

namespace owl {

template <class Scalar>
struct Atom {
    Index level = 1; // number of leading nonzeros, 1..dim
    Scalar tau{0};
    Index dim = 0;

    Vector<Scalar> materialize() const
    {
        Vector<Scalar> b = Vector<Scalar>::Zero(dim);
        b.head(level).setConstant(tau);
        return b;
    }
};

/// A base atom placed on `support` with the given signs.
template <class Scalar>
struct SignedAtom {
    Atom<Scalar> base;
    std::vector<Index> support;
    std::vector<std::int8_t> signs;

    Vector<Scalar> materialize() const
    {
        Vector<Scalar> a = Vector<Scalar>::Zero(base.dim);
        for (std::size_t j = 0; j < support.size(); ++j) a[support[j]] = static_cast<Scalar>(signs[j]) * base.tau;
        return a;
    }
};

template <class Scalar>
std::vector<Atom<Scalar>> base_atoms(const WeightVector<Scalar>& w)
{
    std::vector<Atom<Scalar>> atoms;
    atoms.reserve(static_cast<std::size_t>(w.size()));
    for (Index i = 1; i <= w.size(); ++i) atoms.push_back({i, w.tau(i), w.size()});
    return atoms;
}

inline constexpr Index kMaxEnumerationDim = 12;

/// All 3^n - 1 signed atoms. Only for n <= 12.
template <class Scalar>
std::vector<SignedAtom<Scalar>> enumerate_signed_atoms(const WeightVector<Scalar>& w)
{
    const Index n = w.size();
    if (n > kMaxEnumerationDim) {
        throw InvalidArgument("enumerate_atoms: dimension " + std::to_string(n) + " exceeds limit " +
                              std::to_string(kMaxEnumerationDim));
    }
    const auto bases = base_atoms(w);

    // Canonical key: ternary digit per coordinate (0 off-support, 1 '+', 2 '-').
    std::set<std::uint32_t> seen;
    std::vector<SignedAtom<Scalar>> out;
    std::vector<Index> support;

    auto emit_signs = [&](const Atom<Scalar>& base) {
        const std::size_t k = support.size();
        for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
            SignedAtom<Scalar> a{base, support, std::vector<std::int8_t>(k, 1)};
            std::uint32_t key = 0;
            std::uint32_t digit = 1;
            std::size_t j = 0;
            for (Index i = 0; i < n; ++i, digit *= 3) {
                if (j < k && support[j] == i) {
                    const bool negative = (mask >> j) & 1u;
                    a.signs[j] = negative ? -1 : 1;
                    key += digit * (negative ? 2u : 1u);
                    ++j;
                }
            }
            if (seen.insert(key).second) out.push_back(std::move(a));
        }
    };

    // Each signed permutation of b^(i) is fixed by its support (an i-subset) and signs.
    for (const auto& base : bases) {
        std::vector<bool> pick(static_cast<std::size_t>(n), false);
        std::fill(pick.begin(), pick.begin() + base.level, true);
        do {
            support.clear();
            for (Index i = 0; i < n; ++i)
                if (pick[static_cast<std::size_t>(i)]) support.push_back(i);
            emit_signs(base);
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    return out;
}

template <class Scalar>
std::vector<Vector<Scalar>> enumerate_atoms(const WeightVector<Scalar>& w)
{
    const auto signed_atoms = enumerate_signed_atoms(w);
    std::vector<Vector<Scalar>> out;
    out.reserve(signed_atoms.size());
    for (const auto& a : signed_atoms) out.push_back(a.materialize());
    return out;
}

/// The atom maximizing a' g over the unit OWL ball.
///
/// Ties between levels go to the smallest level. g == 0 yields the level-1
/// atom at index 0 with a positive sign.
template <class Derived>
SignedAtom<typename Derived::Scalar> select_atom(const Eigen::MatrixBase<Derived>& g,
                                                 const WeightVector<typename Derived::Scalar>& w)
{
    using Scalar = typename Derived::Scalar;
    detail::require_same_size(g.size(), w.size(), "linear_oracle");
    const SignedSortDecomposition<Scalar> d = decompose(g);
    const Index level = detail::best_level<Scalar>(d.sorted_abs, w).first;

    SignedAtom<Scalar> a{{level, w.tau(level), w.size()}, {}, {}};
    a.support.reserve(static_cast<std::size_t>(level));
    a.signs.reserve(static_cast<std::size_t>(level));
    for (Index j = 0; j < level; ++j) {
        const Index i = d.perm[j];
        a.support.push_back(i);
        a.signs.push_back(d.signs[i] < 0 ? -1 : 1);
    }
    return a;
}

/// argmax_{s : Omega_w(s) <= eps} s' g, a scaled signed atom.
template <class Derived>
Vector<typename Derived::Scalar> linear_oracle(const Eigen::MatrixBase<Derived>& g,
                                               const OwlBall<typename Derived::Scalar>& ball)
{
    return ball.radius() * select_atom(g, ball.weights()).materialize();
}

/// Coefficients c_i = (x_i - x_{i+1}) / tau_i (x_{n+1} = 0) expressing x in
/// the monotone non-negative cone as sum_i c_i b^(i). They sum to Omega_w(x).
template <class Derived>
Vector<typename Derived::Scalar> monotone_atomic_coefficients(const Eigen::MatrixBase<Derived>& x,
                                                              const WeightVector<typename Derived::Scalar>& w)
{
    using Scalar = typename Derived::Scalar;
    detail::require_same_size(x.size(), w.size(), "monotone_atomic_coefficients");
    const Index n = x.size();
    Vector<Scalar> c(n);
    for (Index i = 0; i < n; ++i) {
        const Scalar next = i + 1 < n ? x[i + 1] : Scalar(0);
        c[i] = (x[i] - next) * w.prefix_sums()[i];
    }
    return c;
}

} // namespace owl
