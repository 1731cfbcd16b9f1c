#pragma once

// Ordered weighted l1 norm: weight vectors, the signed sort decomposition
// shared by prox/projection/oracle, and norm / dual-norm evaluation.

#include "owl/error.hpp"
#include "owl/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

namespace owl {

namespace instrumentation {

/// Number of O(n log n) magnitude sorts performed on this thread.
inline thread_local long sort_count = 0;

} // namespace instrumentation

/// Non-increasing, non-negative weights with w[0] > 0.
///
/// Prefix sums and the mean are computed once at construction; the atom
/// levels tau_i = 1 / prefix_sums[i-1] are always derived from them.
template <class Scalar>
class WeightVector {
public:
    WeightVector() = default;

    explicit WeightVector(Vector<Scalar> w) : w_(std::move(w))
    {
        detail::require(w_.size() >= 1, "weights: empty weight vector");
        detail::require(w_.allFinite(), "weights: non-finite entry");
        for (Index i = 0; i + 1 < w_.size(); ++i) {
            if (!(w_[i] >= w_[i + 1])) {
                throw InvalidArgument("weights: not non-increasing at index " + std::to_string(i + 1));
            }
        }
        detail::require(w_[w_.size() - 1] >= Scalar(0), "weights: negative entry");
        detail::require(w_[0] > Scalar(0), "weights: all-zero weight vector");

        prefix_.resize(w_.size());
        Scalar acc(0);
        for (Index i = 0; i < w_.size(); ++i) {
            acc += w_[i];
            prefix_[i] = acc;
        }
        mean_ = acc / static_cast<Scalar>(w_.size());
    }

    Index size() const { return w_.size(); }
    const Vector<Scalar>& values() const { return w_; }
    Scalar operator[](Index i) const { return w_[i]; }

    /// prefix_sums()[i] = w[0] + ... + w[i].
    const Vector<Scalar>& prefix_sums() const { return prefix_; }
    Scalar mean() const { return mean_; }
    Scalar max() const { return w_[0]; }

    /// Atom level value for level i in 1..n.
    Scalar tau(Index level) const { return Scalar(1) / prefix_[level - 1]; }

private:
    Vector<Scalar> w_;
    Vector<Scalar> prefix_;
    Scalar mean_{0};
};

/// OSCAR parameters; w_i = lambda1 + lambda2 * (n - i).
template <class Scalar>
struct OscarParams {
    Scalar lambda1{0};
    Scalar lambda2{0};
};

template <class Scalar>
WeightVector<Scalar> oscar_weights(const OscarParams<Scalar>& p, Index n)
{
    detail::require(n >= 1, "oscar_weights: n must be >= 1");
    detail::require(std::isfinite(static_cast<double>(p.lambda1)) && std::isfinite(static_cast<double>(p.lambda2)),
                    "oscar_weights: non-finite lambda");
    detail::require(p.lambda1 >= Scalar(0) && p.lambda2 >= Scalar(0), "oscar_weights: lambdas must be >= 0");
    detail::require(p.lambda1 > Scalar(0) || p.lambda2 > Scalar(0), "oscar_weights: lambda1 and lambda2 both zero");
    Vector<Scalar> w(n);
    for (Index i = 0; i < n; ++i) {
        w[i] = p.lambda1 + p.lambda2 * static_cast<Scalar>(n - 1 - i);
    }
    return WeightVector<Scalar>(std::move(w));
}

/// sign(v), the sorting permutation of |v| and |v| sorted non-increasingly.
///
/// sorted_abs[i] == |v[perm[i]]|; ties keep their original order.
template <class Scalar>
struct SignedSortDecomposition {
    SignVector signs;
    IndexVector perm;
    Vector<Scalar> sorted_abs;

    Index size() const { return sorted_abs.size(); }
};

namespace detail {

template <class Scalar>
struct MagnitudeIndex {
    Scalar magnitude;
    Index index;
};

// Sorts by magnitude descending, index ascending. Equivalent to a stable
// sort on magnitudes, without the extra buffer std::stable_sort needs.
template <class Scalar>
void sort_by_magnitude(std::vector<MagnitudeIndex<Scalar>>& items)
{
    ++instrumentation::sort_count;
    std::sort(items.begin(), items.end(), [](const MagnitudeIndex<Scalar>& a, const MagnitudeIndex<Scalar>& b) {
        if (a.magnitude != b.magnitude) return a.magnitude > b.magnitude;
        return a.index < b.index;
    });
}

template <class Scalar>
Vector<Scalar> sorted_magnitudes(const Eigen::Ref<const Vector<Scalar>>& v)
{
    ++instrumentation::sort_count;
    Vector<Scalar> a = v.cwiseAbs();
    std::sort(a.data(), a.data() + a.size(), std::greater<Scalar>());
    return a;
}

// Largest value of tau_i * (sum of the i largest entries), with the
// smallest maximizing level on ties.
template <class Scalar>
std::pair<Index, Scalar> best_level(const Eigen::Ref<const Vector<Scalar>>& sorted_abs, const WeightVector<Scalar>& w)
{
    Index level = 1;
    Scalar best = sorted_abs.size() > 0 ? sorted_abs[0] / w.prefix_sums()[0] : Scalar(0);
    Scalar acc(0);
    for (Index i = 0; i < sorted_abs.size(); ++i) {
        acc += sorted_abs[i];
        const Scalar value = acc / w.prefix_sums()[i];
        if (value > best) {
            best = value;
            level = i + 1;
        }
    }
    return {level, best};
}

} // namespace detail

template <class Derived>
SignedSortDecomposition<typename Derived::Scalar> decompose(const Eigen::MatrixBase<Derived>& v)
{
    using Scalar = typename Derived::Scalar;
    const Index n = v.size();
    detail::require(v.allFinite(), "decompose: non-finite entry");

    std::vector<detail::MagnitudeIndex<Scalar>> items(static_cast<std::size_t>(n));
    SignedSortDecomposition<Scalar> d;
    d.signs.resize(n);
    for (Index i = 0; i < n; ++i) {
        const Scalar x = v[i];
        d.signs[i] = x > Scalar(0) ? 1 : (x < Scalar(0) ? -1 : 0);
        items[static_cast<std::size_t>(i)] = {std::abs(x), i};
    }
    detail::sort_by_magnitude(items);

    d.perm.resize(n);
    d.sorted_abs.resize(n);
    for (Index i = 0; i < n; ++i) {
        d.perm[i] = items[static_cast<std::size_t>(i)].index;
        d.sorted_abs[i] = items[static_cast<std::size_t>(i)].magnitude;
    }
    return d;
}

/// Unsorts `sorted_values` with the decomposition's permutation and applies its signs.
template <class Scalar, class Derived>
Vector<Scalar> recompose(const SignedSortDecomposition<Scalar>& d, const Eigen::MatrixBase<Derived>& sorted_values)
{
    detail::require_same_size(d.size(), sorted_values.size(), "recompose");
    Vector<Scalar> out(d.size());
    for (Index i = 0; i < d.size(); ++i) {
        const Index j = d.perm[i];
        out[j] = d.signs[j] == 0 ? Scalar(0) : static_cast<Scalar>(d.signs[j]) * sorted_values[i];
    }
    return out;
}

template <class Scalar>
Vector<Scalar> recompose(const SignedSortDecomposition<Scalar>& d)
{
    return recompose(d, d.sorted_abs);
}

/// Omega_w(v) = sum_i w_i |v|_[i].
template <class Derived>
typename Derived::Scalar owl_norm(const Eigen::MatrixBase<Derived>& v, const WeightVector<typename Derived::Scalar>& w)
{
    using Scalar = typename Derived::Scalar;
    detail::require_same_size(v.size(), w.size(), "owl_norm");
    const Vector<Scalar> a = detail::sorted_magnitudes<Scalar>(v.derived());
    return w.values().dot(a);
}

/// Omega_w for a vector already sorted non-increasingly and non-negative.
template <class Scalar>
Scalar owl_norm_sorted(const Eigen::Ref<const Vector<Scalar>>& sorted_abs, const WeightVector<Scalar>& w)
{
    return w.values().dot(sorted_abs);
}

/// Dual norm max_i tau_i * (sum of the i largest |v_j|).
template <class Derived>
typename Derived::Scalar dual_norm(const Eigen::MatrixBase<Derived>& v, const WeightVector<typename Derived::Scalar>& w)
{
    using Scalar = typename Derived::Scalar;
    detail::require_same_size(v.size(), w.size(), "dual_norm");
    const Vector<Scalar> a = detail::sorted_magnitudes<Scalar>(v.derived());
    return detail::best_level<Scalar>(a, w).second;
}

template <class Scalar>
Scalar dual_norm_sorted(const Eigen::Ref<const Vector<Scalar>>& sorted_abs, const WeightVector<Scalar>& w)
{
    return detail::best_level<Scalar>(sorted_abs, w).second;
}

} // namespace owl
