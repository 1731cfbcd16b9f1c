#pragma once

#include "owl/error.hpp"
#include "owl/types.hpp"

#include <cmath>
#include <concepts>
#include <cstdint>
#include <random>
#include <utility>

namespace owl {

/// Anything the solvers can multiply by: out = H x and out = H' r.
template <class Op>
concept LinearOperator = requires(const Op& op, const Vector<typename Op::Scalar>& x, Vector<typename Op::Scalar>& out) {
    typename Op::Scalar;
    { op.rows() } -> std::convertible_to<Index>;
    { op.cols() } -> std::convertible_to<Index>;
    op.apply(x, out);
    op.apply_transpose(x, out);
};

template <class S>
class DenseOperator {
public:
    using Scalar = S;

    DenseOperator() = default;
    explicit DenseOperator(Matrix<Scalar> h) : h_(std::move(h)) {}

    Index rows() const { return h_.rows(); }
    Index cols() const { return h_.cols(); }

    void apply(const Vector<Scalar>& x, Vector<Scalar>& out) const { out.noalias() = h_ * x; }
    void apply_transpose(const Vector<Scalar>& r, Vector<Scalar>& out) const { out.noalias() = h_.transpose() * r; }

    const Matrix<Scalar>& matrix() const { return h_; }

private:
    Matrix<Scalar> h_;
};

static_assert(LinearOperator<DenseOperator<double>>);

template <class Scalar>
struct LipschitzEstimate {
    Scalar value{0};    // Rayleigh quotient of H'H, a lower bound on lambda_max
    Scalar residual{0}; // ||H'H v - value v|| for the final unit vector v
    int iterations = 0;
    bool converged = false;
};

/// Power iteration for lambda_max(H'H). Stops when the eigen-residual is
/// at most rel_tol * value.
template <LinearOperator Op>
LipschitzEstimate<typename Op::Scalar> estimate_lipschitz(const Op& op, typename Op::Scalar rel_tol = 1e-6,
                                                          int max_iterations = 20000)
{
    using Scalar = typename Op::Scalar;
    detail::require(op.rows() > 0 && op.cols() > 0, "estimate_lipschitz: empty operator");

    // Fixed start so results do not depend on global RNG state.
    std::mt19937_64 gen(0x0d1ce5eedULL);
    Vector<Scalar> v(op.cols());
    for (Index i = 0; i < v.size(); ++i) v[i] = Scalar(static_cast<double>(gen() >> 11) * 0x1.0p-53 + 0.5);
    v.normalize();

    LipschitzEstimate<Scalar> est;
    Vector<Scalar> hv, s;
    for (int it = 1; it <= max_iterations; ++it) {
        est.iterations = it;
        op.apply(v, hv);
        op.apply_transpose(hv, s);
        const Scalar rho = v.dot(s);
        const Scalar norm_s = s.norm();
        if (norm_s == Scalar(0)) {
            est.value = Scalar(0);
            est.residual = Scalar(0);
            est.converged = true;
            return est;
        }
        est.value = rho;
        est.residual = (s - rho * v).norm();
        if (est.residual <= rel_tol * rho) {
            est.converged = true;
            return est;
        }
        v = s / norm_s;
    }
    return est;
}

} // namespace owl
