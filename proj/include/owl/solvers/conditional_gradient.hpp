#pragma once

// Conditional gradient (Frank-Wolfe) for the constrained problem
//   min 0.5 ||y - Hx||^2  s.t.  Omega_w(x) <= eps.
// The linear oracle returns a scaled signed atom; the step size along
// d = s - x has a closed form because the objective is quadratic, and the
// numerator d'g is the surrogate duality gap.

#include "owl/atoms.hpp"
#include "owl/linear_operator.hpp"
#include "owl/prox.hpp"
#include "owl/solvers/common.hpp"

#include <algorithm>
#include <cmath>

namespace owl {

/// proj_[0,1](dg / ||Hd||^2) given dg = d'g and hd_sq = ||Hd||^2.
template <class Scalar>
Scalar cg_step_size_from(Scalar dg, Scalar hd_sq)
{
    if (hd_sq == Scalar(0)) return dg > Scalar(0) ? Scalar(1) : Scalar(0);
    return std::clamp(dg / hd_sq, Scalar(0), Scalar(1));
}

/// Exact minimizer over gamma in [0, 1] of 0.5 ||y - H(x + gamma d)||^2, where g = H'(y - Hx).
template <LinearOperator Op>
typename Op::Scalar cg_step_size(const Vector<typename Op::Scalar>& d, const Vector<typename Op::Scalar>& g,
                                 const Op& h)
{
    detail::require_same_size(d.size(), g.size(), "cg_step_size");
    Vector<typename Op::Scalar> hd;
    h.apply(d, hd);
    return cg_step_size_from(d.dot(g), hd.squaredNorm());
}

/// Surrogate duality gap d'g with d = s - x and g = -grad f(x); bounds f(x) - f(x*) from above.
template <class DerivedD, class DerivedG>
typename DerivedD::Scalar duality_gap(const Eigen::MatrixBase<DerivedD>& d, const Eigen::MatrixBase<DerivedG>& g)
{
    detail::require_same_size(d.size(), g.size(), "duality_gap");
    return d.dot(g);
}

/// Worst-case suboptimality of the k-th iterate: 8 eps^2 L / (mean(w)^2 (k + 2)).
template <class Scalar>
Scalar cg_suboptimality_bound(Index k, Scalar epsilon, Scalar lipschitz, Scalar weight_mean)
{
    detail::require(k >= 0, "cg_suboptimality_bound: k must be >= 0");
    detail::require(epsilon > Scalar(0) && lipschitz >= Scalar(0) && weight_mean > Scalar(0),
                    "cg_suboptimality_bound: parameters must be positive");
    return Scalar(8) * epsilon * epsilon * lipschitz / (weight_mean * weight_mean * static_cast<Scalar>(k + 2));
}

template <LinearOperator Op>
SolverResult<typename Op::Scalar> cg_solve(const RegressionProblem<Op>& p, const OwlBall<typename Op::Scalar>& ball,
                                           const SolverConfig<typename Op::Scalar>& cfg)
{
    using Scalar = typename Op::Scalar;
    const Index n = p.cols();
    detail::require_same_size(ball.size(), n, "cg_solve: weights vs columns of H");
    cfg.validate(n);

    detail::RunMonitor<Scalar> monitor(cfg);
    SolverResult<Scalar> result;

    ProjectionContext<Scalar> ctx;
    Vector<Scalar> x = ctx.project(detail::starting_point(cfg, n), ball, cfg.root).x;
    Vector<Scalar> r, g, hd, d;
    auto refresh_residual = [&] {
        p.op.apply(x, r);
        r -= p.y; // r = Hx - y
    };
    refresh_residual();

    for (Index k = 0;; ++k) {
        if (k > 0 && k % detail::kResidualRefresh == 0) refresh_residual();
        p.op.apply_transpose(r, g);
        g = -g; // negative gradient H'(y - Hx)

        d = linear_oracle(g, ball) - x;
        const Scalar gap = duality_gap(d, g);
        p.op.apply(d, hd);
        const Scalar gamma = cg_step_size_from(gap, hd.squaredNorm());

        TraceRecord<Scalar> row;
        row.k = k;
        row.residual_sq = r.squaredNorm();
        row.objective = Scalar(0.5) * row.residual_sq;
        row.certificate = gap;
        row.step = gamma;
        result.iterations = k;
        if (auto stop = monitor.record(result.trace, row, x)) {
            result.status = *stop;
            break;
        }

        x.noalias() += gamma * d;
        r.noalias() += gamma * hd;
    }
    result.x = std::move(x);
    return result;
}

} // namespace owl
