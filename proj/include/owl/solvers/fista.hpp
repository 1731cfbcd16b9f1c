#pragma once

// FISTA for OWL-regularized least squares, with or without backtracking.
//
// Backtracking accepts x_k = P(u_k - H'(Hu_k - y) / alpha) once
//   ||Hx_k - y||^2 <= Q_alpha(x_k, u_k)
//     = ||Hu_k - y||^2 + 2 (x_k - u_k)' H'(Hu_k - y) + (alpha / 2) ||x_k - u_k||^2,
// otherwise alpha <- eta * alpha. The test is evaluated in the equivalent
// form ||H(x_k - u_k)||^2 <= (alpha / 2) ||x_k - u_k||^2, which does not
// cancel catastrophically when x_k is close to u_k. alpha carries over
// between iterations. Without backtracking alpha = lambda_max(H'H).

#include "owl/linear_operator.hpp"
#include "owl/solvers/common.hpp"

#include <cmath>
#include <sstream>

namespace owl {

/// t_{k+1} = (1 + sqrt(1 + 4 t_k^2)) / 2.
template <class Scalar>
Scalar fista_momentum_next(Scalar t)
{
    return (Scalar(1) + std::sqrt(Scalar(1) + Scalar(4) * t * t)) / Scalar(2);
}

template <LinearOperator Op>
SolverResult<typename Op::Scalar> fista_solve(const RegressionProblem<Op>& p,
                                              const Regularization<typename Op::Scalar>& reg, bool backtracking,
                                              const SolverConfig<typename Op::Scalar>& cfg)
{
    using Scalar = typename Op::Scalar;
    const Index n = p.cols();
    detail::require_same_size(reg.weights.size(), n, "fista_solve: weights vs columns of H");
    reg.validate();
    cfg.validate(n);

    Scalar alpha = cfg.alpha0;
    if (!backtracking) {
        alpha = p.lipschitz ? *p.lipschitz : estimate_lipschitz(p.op).value;
        detail::require(alpha > Scalar(0), "fista_solve: lambda_max(H'H) must be > 0 without backtracking");
    }

    detail::RunMonitor<Scalar> monitor(cfg);
    detail::ProximalStep<Scalar> step(reg, cfg.root);
    SolverResult<Scalar> result;

    Vector<Scalar> x_prev = detail::starting_point(cfg, n);
    if (step.constrained()) x_prev = step(x_prev, alpha);
    Vector<Scalar> hx_prev;
    p.op.apply(x_prev, hx_prev);

    {
        TraceRecord<Scalar> row;
        row.k = 0;
        row.residual_sq = (hx_prev - p.y).squaredNorm();
        row.objective = step.objective(row.residual_sq, x_prev);
        if (auto stop = monitor.record(result.trace, row, x_prev)) {
            result.status = *stop;
            result.x = std::move(x_prev);
            return result;
        }
    }

    Vector<Scalar> u = x_prev, hu = hx_prev;
    Vector<Scalar> r_u, grad, x, hx, diff;
    Scalar t(1);

    for (Index k = 1;; ++k) {
        r_u = hu - p.y;
        p.op.apply_transpose(r_u, grad);

        int backtracks = 0;
        for (;;) {
            x = step(u - grad / alpha, alpha);
            p.op.apply(x, hx);
            if (!backtracking) break;
            diff = x - u;
            if ((hx - hu).squaredNorm() <= Scalar(0.5) * alpha * diff.squaredNorm()) break;
            if (backtracks == cfg.max_backtracks) {
                std::ostringstream os;
                os << "fista_solve: backtracking failed after " << backtracks << " increases at iteration " << k
                   << " (alpha " << alpha << ")";
                result.x = x_prev;
                throw BacktrackingFailure<Scalar>(os.str(), std::move(result));
            }
            alpha *= cfg.eta;
            ++backtracks;
        }

        TraceRecord<Scalar> row;
        row.k = k;
        row.residual_sq = (hx - p.y).squaredNorm();
        row.objective = step.objective(row.residual_sq, x);
        row.certificate = detail::relative_change(x, x_prev);
        row.step = Scalar(1) / alpha;
        row.backtracks = backtracks;
        if (backtracking) {
            row.model_bound = r_u.squaredNorm() + Scalar(2) * diff.dot(grad) + Scalar(0.5) * alpha * diff.squaredNorm();
        }
        result.iterations = k;
        const auto stop = monitor.record(result.trace, row, x);

        const Scalar t_next = fista_momentum_next(t);
        const Scalar beta = (t - Scalar(1)) / t_next;
        u = x + beta * (x - x_prev);
        hu = hx + beta * (hx - hx_prev);
        t = t_next;
        x_prev.swap(x);
        hx_prev.swap(hx);

        if (stop) {
            result.status = *stop;
            break;
        }
    }
    result.x = std::move(x_prev);
    return result;
}

} // namespace owl
