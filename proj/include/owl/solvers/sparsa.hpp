#pragma once

// SpaRSA: proximal gradient with Barzilai-Borwein step sizes
//   alpha_k = ||H(x_k - x_{k-1})||^2 / ||x_k - x_{k-1}||^2, clamped to [alpha_min, alpha_max],
// and a monotone acceptance test. For the constrained form the step is a
// projection onto the OWL ball and a trial is accepted once the residual
// ||Hx - y|| does not increase. For the penalized form the step is the OWL
// prox with scale tau / alpha and the test is on the full objective.
//
// The residual change is evaluated as
//   ||r + Hd||^2 - ||r||^2 = 2 r'Hd + ||Hd||^2,  d = x_trial - x,
// rather than as a difference of two squared norms, which loses all
// precision once the per-step decrease nears rounding of ||r||^2 and then
// rejects every step. r is updated as r + Hd and recomputed periodically.

#include "owl/linear_operator.hpp"
#include "owl/solvers/common.hpp"

#include <algorithm>
#include <sstream>

namespace owl {

template <LinearOperator Op>
SolverResult<typename Op::Scalar> sparsa_solve(const RegressionProblem<Op>& p,
                                               const Regularization<typename Op::Scalar>& reg,
                                               const SolverConfig<typename Op::Scalar>& cfg)
{
    using Scalar = typename Op::Scalar;
    const Index n = p.cols();
    detail::require_same_size(reg.weights.size(), n, "sparsa_solve: weights vs columns of H");
    reg.validate();
    cfg.validate(n);

    detail::RunMonitor<Scalar> monitor(cfg);
    detail::ProximalStep<Scalar> step(reg, cfg.root);
    SolverResult<Scalar> result;

    Vector<Scalar> x_prev = detail::starting_point(cfg, n);
    if (step.constrained()) x_prev = step(x_prev, cfg.alpha0);

    Vector<Scalar> r_prev, grad, x_trial, r_trial, hd;
    p.op.apply(x_prev, r_prev);
    r_prev -= p.y;

    {
        TraceRecord<Scalar> row;
        row.k = 0;
        row.residual_sq = r_prev.squaredNorm();
        row.objective = step.objective(row.residual_sq, x_prev);
        if (auto stop = monitor.record(result.trace, row, x_prev)) {
            result.status = *stop;
            result.x = std::move(x_prev);
            return result;
        }
    }

    // x_1 = P(x_0 - H'(Hx_0 - y) / alpha_0), no acceptance test.
    p.op.apply_transpose(r_prev, grad);
    Vector<Scalar> x = step(x_prev - grad / cfg.alpha0, cfg.alpha0);
    Vector<Scalar> r;
    p.op.apply(x, r);
    r -= p.y;
    Scalar alpha_used = cfg.alpha0;
    Scalar current_penalty = step.penalty(x);
    Scalar current_value = step.objective(r.squaredNorm(), x);
    int last_backtracks = 0;

    for (Index k = 1;; ++k) {
        TraceRecord<Scalar> row;
        row.k = k;
        row.residual_sq = r.squaredNorm();
        row.objective = current_value;
        row.certificate = detail::relative_change(x, x_prev);
        row.step = Scalar(1) / alpha_used;
        row.backtracks = last_backtracks;
        result.iterations = k;
        if (auto stop = monitor.record(result.trace, row, x)) {
            result.status = *stop;
            break;
        }

        // Barzilai-Borwein estimate; H(x_k - x_{k-1}) = r_k - r_{k-1}.
        const Scalar dx_sq = (x - x_prev).squaredNorm();
        Scalar alpha = alpha_used;
        if (dx_sq > Scalar(0)) {
            alpha = std::clamp((r - r_prev).squaredNorm() / dx_sq, cfg.alpha_min, cfg.alpha_max);
        }

        p.op.apply_transpose(r, grad);
        int backtracks = 0;
        for (;;) {
            x_trial = step(x - grad / alpha, alpha);
            p.op.apply(x_trial - x, hd);
            const Scalar residual_change = Scalar(2) * r.dot(hd) + hd.squaredNorm();
            const Scalar trial_penalty = step.penalty(x_trial);
            const bool accepted = step.constrained()
                                      ? residual_change <= Scalar(0)
                                      : Scalar(0.5) * residual_change + (trial_penalty - current_penalty) <= Scalar(0);
            if (accepted) {
                if ((k + 1) % detail::kResidualRefresh == 0) {
                    p.op.apply(x_trial, r_trial);
                    r_trial -= p.y;
                } else {
                    r_trial = r + hd;
                }
                alpha_used = alpha;
                current_penalty = trial_penalty;
                current_value = step.objective(r_trial.squaredNorm(), x_trial);
                break;
            }
            if (backtracks == cfg.max_backtracks) {
                std::ostringstream os;
                os << "sparsa_solve: no acceptable step after " << backtracks << " increases at iteration " << k
                   << " (alpha " << alpha << ")";
                result.x = x;
                throw BacktrackingFailure<Scalar>(os.str(), std::move(result));
            }
            alpha *= cfg.eta;
            ++backtracks;
        }

        x_prev.swap(x);
        r_prev.swap(r);
        x.swap(x_trial);
        r.swap(r_trial);
        last_backtracks = backtracks;
    }
    result.x = std::move(x);
    return result;
}

} // namespace owl
