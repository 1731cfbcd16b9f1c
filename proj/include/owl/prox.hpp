#pragma once

// Proximity operator of the OWL norm and Euclidean projection onto an OWL
// ball. The projection sorts its input once and then root-finds the
// Lagrange multiplier theta with g(theta) = w' P_{K_m+}(u - theta w) - eps,
// where u = |v| sorted non-increasingly.

#include "owl/error.hpp"
#include "owl/isotonic.hpp"
#include "owl/norms.hpp"
#include "owl/root_find.hpp"
#include "owl/types.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace owl {

/// {x : Omega_w(x) <= radius}.
template <class Scalar>
class OwlBall {
public:
    OwlBall(WeightVector<Scalar> w, Scalar radius) : w_(std::move(w)), radius_(radius)
    {
        detail::require(std::isfinite(static_cast<double>(radius)) && radius > Scalar(0),
                        "OwlBall: radius must be finite and > 0");
    }

    const WeightVector<Scalar>& weights() const { return w_; }
    Scalar radius() const { return radius_; }
    Index size() const { return w_.size(); }

private:
    WeightVector<Scalar> w_;
    Scalar radius_;
};

/// |Omega_w(x) - eps| bound guaranteed for exterior projections.
template <class Scalar>
Scalar projection_feasibility_tolerance(Scalar radius)
{
    return Scalar(1e-8) * std::max(radius, Scalar(1));
}

/// Root-finding bracket is tightened from u_1 / mean(w) to the dual norm up to this size.
inline constexpr Index kDualBracketMaxSize = 10000;

template <class Scalar>
struct ProjectionDiagnostics {
    bool interior = false;
    Scalar input_norm{0};
    Scalar theta{0};
    Scalar residual{0}; // g(theta) = Omega_w(x) - eps
    int iterations = 0;
    int evaluations = 0;
    RootStatus status = RootStatus::Converged;
    Scalar theta_max{0}; // initial bracket is [0, theta_max]
    /// Width of the final bracket; a flat g at level zero shows up here.
    Scalar bracket_width{0};
    long sorts = 0;
};

template <class Scalar>
struct ProjectionResult {
    Vector<Scalar> x;
    ProjectionDiagnostics<Scalar> diagnostics;
};

/// Holds scratch buffers reused across prox / projection calls. One
/// instance per thread; copies are independent.
template <class Scalar>
class ProjectionContext {
public:
    /// g(theta) for u already sorted non-increasingly and non-negative.
    Scalar eval_g(Scalar theta, const Eigen::Ref<const Vector<Scalar>>& sorted_abs, const OwlBall<Scalar>& ball)
    {
        shifted_.noalias() = sorted_abs - theta * ball.weights().values();
        isotonic_.project_monotone_nonneg(shifted_);
        return ball.weights().values().dot(shifted_) - ball.radius();
    }

    template <class Derived>
    Vector<Scalar> prox(const Eigen::MatrixBase<Derived>& v, const WeightVector<Scalar>& w, Scalar theta)
    {
        detail::require_same_size(v.size(), w.size(), "prox_owl");
        detail::require(std::isfinite(static_cast<double>(theta)) && theta >= Scalar(0),
                        "prox_owl: theta must be finite and >= 0");
        if (theta == Scalar(0)) {
            detail::require(v.allFinite(), "prox_owl: non-finite entry");
            return v;
        }
        const SignedSortDecomposition<Scalar> d = decompose(v);
        shifted_.noalias() = d.sorted_abs - theta * w.values();
        isotonic_.project_monotone_nonneg(shifted_);
        return recompose(d, shifted_);
    }

    template <class Derived>
    ProjectionResult<Scalar> project(const Eigen::MatrixBase<Derived>& v, const OwlBall<Scalar>& ball,
                                     const RootFindConfig<Scalar>& cfg = {})
    {
        detail::require_same_size(v.size(), ball.size(), "project_owl_ball");
        const long sorts_before = instrumentation::sort_count;

        ProjectionResult<Scalar> out;
        auto& diag = out.diagnostics;
        const SignedSortDecomposition<Scalar> d = decompose(v);
        const WeightVector<Scalar>& w = ball.weights();
        diag.input_norm = owl_norm_sorted<Scalar>(d.sorted_abs, w);
        if (diag.input_norm <= ball.radius()) {
            diag.interior = true;
            diag.residual = diag.input_norm - ball.radius();
            diag.sorts = instrumentation::sort_count - sorts_before;
            out.x = v;
            return out;
        }

        Scalar theta_max = d.sorted_abs[0] / w.mean();
        if (d.size() <= kDualBracketMaxSize) {
            theta_max = std::min(theta_max, dual_norm_sorted<Scalar>(d.sorted_abs, w));
        }
        diag.theta_max = theta_max;

        RootFindConfig<Scalar> rcfg = cfg;
        if (!rcfg.tol_g) rcfg.tol_g = Scalar(RootFindConfig<Scalar>::default_relative_tolerance) * ball.radius();
        const auto root = find_root<Scalar>(
            [&](Scalar theta) { return eval_g(theta, d.sorted_abs, ball); }, Scalar(0), theta_max, rcfg);

        diag.theta = root.root;
        diag.iterations = root.iterations;
        diag.evaluations = root.evaluations;
        diag.status = root.status;
        diag.bracket_width = root.bracket_hi - root.bracket_lo;

        shifted_.noalias() = d.sorted_abs - root.root * w.values();
        isotonic_.project_monotone_nonneg(shifted_);
        diag.residual = w.values().dot(shifted_) - ball.radius();
        diag.sorts = instrumentation::sort_count - sorts_before;

        if (!root.converged() || std::abs(diag.residual) > projection_feasibility_tolerance(ball.radius())) {
            std::ostringstream os;
            os << "project_owl_ball: root finding failed (theta in [" << root.bracket_lo << ", " << root.bracket_hi
               << "], residual " << diag.residual << ", iterations " << root.iterations << ")";
            throw NumericalError(os.str());
        }
        out.x = recompose(d, shifted_);
        return out;
    }

    /// Merge count of the isotonic workspace, for complexity checks.
    Index total_merges() const { return isotonic_.total_merges(); }

private:
    Vector<Scalar> shifted_;
    IsotonicWorkspace<Scalar> isotonic_;
};

/// prox_{theta Omega_w}(v) = argmin_x 0.5 ||x - v||^2 + theta Omega_w(x).
template <class Derived>
Vector<typename Derived::Scalar> prox_owl(const Eigen::MatrixBase<Derived>& v,
                                          const WeightVector<typename Derived::Scalar>& w,
                                          typename Derived::Scalar theta)
{
    ProjectionContext<typename Derived::Scalar> ctx;
    return ctx.prox(v, w, theta);
}

template <class Scalar>
Scalar eval_g(Scalar theta, const Eigen::Ref<const Vector<Scalar>>& sorted_abs, const OwlBall<Scalar>& ball)
{
    detail::require_same_size(sorted_abs.size(), ball.size(), "eval_g");
    ProjectionContext<Scalar> ctx;
    return ctx.eval_g(theta, sorted_abs, ball);
}

template <class Derived>
Vector<typename Derived::Scalar> project_owl_ball(const Eigen::MatrixBase<Derived>& v,
                                                  const OwlBall<typename Derived::Scalar>& ball,
                                                  const RootFindConfig<typename Derived::Scalar>& cfg = {})
{
    ProjectionContext<typename Derived::Scalar> ctx;
    return ctx.project(v, ball, cfg).x;
}

} // namespace owl
