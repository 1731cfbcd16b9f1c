#pragma once

// Problem, configuration and trace types shared by the OWL-regularized
// least-squares solvers.

#include "owl/error.hpp"
#include "owl/linear_operator.hpp"
#include "owl/norms.hpp"
#include "owl/prox.hpp"
#include "owl/root_find.hpp"
#include "owl/types.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace owl {

/// min 0.5 ||y - H x||^2 with H given as a linear operator.
template <LinearOperator Op>
struct RegressionProblem {
    using Scalar = typename Op::Scalar;

    RegressionProblem(Op op_, Vector<Scalar> y_, std::optional<Scalar> lipschitz_ = std::nullopt)
        : op(std::move(op_)), y(std::move(y_)), lipschitz(lipschitz_)
    {
        detail::require_same_size(op.rows(), y.size(), "RegressionProblem: rows of H vs length of y");
        detail::require(op.cols() > 0, "RegressionProblem: H has no columns");
        detail::require(y.allFinite(), "RegressionProblem: non-finite observation");
    }

    Index rows() const { return op.rows(); }
    Index cols() const { return op.cols(); }

    Op op;
    Vector<Scalar> y;
    /// lambda_max(H'H) when known.
    std::optional<Scalar> lipschitz;
};

template <class Scalar>
RegressionProblem<DenseOperator<Scalar>> make_problem(Matrix<Scalar> h, Vector<Scalar> y)
{
    return {DenseOperator<Scalar>(std::move(h)), std::move(y)};
}

/// Penalized form: 0.5 ||y - Hx||^2 + tau Omega_w(x).
template <class Scalar>
struct Tikhonov {
    Scalar tau{1};
};

/// Constrained form: min 0.5 ||y - Hx||^2 s.t. Omega_w(x) <= epsilon.
template <class Scalar>
struct Ivanov {
    Scalar epsilon{1};
};

template <class Scalar>
struct Regularization {
    WeightVector<Scalar> weights;
    std::variant<Tikhonov<Scalar>, Ivanov<Scalar>> formulation;

    bool is_ivanov() const { return std::holds_alternative<Ivanov<Scalar>>(formulation); }

    OwlBall<Scalar> ball() const
    {
        if (!is_ivanov()) throw InvalidArgument("Regularization: Tikhonov formulation has no constraint ball");
        return OwlBall<Scalar>(weights, std::get<Ivanov<Scalar>>(formulation).epsilon);
    }

    Scalar tau() const
    {
        if (is_ivanov()) throw InvalidArgument("Regularization: Ivanov formulation has no penalty weight");
        return std::get<Tikhonov<Scalar>>(formulation).tau;
    }

    void validate() const
    {
        if (is_ivanov()) {
            const Scalar eps = std::get<Ivanov<Scalar>>(formulation).epsilon;
            detail::require(std::isfinite(static_cast<double>(eps)) && eps > Scalar(0), "Ivanov: epsilon must be > 0");
        } else {
            const Scalar tau = std::get<Tikhonov<Scalar>>(formulation).tau;
            detail::require(std::isfinite(static_cast<double>(tau)) && tau >= Scalar(0), "Tikhonov: tau must be >= 0");
        }
    }
};

enum class Algorithm { ConditionalGradient, Fista, FistaBacktracking, Sparsa };

enum class StopRule {
    DualityGap,     // conditional gradient only
    RelativeChange, // ||x_k - x_{k-1}|| / ||x_{k-1}||
    MaxIterations,
};

inline std::string_view to_string(Algorithm a)
{
    switch (a) {
    case Algorithm::ConditionalGradient: return "cg";
    case Algorithm::Fista: return "fista";
    case Algorithm::FistaBacktracking: return "fista-bt";
    case Algorithm::Sparsa: return "sparsa";
    }
    return "?";
}

inline Algorithm parse_algorithm(std::string_view s)
{
    if (s == "cg") return Algorithm::ConditionalGradient;
    if (s == "fista") return Algorithm::Fista;
    if (s == "fista-bt") return Algorithm::FistaBacktracking;
    if (s == "sparsa") return Algorithm::Sparsa;
    throw InvalidArgument("unknown algorithm '" + std::string(s) + "'");
}

template <class Scalar>
struct SolverConfig {
    Algorithm algorithm = Algorithm::Sparsa;

    StopRule stop_rule = StopRule::RelativeChange;
    Scalar stop_tolerance{1e-8};
    Index max_iterations = 10000;
    double max_seconds = std::numeric_limits<double>::infinity();

    Scalar eta{2};
    Scalar alpha0{1};
    Scalar alpha_min{1e-30};
    Scalar alpha_max{1e30};
    /// Step-size increases allowed per iteration before giving up.
    int max_backtracks = 60;

    /// Starting point; zero when unset. Projected onto the ball for Ivanov problems.
    std::optional<Vector<Scalar>> x0;

    /// When set, the trace records ||x_k - reference||, and the run stops once
    /// that distance drops to reference_tolerance (if given).
    std::optional<Vector<Scalar>> reference;
    std::optional<Scalar> reference_tolerance;

    RootFindConfig<Scalar> root;
    bool record_trace = true;

    void validate(Index n) const
    {
        detail::require(eta > Scalar(1), "SolverConfig: eta must be > 1");
        detail::require(alpha0 > Scalar(0), "SolverConfig: alpha0 must be > 0");
        detail::require(alpha_min > Scalar(0) && alpha_min < alpha_max, "SolverConfig: need 0 < alpha_min < alpha_max");
        detail::require(max_iterations >= 0, "SolverConfig: max_iterations must be >= 0");
        detail::require(max_backtracks >= 0, "SolverConfig: max_backtracks must be >= 0");
        detail::require(stop_rule == StopRule::MaxIterations || stop_tolerance >= Scalar(0),
                        "SolverConfig: stop tolerance must be >= 0");
        if (stop_rule == StopRule::DualityGap) {
            detail::require(algorithm == Algorithm::ConditionalGradient,
                            "SolverConfig: duality-gap stopping is only available for conditional gradient");
        }
        if (x0) detail::require_same_size(x0->size(), n, "SolverConfig: x0");
        if (reference) detail::require_same_size(reference->size(), n, "SolverConfig: reference");
        root.validate();
    }
};

/// One row per iterate x_k (k = 0 is the starting point).
template <class Scalar>
struct TraceRecord {
    static constexpr Scalar nan = std::numeric_limits<Scalar>::quiet_NaN();

    Index k = 0;
    Scalar objective{nan};
    /// Duality gap for conditional gradient, relative iterate change otherwise.
    Scalar certificate{nan};
    /// gamma_k for conditional gradient, 1 / alpha_k otherwise.
    Scalar step{nan};
    int backtracks = 0;
    double time_s = 0.0;

    Scalar residual_sq{nan}; // ||H x_k - y||^2
    Scalar model_bound{nan}; // Q_alpha(x_k, u_k), backtracking FISTA only
    Scalar reference_distance{nan};
};

template <class Scalar>
using SolverTrace = std::vector<TraceRecord<Scalar>>;

enum class SolverStatus { Converged, MaxIterations, TimeLimit, ReachedReference };

inline std::string_view to_string(SolverStatus s)
{
    switch (s) {
    case SolverStatus::Converged: return "converged";
    case SolverStatus::MaxIterations: return "max-iterations";
    case SolverStatus::TimeLimit: return "time-limit";
    case SolverStatus::ReachedReference: return "reached-reference";
    }
    return "?";
}

template <class Scalar>
struct SolverResult {
    Vector<Scalar> x;
    SolverTrace<Scalar> trace;
    SolverStatus status = SolverStatus::MaxIterations;
    Index iterations = 0;
};

/// A step-size search ran out of increases; carries the last accepted iterate.
template <class Scalar>
class BacktrackingFailure : public NumericalError {
public:
    BacktrackingFailure(const std::string& what, SolverResult<Scalar> partial)
        : NumericalError(what), partial_(std::move(partial))
    {
    }
    const SolverResult<Scalar>& partial() const { return partial_; }

private:
    SolverResult<Scalar> partial_;
};

namespace detail {

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

template <class Scalar>
Scalar relative_change(const Vector<Scalar>& x, const Vector<Scalar>& x_prev)
{
    const Scalar denom = x_prev.norm();
    const Scalar num = (x - x_prev).norm();
    if (denom == Scalar(0)) return num == Scalar(0) ? Scalar(0) : std::numeric_limits<Scalar>::infinity();
    return num / denom;
}

// Shared bookkeeping: trace rows and the stopping tests common to all solvers.
template <class Scalar>
class RunMonitor {
public:
    explicit RunMonitor(const SolverConfig<Scalar>& cfg) : cfg_(cfg) {}

    double elapsed() const { return clock_.seconds(); }

    /// Appends a row (filling time and reference distance) and returns the
    /// stop status, if any, triggered by the general criteria.
    std::optional<SolverStatus> record(SolverTrace<Scalar>& trace, TraceRecord<Scalar> row, const Vector<Scalar>& x)
    {
        row.time_s = clock_.seconds();
        if (cfg_.reference) row.reference_distance = (x - *cfg_.reference).norm();
        if (cfg_.record_trace) trace.push_back(row);
        last_ = row;

        if (cfg_.reference && cfg_.reference_tolerance && row.reference_distance <= *cfg_.reference_tolerance) {
            return SolverStatus::ReachedReference;
        }
        if (cfg_.stop_rule != StopRule::MaxIterations && !std::isnan(row.certificate) &&
            row.certificate <= cfg_.stop_tolerance) {
            return SolverStatus::Converged;
        }
        if (row.k >= cfg_.max_iterations) return SolverStatus::MaxIterations;
        if (row.time_s >= cfg_.max_seconds) return SolverStatus::TimeLimit;
        return std::nullopt;
    }

    const TraceRecord<Scalar>& last() const { return last_; }

private:
    const SolverConfig<Scalar>& cfg_;
    Stopwatch clock_;
    TraceRecord<Scalar> last_;
};

/// Incrementally updated residuals are recomputed from scratch this often.
inline constexpr Index kResidualRefresh = 128;

template <class Scalar>
Vector<Scalar> starting_point(const SolverConfig<Scalar>& cfg, Index n)
{
    return cfg.x0 ? *cfg.x0 : Vector<Scalar>::Zero(n);
}

/// Relative |g| tolerance of projections inside the solvers when none is given.
inline constexpr double kSolverRootTolerance = 1e-15;

// Proximal step shared by SpaRSA and FISTA: projection onto the ball for
// Ivanov problems, prox of (tau / alpha) Omega_w for Tikhonov problems.
//
// Unset root tolerances are tightened well below the standalone projection
// defaults. Near the solution the progress per step is smaller than the
// feasibility error a 1e-10 tolerance leaves along the ball normal, and the
// monotone acceptance tests would then stall.
template <class Scalar>
class ProximalStep {
public:
    ProximalStep(const Regularization<Scalar>& reg, const RootFindConfig<Scalar>& root) : reg_(reg), root_(root)
    {
        if (reg.is_ivanov()) {
            ball_.emplace(reg.ball());
            if (!root_.tol_g) root_.tol_g = Scalar(kSolverRootTolerance) * ball_->radius();
            if (!root_.tol_theta) root_.tol_theta = std::numeric_limits<Scalar>::min();
        }
    }

    Vector<Scalar> operator()(const Vector<Scalar>& v, Scalar alpha)
    {
        if (ball_) return ctx_.project(v, *ball_, root_).x;
        return ctx_.prox(v, reg_.weights, reg_.tau() / alpha);
    }

    /// tau Omega_w(x) when penalized, 0 when constrained.
    Scalar penalty(const Vector<Scalar>& x) const
    {
        return ball_ ? Scalar(0) : reg_.tau() * owl_norm(x, reg_.weights);
    }

    /// Full objective: 0.5 ||Hx - y||^2, plus tau Omega_w(x) when penalized.
    Scalar objective(Scalar residual_sq, const Vector<Scalar>& x) const
    {
        return Scalar(0.5) * residual_sq + penalty(x);
    }

    bool constrained() const { return ball_.has_value(); }

private:
    const Regularization<Scalar>& reg_;
    RootFindConfig<Scalar> root_;
    std::optional<OwlBall<Scalar>> ball_;
    ProjectionContext<Scalar> ctx_;
};

} // namespace detail
} // namespace owl
