#pragma once

// Bracketed root finding for a monotone non-increasing scalar function:
// Brent's method (inverse quadratic / secant steps with bisection fallback).

#include "owl/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <utility>

namespace owl {

template <class Scalar>
struct RootFindConfig {
    /// Absolute tolerance on the bracket width; unset means 1e-10 * (hi - lo).
    std::optional<Scalar> tol_theta;
    /// Absolute tolerance on |g|; unset means a caller-chosen default
    /// (1e-10 * radius for the OWL-ball projection, 1e-10 * |g(lo)| otherwise).
    std::optional<Scalar> tol_g;
    int max_iterations = 200;

    static constexpr double default_relative_tolerance = 1e-10;

    void validate() const
    {
        detail::require(max_iterations >= 1, "RootFindConfig: max_iterations must be >= 1");
        detail::require(!tol_theta || *tol_theta > Scalar(0), "RootFindConfig: tol_theta must be > 0");
        detail::require(!tol_g || *tol_g > Scalar(0), "RootFindConfig: tol_g must be > 0");
    }
};

enum class RootStatus { Converged, MaxIterations };

template <class Scalar>
struct RootResult {
    Scalar root{0};
    Scalar value{0}; // g(root)
    int iterations = 0;
    int evaluations = 0;
    RootStatus status = RootStatus::Converged;
    /// Final bracket [lo, hi] with g(lo) >= 0 >= g(hi).
    Scalar bracket_lo{0};
    Scalar bracket_hi{0};

    bool converged() const { return status == RootStatus::Converged; }
};

/// Finds theta in [lo, hi] with g(theta) ~ 0, given g(lo) >= 0 >= g(hi).
///
/// Stops when |g| <= tol_g or the bracket is narrower than tol_theta. g is
/// never evaluated outside [lo, hi]. On hitting max_iterations the midpoint
/// of the final bracket is returned with status MaxIterations.
template <class Scalar, class Fn>
RootResult<Scalar> find_root(Fn&& g, Scalar lo, Scalar hi, const RootFindConfig<Scalar>& cfg = {})
{
    cfg.validate();
    detail::require(std::isfinite(static_cast<double>(lo)) && std::isfinite(static_cast<double>(hi)) && lo <= hi,
                    "find_root: bracket must satisfy lo <= hi");

    RootResult<Scalar> r;
    Scalar a = lo, b = hi;
    Scalar fa = g(a), fb = g(b);
    r.evaluations = 2;
    if (!(fa >= Scalar(0) && fb <= Scalar(0))) {
        std::ostringstream os;
        os << "find_root: invalid bracket, g(" << lo << ") = " << fa << ", g(" << hi << ") = " << fb;
        throw InvalidArgument(os.str());
    }

    const Scalar tol_theta =
        cfg.tol_theta ? *cfg.tol_theta : Scalar(RootFindConfig<Scalar>::default_relative_tolerance) * (hi - lo);
    const Scalar tol_g =
        cfg.tol_g ? *cfg.tol_g : Scalar(RootFindConfig<Scalar>::default_relative_tolerance) * std::abs(fa);

    auto finish = [&](Scalar root, Scalar value, RootStatus status) {
        r.root = root;
        r.value = value;
        r.status = status;
        r.bracket_lo = lo;
        r.bracket_hi = hi;
        return r;
    };

    if (fa == Scalar(0) || std::abs(fa) <= tol_g) return finish(a, fa, RootStatus::Converged);
    if (fb == Scalar(0) || std::abs(fb) <= tol_g) return finish(b, fb, RootStatus::Converged);
    if (hi - lo <= tol_theta) {
        return std::abs(fa) <= std::abs(fb) ? finish(a, fa, RootStatus::Converged)
                                            : finish(b, fb, RootStatus::Converged);
    }

    // Brent's zeroin: b is the best estimate, c the contrapoint.
    Scalar c = a, fc = fa;
    Scalar d = b - a, e = d;
    for (int it = 1; it <= cfg.max_iterations; ++it) {
        r.iterations = it;
        if ((fb > Scalar(0) && fc > Scalar(0)) || (fb < Scalar(0) && fc < Scalar(0))) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const Scalar half_tol = Scalar(2) * std::numeric_limits<Scalar>::epsilon() * std::abs(b) + Scalar(0.5) * tol_theta;
        const Scalar m = Scalar(0.5) * (c - b);
        if (std::abs(fb) <= tol_g || std::abs(m) <= half_tol || fb == Scalar(0)) {
            r.root = b;
            r.value = fb;
            r.status = RootStatus::Converged;
            r.bracket_lo = std::min(b, c);
            r.bracket_hi = std::max(b, c);
            return r;
        }
        if (std::abs(e) >= half_tol && std::abs(fa) > std::abs(fb)) {
            Scalar p, q;
            const Scalar s = fb / fa;
            if (a == c) {
                p = Scalar(2) * m * s;
                q = Scalar(1) - s;
            } else {
                const Scalar qa = fa / fc;
                const Scalar rb = fb / fc;
                p = s * (Scalar(2) * m * qa * (qa - rb) - (b - a) * (rb - Scalar(1)));
                q = (qa - Scalar(1)) * (rb - Scalar(1)) * (s - Scalar(1));
            }
            if (p > Scalar(0)) q = -q;
            else p = -p;
            if (Scalar(2) * p < std::min(Scalar(3) * m * q - std::abs(half_tol * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        if (std::abs(d) > half_tol) b += d;
        else b += (m > Scalar(0) ? half_tol : -half_tol);
        b = std::clamp(b, lo, hi);
        fb = g(b);
        ++r.evaluations;
    }

    const Scalar left = std::min(b, c), right = std::max(b, c);
    const Scalar mid = Scalar(0.5) * (left + right);
    r.root = mid;
    r.value = g(mid);
    ++r.evaluations;
    r.status = RootStatus::MaxIterations;
    r.bracket_lo = left;
    r.bracket_hi = right;
    return r;
}

} // namespace owl
