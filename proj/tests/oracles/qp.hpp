#pragma once

// Dense primal-dual interior-point solver for small convex QPs
//   min 0.5 z'Pz + q'z  s.t.  Gz <= h
// (Mehrotra predictor-corrector). Test oracle only: it knows nothing about
// OWL norms and is used to cross-check the sort/PAV based routines.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oracle {

struct QpResult {
    Eigen::VectorXd z;
    double gap = 0.0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    int iterations = 0;
    bool converged = false;
};

using Real = long double;
using Vec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
using Mat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

inline Real max_step(const Vec& v, const Vec& dv)
{
    Real a = 1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (dv[i] < 0.0) a = std::min(a, -v[i] / dv[i]);
    return a;
}

inline QpResult solve_qp(const Eigen::MatrixXd& P_, const Eigen::VectorXd& q_, const Eigen::MatrixXd& G_,
                         const Eigen::VectorXd& h_, double tol = 1e-15, int max_iter = 300)
{
    // extended precision keeps the normal equations usable close to the optimum
    const Mat P = P_.cast<Real>(), G = G_.cast<Real>();
    const Vec q = q_.cast<Real>(), h = h_.cast<Real>();
    const Eigen::Index n = q.size(), m = h.size();
    // start from the least-squares fit of the constraints, with slacks pushed inside
    Vec z = (P + G.transpose() * G).ldlt().solve(G.transpose() * h - q);
    if (!z.allFinite()) z.setZero();
    Vec s = (h - G * z).cwiseAbs().array() + Real(1);
    Vec lam = Vec::Ones(m);
    const Real scale = 1.0 + std::max(q.lpNorm<Eigen::Infinity>(), h.lpNorm<Eigen::Infinity>());

    QpResult res;
    for (int it = 0; it < max_iter; ++it) {
        const Vec rd = P * z + q + G.transpose() * lam;
        const Vec rp = G * z + s - h;
        const Real mu = s.dot(lam) / static_cast<Real>(m);
        res.iterations = it;
        res.gap = static_cast<double>(s.dot(lam));
        res.primal_residual = static_cast<double>(rp.lpNorm<Eigen::Infinity>());
        res.dual_residual = static_cast<double>(rd.lpNorm<Eigen::Infinity>());
        if (res.primal_residual <= tol * scale && res.dual_residual <= tol * scale && res.gap <= tol * scale) {
            res.converged = true;
            break;
        }

        const Vec d = lam.cwiseQuotient(s);
        const Mat K = P + G.transpose() * d.asDiagonal() * G;
        const Eigen::LDLT<Mat> ldlt(K);

        auto newton = [&](const Vec& rc, Vec& dz, Vec& ds, Vec& dl) {
            // rc = S Lambda e - sigma mu e (+ corrector); solves the linearized KKT system
            const Vec rhs = -rd - G.transpose() * (d.cwiseProduct(rp) - rc.cwiseQuotient(s));
            dz = ldlt.solve(rhs);
            ds = -rp - G * dz;
            dl = (-rc - lam.cwiseProduct(ds)).cwiseQuotient(s);
        };

        Vec dz, ds, dl;
        const Vec sl = s.cwiseProduct(lam);
        newton(sl, dz, ds, dl);
        const Real a_aff = std::min(max_step(s, ds), max_step(lam, dl));
        const Real mu_aff = (s + a_aff * ds).dot(lam + a_aff * dl) / static_cast<Real>(m);
        const Real sigma = std::min(Real(1), std::pow(mu_aff / mu, Real(3)));

        const Vec rc = sl + ds.cwiseProduct(dl) - Vec::Constant(m, sigma * mu);
        newton(rc, dz, ds, dl);
        const Real a = std::min(Real(1), Real(0.99) * std::min(max_step(s, ds), max_step(lam, dl)));
        // at the limit of double precision the Newton system degenerates; keep the last good point
        if (!dz.allFinite() || !ds.allFinite() || !dl.allFinite() || !(a > Real(0))) break;
        z += a * dz;
        s += a * ds;
        lam += a * dl;
    }
    res.z = z.cast<double>();
    return res;
}

} // namespace oracle
