#pragma once

#include "owl/solvers/common.hpp"
#include "owl/solvers/conditional_gradient.hpp"
#include "owl/solvers/fista.hpp"
#include "owl/solvers/sparsa.hpp"

namespace owl {

/// Runs cfg.algorithm on the given formulation. Conditional gradient needs
/// the constrained (Ivanov) form.
template <LinearOperator Op>
SolverResult<typename Op::Scalar> solve(const RegressionProblem<Op>& p, const Regularization<typename Op::Scalar>& reg,
                                        const SolverConfig<typename Op::Scalar>& cfg)
{
    switch (cfg.algorithm) {
    case Algorithm::ConditionalGradient:
        if (!reg.is_ivanov()) throw InvalidArgument("conditional gradient requires the constrained (owl-i) formulation");
        return cg_solve(p, reg.ball(), cfg);
    case Algorithm::Fista: return fista_solve(p, reg, false, cfg);
    case Algorithm::FistaBacktracking: return fista_solve(p, reg, true, cfg);
    case Algorithm::Sparsa: return sparsa_solve(p, reg, cfg);
    }
    throw InvalidArgument("solve: unknown algorithm");
}

} // namespace owl
