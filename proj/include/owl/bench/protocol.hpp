#pragma once

// Two-phase solver comparison on a synthetic instance:
//   1. a tight FISTA solve of the penalized (OWL-T) problem gives x*;
//   2. each algorithm solves the constrained (OWL-I) problem with radius
//      eps = Omega_w(x*), recording ||x_k - x*|| against iteration and time.
// FISTA and SpaRSA additionally run on OWL-T for comparison.

#include "owl/bench/synthetic.hpp"
#include "owl/norms.hpp"
#include "owl/solvers/common.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace owl::bench {

struct ProtocolOptions {
    OscarParams<double> oscar{1e-3, 1e-5};
    double tau = 1.0;
    std::vector<Algorithm> algorithms{Algorithm::ConditionalGradient, Algorithm::Fista, Algorithm::FistaBacktracking,
                                      Algorithm::Sparsa};
    bool run_tikhonov = true;

    double tight_tolerance = 1e-10;
    Index tight_max_iterations = 1000000;

    /// Comparison runs stop once ||x_k - x*|| reaches this.
    double target_distance = 1e-4;
    std::vector<double> milestones{1e-3, 1e-4};
    /// Relative-change (or, for CG, duality-gap) tolerance of comparison runs.
    double run_stop_tolerance = 1e-14;
    Index run_max_iterations = 1000000;
    double run_max_seconds = 120.0;

    /// Where traces and summary.json go; nothing is written when unset.
    std::optional<std::string> out_dir;
};

struct AlgorithmRun {
    std::string label;
    Algorithm algorithm = Algorithm::Sparsa;
    bool ivanov = true;

    bool failed = false;
    std::string error;
    SolverStatus status = SolverStatus::MaxIterations;
    Index iterations = 0;
    double seconds = 0.0;
    double final_distance = 0.0;
    double final_mse = 0.0;
    /// Per milestone: first time / iteration at which ||x_k - x*|| <= milestone.
    std::vector<std::optional<double>> time_to;
    std::vector<std::optional<Index>> iterations_to;
    SolverTrace<double> trace;
};

struct ProtocolReport {
    SyntheticSpec spec;
    ProtocolOptions options;
    double lipschitz = 0.0;
    double epsilon = 0.0;
    Eigen::VectorXd x_star;
    Index tight_iterations = 0;
    SolverStatus tight_status = SolverStatus::MaxIterations;
    double tight_seconds = 0.0;
    double x_star_mse = 0.0;
    std::vector<AlgorithmRun> runs;

    const AlgorithmRun* find(Algorithm a, bool ivanov) const;
};

/// Output directory from OWL_OUTPUT_DIR, or "owl_out".
std::string default_output_dir();

/// Runs the protocol on an already generated instance.
ProtocolReport run_protocol(const SyntheticData& data, const ProtocolOptions& opts);
ProtocolReport run_protocol(const SyntheticSpec& spec, const ProtocolOptions& opts);

void write_protocol_outputs(const ProtocolReport& report, const std::string& dir);

} // namespace owl::bench
