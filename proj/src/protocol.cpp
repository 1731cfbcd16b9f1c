#include "owl/bench/protocol.hpp"

#include "owl/bench/io.hpp"
#include "owl/solvers.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>

namespace owl::bench {

namespace {

using json = nlohmann::json;

std::string trace_name(const AlgorithmRun& run)
{
    return "trace_" + std::string(to_string(run.algorithm)) + (run.ivanov ? "" : "_owlt") + ".csv";
}

void fill_milestones(AlgorithmRun& run, const std::vector<double>& milestones)
{
    run.time_to.assign(milestones.size(), std::nullopt);
    run.iterations_to.assign(milestones.size(), std::nullopt);
    for (const auto& row : run.trace) {
        for (std::size_t i = 0; i < milestones.size(); ++i) {
            if (!run.time_to[i] && row.reference_distance <= milestones[i]) {
                run.time_to[i] = row.time_s;
                run.iterations_to[i] = row.k;
            }
        }
    }
}

AlgorithmRun run_one(const RegressionProblem<DenseOperator<double>>& problem, const SyntheticData& data,
                     const ProtocolReport& report, Algorithm algo, bool ivanov)
{
    const ProtocolOptions& opts = report.options;
    AlgorithmRun run;
    run.algorithm = algo;
    run.ivanov = ivanov;
    run.label = std::string(to_string(algo)) + (ivanov ? "/owl-i" : "/owl-t");

    const WeightVector<double> w = oscar_weights(opts.oscar, problem.cols());
    Regularization<double> reg{w, ivanov ? decltype(Regularization<double>::formulation)(Ivanov<double>{report.epsilon})
                                         : decltype(Regularization<double>::formulation)(Tikhonov<double>{opts.tau})};

    SolverConfig<double> cfg;
    cfg.algorithm = algo;
    cfg.stop_rule = algo == Algorithm::ConditionalGradient ? StopRule::DualityGap : StopRule::RelativeChange;
    cfg.stop_tolerance = opts.run_stop_tolerance;
    cfg.max_iterations = opts.run_max_iterations;
    cfg.max_seconds = opts.run_max_seconds;
    cfg.reference = report.x_star;
    cfg.reference_tolerance = opts.target_distance;

    Eigen::VectorXd x;
    try {
        auto result = solve(problem, reg, cfg);
        run.status = result.status;
        run.iterations = result.iterations;
        run.trace = std::move(result.trace);
        x = std::move(result.x);
    } catch (const BacktrackingFailure<double>& e) {
        run.failed = true;
        run.error = e.what();
        run.trace = e.partial().trace;
        x = e.partial().x;
    } catch (const std::exception& e) {
        run.failed = true;
        run.error = e.what();
    }
    if (!run.trace.empty()) run.seconds = run.trace.back().time_s;
    if (x.size() == data.x_true.size()) {
        run.final_distance = (x - report.x_star).norm();
        run.final_mse = mse(x, data.x_true);
    }
    fill_milestones(run, opts.milestones);
    return run;
}

json optional_json(const std::optional<double>& v)
{
    return v ? json(*v) : json(nullptr);
}

} // namespace

const AlgorithmRun* ProtocolReport::find(Algorithm a, bool ivanov) const
{
    for (const auto& r : runs)
        if (r.algorithm == a && r.ivanov == ivanov) return &r;
    return nullptr;
}

std::string default_output_dir()
{
    const char* env = std::getenv("OWL_OUTPUT_DIR");
    return env && *env ? std::string(env) : std::string("owl_out");
}

ProtocolReport run_protocol(const SyntheticData& data, const ProtocolOptions& opts)
{
    detail::require(opts.target_distance >= 0.0, "run_protocol: target distance must be >= 0");
    ProtocolReport report;
    report.spec = data.spec;
    report.options = opts;

    auto problem = make_problem<double>(data.h, data.y);
    const auto lip = estimate_lipschitz(problem.op);
    report.lipschitz = lip.value;
    problem.lipschitz = lip.value;

    const WeightVector<double> w = oscar_weights(opts.oscar, problem.cols());
    {
        Regularization<double> reg{w, Tikhonov<double>{opts.tau}};
        SolverConfig<double> cfg;
        cfg.algorithm = Algorithm::Fista;
        cfg.stop_tolerance = opts.tight_tolerance;
        cfg.max_iterations = opts.tight_max_iterations;
        cfg.record_trace = false;
        detail::Stopwatch clock;
        auto tight = fista_solve(problem, reg, false, cfg);
        report.tight_seconds = clock.seconds();
        report.tight_iterations = tight.iterations;
        report.tight_status = tight.status;
        report.x_star = std::move(tight.x);
    }
    report.epsilon = owl_norm(report.x_star, w);
    report.x_star_mse = mse(report.x_star, data.x_true);
    detail::require(report.epsilon > 0.0, "run_protocol: OWL-T solution is zero; epsilon would be 0");

    const AlgorithmRun* failure = nullptr;
    auto add = [&](Algorithm a, bool ivanov) {
        report.runs.push_back(run_one(problem, data, report, a, ivanov));
        if (report.runs.back().failed) failure = &report.runs.back();
    };
    for (Algorithm a : opts.algorithms) {
        add(a, true);
        if (failure) break;
    }
    if (!failure && opts.run_tikhonov) {
        for (Algorithm a : {Algorithm::Fista, Algorithm::Sparsa}) {
            add(a, false);
            if (failure) break;
        }
    }

    if (opts.out_dir) write_protocol_outputs(report, *opts.out_dir);
    if (failure) throw NumericalError("run_protocol: " + failure->label + " failed: " + failure->error);
    return report;
}

ProtocolReport run_protocol(const SyntheticSpec& spec, const ProtocolOptions& opts)
{
    return run_protocol(generate(spec), opts);
}

void write_protocol_outputs(const ProtocolReport& report, const std::string& dir)
{
    std::filesystem::create_directories(dir);
    const std::filesystem::path root(dir);

    json runs = json::array();
    for (const auto& run : report.runs) {
        {
            std::ofstream out(root / trace_name(run));
            if (!out) throw InvalidArgument("cannot write trace in '" + dir + "'");
            out << "k,time_s,distance,objective,certificate\n";
            for (const auto& r : run.trace) {
                out << r.k << ',' << format_double(r.time_s) << ',' << format_double(r.reference_distance) << ','
                    << format_double(r.objective) << ',' << format_double(r.certificate) << '\n';
            }
        }
        json milestones = json::array();
        for (std::size_t i = 0; i < report.options.milestones.size(); ++i) {
            milestones.push_back({{"distance", report.options.milestones[i]},
                                  {"time_s", optional_json(run.time_to[i])},
                                  {"iteration", run.iterations_to[i] ? json(*run.iterations_to[i]) : json(nullptr)}});
        }
        runs.push_back({{"algorithm", to_string(run.algorithm)},
                        {"formulation", run.ivanov ? "owl-i" : "owl-t"},
                        {"trace", trace_name(run)},
                        {"failed", run.failed},
                        {"error", run.error},
                        {"status", to_string(run.status)},
                        {"iterations", run.iterations},
                        {"seconds", run.seconds},
                        {"final_distance", run.final_distance},
                        {"final_mse", run.final_mse},
                        {"milestones", milestones}});
    }

    const auto& s = report.spec;
    json summary = {
        {"spec",
         {{"n", s.n()}, {"m", s.m()}, {"rho", s.rho}, {"design", to_string(s.kind)},
          {"noise_variance", s.noise_variance}, {"seed", s.seed}}},
        {"lambda1", report.options.oscar.lambda1},
        {"lambda2", report.options.oscar.lambda2},
        {"tau", report.options.tau},
        {"lipschitz", report.lipschitz},
        {"epsilon", report.epsilon},
        {"reference",
         {{"iterations", report.tight_iterations},
          {"status", to_string(report.tight_status)},
          {"seconds", report.tight_seconds},
          {"mse", report.x_star_mse}}},
        {"complete", std::none_of(report.runs.begin(), report.runs.end(), [](const auto& r) { return r.failed; })},
        {"runs", runs},
    };
    std::ofstream out(root / "summary.json");
    if (!out) throw InvalidArgument("cannot write summary.json in '" + dir + "'");
    out << summary.dump(2) << '\n';
}

} // namespace owl::bench
