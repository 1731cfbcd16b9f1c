// Command-line front end: prox, project, atoms, solve, gen-data, bench, mse.
// Results go to stdout as JSON; vectors are read from CSV/JSON files or "-".

#include "owl/bench/io.hpp"
#include "owl/bench/protocol.hpp"
#include "owl/bench/synthetic.hpp"
#include "owl/owl.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using json = nlohmann::json;
using owl::Index;
using Vec = Eigen::VectorXd;

json to_json(const Vec& v)
{
    json a = json::array();
    for (Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

void emit(const json& j)
{
    std::cout << j.dump(2) << '\n';
}

struct WeightArgs {
    std::string file;
    std::optional<double> lambda1;
    double lambda2 = 0.0;

    void add(CLI::App* app)
    {
        auto* wf = app->add_option("--weights", file, "Weight vector file (CSV column or JSON array)");
        auto* l1 = app->add_option("--lambda1", lambda1, "OSCAR lambda1 (w_i = lambda1 + lambda2 (n - i))");
        app->add_option("--lambda2", lambda2, "OSCAR lambda2")->capture_default_str();
        wf->excludes(l1);
    }

    owl::WeightVector<double> resolve(Index n) const
    {
        if (!file.empty()) {
            auto w = owl::bench::read_weights(file);
            owl::detail::require_same_size(w.size(), n, "weights");
            return w;
        }
        if (!lambda1) throw owl::InvalidArgument("either --weights or --lambda1 is required");
        return owl::oscar_weights(owl::OscarParams<double>{*lambda1, lambda2}, n);
    }
};

struct RootArgs {
    std::optional<double> tol_theta, tol_g;
    int max_iter = 200;

    void add(CLI::App* app)
    {
        app->add_option("--tol-theta", tol_theta, "Root-finder tolerance on theta");
        app->add_option("--tol-g", tol_g, "Root-finder tolerance on the constraint residual");
        app->add_option("--root-max-iter", max_iter, "Root-finder iteration cap")->capture_default_str();
    }

    owl::RootFindConfig<double> config() const
    {
        owl::RootFindConfig<double> c;
        c.tol_theta = tol_theta;
        c.tol_g = tol_g;
        c.max_iterations = max_iter;
        return c;
    }
};

struct SpecArgs {
    owl::bench::SyntheticSpec spec;
    std::string design = "correlated";

    void add(CLI::App* app)
    {
        app->add_option("--scale", spec.scale, "Ground-truth scale d (n = 1000 d)")->capture_default_str();
        app->add_option("--columns", spec.columns, "Explicit column count, a multiple of 20");
        app->add_option("--rows", spec.rows, "Row count (default: square)");
        app->add_option("--rho", spec.rho, "Column correlation")->capture_default_str();
        app->add_option("--design", design, "correlated | gaussian")->capture_default_str();
        app->add_option("--noise", spec.noise_variance, "Noise variance")->capture_default_str();
        app->add_option("--seed", spec.seed, "Random seed")->capture_default_str();
    }

    owl::bench::SyntheticSpec resolve() const
    {
        auto s = spec;
        s.kind = owl::bench::parse_design_kind(design);
        s.validate();
        return s;
    }
};

json spec_json(const owl::bench::SyntheticSpec& s)
{
    return {{"scale", s.scale},        {"n", s.n()},     {"m", s.m()},
            {"rho", s.rho},            {"design", owl::bench::to_string(s.kind)},
            {"noise_variance", s.noise_variance}, {"seed", s.seed}};
}

std::vector<owl::Algorithm> parse_algorithms(const std::vector<std::string>& names)
{
    std::vector<owl::Algorithm> out;
    for (const auto& s : names) out.push_back(owl::parse_algorithm(s));
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"OWL norm toolkit: prox, projection, atoms and regularized least squares"};
    app.require_subcommand(1);

    // prox
    auto* prox = app.add_subcommand("prox", "Proximity operator of theta * Omega_w");
    std::string prox_in = "-", prox_out;
    double theta = 0.0;
    WeightArgs prox_w;
    prox->add_option("input", prox_in, "Input vector file, '-' for stdin")->capture_default_str();
    prox->add_option("--theta", theta, "Scale theta >= 0")->required();
    prox->add_option("--output", prox_out, "Also write the result vector here");
    prox_w.add(prox);

    // project
    auto* project = app.add_subcommand("project", "Euclidean projection onto the OWL ball");
    std::string proj_in = "-", proj_out;
    double epsilon = 0.0;
    WeightArgs proj_w;
    RootArgs proj_root;
    project->add_option("input", proj_in, "Input vector file, '-' for stdin")->capture_default_str();
    project->add_option("--epsilon", epsilon, "Ball radius")->required();
    project->add_option("--output", proj_out, "Also write the result vector here");
    proj_w.add(project);
    proj_root.add(project);

    // atoms
    auto* atoms = app.add_subcommand("atoms", "Base atoms, enumeration and the linear oracle");
    Index atoms_dim = 0;
    bool enumerate = false;
    std::string oracle_in;
    double oracle_radius = 1.0;
    WeightArgs atoms_w;
    atoms->add_option("--dim", atoms_dim, "Dimension n")->required();
    atoms->add_flag("--enumerate", enumerate, "List all 3^n - 1 signed atoms (n <= 12)");
    atoms->add_option("--oracle", oracle_in, "Gradient file: report the maximizing atom of the ball");
    atoms->add_option("--epsilon", oracle_radius, "Radius for --oracle")->capture_default_str();
    atoms_w.add(atoms);

    // solve
    auto* solve = app.add_subcommand("solve", "OWL-regularized least squares");
    std::string h_path, y_path, formulation = "owl-i", algo = "sparsa", trace_path, solution_path, x0_path;
    std::optional<double> tau, solve_eps;
    double stop_tol = 1e-8, max_seconds = std::numeric_limits<double>::infinity();
    Index max_iter = 10000;
    WeightArgs solve_w;
    RootArgs solve_root;
    solve->add_option("--design", h_path, "Design matrix CSV (m x n)")->required();
    solve->add_option("--observations", y_path, "Observation vector file")->required();
    solve->add_option("--formulation", formulation, "owl-t | owl-i")
        ->check(CLI::IsMember({"owl-t", "owl-i"}))
        ->capture_default_str();
    solve->add_option("--algo", algo, "cg | fista | fista-bt | sparsa")
        ->check(CLI::IsMember({"cg", "fista", "fista-bt", "sparsa"}))
        ->capture_default_str();
    solve->add_option("--tau", tau, "Penalty weight (owl-t)");
    solve->add_option("--epsilon", solve_eps, "Ball radius (owl-i)");
    solve->add_option("--stop-tol", stop_tol, "Duality gap (cg) or relative change tolerance")->capture_default_str();
    solve->add_option("--max-iter", max_iter, "Iteration cap")->capture_default_str();
    solve->add_option("--max-seconds", max_seconds, "Wall-time cap");
    solve->add_option("--x0", x0_path, "Starting point file");
    solve->add_option("--trace", trace_path, "Trace CSV output");
    solve->add_option("--solution", solution_path, "Solution output (CSV, or JSON if *.json)");
    solve_w.add(solve);
    solve_root.add(solve);

    // gen-data
    auto* gen = app.add_subcommand("gen-data", "Write a synthetic instance: H.csv, y.csv, xtrue.csv, spec.json");
    SpecArgs gen_spec;
    std::string gen_out;
    gen_spec.add(gen);
    gen->add_option("--out", gen_out, "Output directory (default: $OWL_OUTPUT_DIR or owl_out)");

    // bench
    auto* bench = app.add_subcommand("bench", "Run the solver comparison protocol");
    SpecArgs bench_spec;
    owl::bench::ProtocolOptions popts;
    std::vector<std::string> bench_algos{"cg", "fista", "fista-bt", "sparsa"};
    std::string bench_out;
    bool no_owlt = false;
    bench_spec.add(bench);
    bench->add_option("--lambda1", popts.oscar.lambda1, "OSCAR lambda1")->capture_default_str();
    bench->add_option("--lambda2", popts.oscar.lambda2, "OSCAR lambda2")->capture_default_str();
    bench->add_option("--tau", popts.tau, "Penalty weight of the reference problem")->capture_default_str();
    bench->add_option("--algos", bench_algos, "Algorithms run on OWL-I")->delimiter(',')->capture_default_str();
    bench->add_flag("--no-owlt", no_owlt, "Skip the FISTA/SpaRSA OWL-T runs");
    bench->add_option("--tight-tol", popts.tight_tolerance, "Reference solve tolerance")->capture_default_str();
    bench->add_option("--target", popts.target_distance, "Stop runs at this distance to x*")->capture_default_str();
    bench->add_option("--max-seconds", popts.run_max_seconds, "Wall-time cap per run")->capture_default_str();
    bench->add_option("--max-iter", popts.run_max_iterations, "Iteration cap per run")->capture_default_str();
    bench->add_option("--out", bench_out, "Output directory (default: $OWL_OUTPUT_DIR or owl_out)");

    // mse
    auto* mse = app.add_subcommand("mse", "||x - x_true||^2 / n");
    std::string mse_x, mse_true;
    mse->add_option("x", mse_x, "Estimate file")->required();
    mse->add_option("xtrue", mse_true, "Ground-truth file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*prox) {
            const Vec v = owl::bench::read_vector(prox_in);
            const auto w = prox_w.resolve(v.size());
            const Vec x = owl::prox_owl(v, w, theta);
            if (!prox_out.empty()) owl::bench::write_vector(prox_out, x);
            emit({{"n", v.size()}, {"theta", theta}, {"norm", owl::owl_norm(x, w)}, {"x", to_json(x)}});
        } else if (*project) {
            const Vec v = owl::bench::read_vector(proj_in);
            const owl::OwlBall<double> ball(proj_w.resolve(v.size()), epsilon);
            owl::ProjectionContext<double> ctx;
            const auto r = ctx.project(v, ball, proj_root.config());
            if (!proj_out.empty()) owl::bench::write_vector(proj_out, r.x);
            const auto& d = r.diagnostics;
            emit({{"n", v.size()},
                  {"epsilon", epsilon},
                  {"interior", d.interior},
                  {"input_norm", d.input_norm},
                  {"norm", owl::owl_norm(r.x, ball.weights())},
                  {"theta", d.theta},
                  {"iterations", d.iterations},
                  {"evaluations", d.evaluations},
                  {"residual", d.residual},
                  {"bracket_width", d.bracket_width},
                  {"status", d.status == owl::RootStatus::Converged ? "converged" : "max-iterations"},
                  {"x", to_json(r.x)}});
        } else if (*atoms) {
            const auto w = atoms_w.resolve(atoms_dim);
            json out;
            out["n"] = atoms_dim;
            json levels = json::array();
            for (const auto& a : owl::base_atoms(w)) levels.push_back({{"level", a.level}, {"tau", a.tau}});
            out["levels"] = levels;
            if (atoms_dim < 40) {
                std::uint64_t count = 1;
                for (Index i = 0; i < atoms_dim; ++i) count *= 3;
                out["count"] = count - 1;
            }
            if (enumerate) {
                json list = json::array();
                for (const auto& a : owl::enumerate_atoms(w)) list.push_back(to_json(a));
                out["atoms"] = list;
            }
            if (!oracle_in.empty()) {
                const Vec g = owl::bench::read_vector(oracle_in);
                const owl::OwlBall<double> ball(w, oracle_radius);
                const auto sel = owl::select_atom(g, w);
                out["oracle"] = {{"level", sel.base.level},
                                 {"dual_norm", owl::dual_norm(g, w)},
                                 {"s", to_json(owl::linear_oracle(g, ball))}};
            }
            emit(out);
        } else if (*solve) {
            auto problem = owl::bench::load_problem_csv(h_path, y_path);
            const auto w = solve_w.resolve(problem.cols());
            owl::Regularization<double> reg{w, owl::Tikhonov<double>{}};
            if (formulation == "owl-i") {
                if (!solve_eps) throw owl::InvalidArgument("--epsilon is required for owl-i");
                reg.formulation = owl::Ivanov<double>{*solve_eps};
            } else {
                if (!tau) throw owl::InvalidArgument("--tau is required for owl-t");
                reg.formulation = owl::Tikhonov<double>{*tau};
            }
            owl::SolverConfig<double> cfg;
            cfg.algorithm = owl::parse_algorithm(algo);
            cfg.stop_rule = cfg.algorithm == owl::Algorithm::ConditionalGradient ? owl::StopRule::DualityGap
                                                                                 : owl::StopRule::RelativeChange;
            cfg.stop_tolerance = stop_tol;
            cfg.max_iterations = max_iter;
            cfg.max_seconds = max_seconds;
            cfg.root = solve_root.config();
            if (!x0_path.empty()) cfg.x0 = owl::bench::read_vector(x0_path);
            const auto result = owl::solve(problem, reg, cfg);
            if (!trace_path.empty()) owl::bench::write_trace_csv(trace_path, result.trace);
            if (!solution_path.empty()) owl::bench::write_vector(solution_path, result.x);
            const auto& last = result.trace.back();
            emit({{"algorithm", algo},
                  {"formulation", formulation},
                  {"status", owl::to_string(result.status)},
                  {"iterations", result.iterations},
                  {"objective", last.objective},
                  {"certificate", last.certificate},
                  {"time_s", last.time_s},
                  {"norm", owl::owl_norm(result.x, w)}});
        } else if (*gen) {
            const auto spec = gen_spec.resolve();
            const std::string dir = gen_out.empty() ? owl::bench::default_output_dir() : gen_out;
            std::filesystem::create_directories(dir);
            const auto data = owl::bench::generate(spec);
            const std::filesystem::path root(dir);
            owl::bench::write_matrix_csv((root / "H.csv").string(), data.h);
            owl::bench::write_vector_csv((root / "y.csv").string(), data.y);
            owl::bench::write_vector_csv((root / "xtrue.csv").string(), data.x_true);
            std::ofstream(root / "spec.json") << spec_json(spec).dump(2) << '\n';
            emit({{"out", dir}, {"spec", spec_json(spec)}});
        } else if (*bench) {
            const auto spec = bench_spec.resolve();
            popts.algorithms = parse_algorithms(bench_algos);
            popts.run_tikhonov = !no_owlt;
            popts.out_dir = bench_out.empty() ? owl::bench::default_output_dir() : bench_out;
            const auto report = owl::bench::run_protocol(spec, popts);
            json runs = json::array();
            for (const auto& r : report.runs) {
                runs.push_back({{"run", r.label},
                                {"status", owl::to_string(r.status)},
                                {"iterations", r.iterations},
                                {"seconds", r.seconds},
                                {"final_distance", r.final_distance}});
            }
            emit({{"out", *popts.out_dir}, {"epsilon", report.epsilon}, {"runs", runs}});
        } else if (*mse) {
            const Vec x = owl::bench::read_vector(mse_x);
            const Vec t = owl::bench::read_vector(mse_true);
            emit({{"mse", owl::bench::mse(x, t)}});
        }
    } catch (const owl::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
