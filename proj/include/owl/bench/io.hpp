#pragma once

// Plain-text I/O for vectors, matrices, weights, problems and solver traces.
// Vectors are single-column CSV or a JSON array; matrices are rectangular
// CSV. Numbers are written with 17 significant digits so they round-trip.

#include "owl/error.hpp"
#include "owl/norms.hpp"
#include "owl/solvers/common.hpp"

#include <Eigen/Dense>

#include <iosfwd>
#include <string>

namespace owl::bench {

/// Malformed CSV/JSON input; the message names the offending line.
class ParseError : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

Eigen::MatrixXd parse_matrix_csv(std::istream& in, const std::string& source = "<stream>");
Eigen::MatrixXd read_matrix_csv(const std::string& path);
void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m);

/// Parses a JSON array or a single-column (or single-row) CSV.
Eigen::VectorXd parse_vector(const std::string& text, const std::string& source = "<stream>");
/// Reads a vector from a file; "-" reads standard input.
Eigen::VectorXd read_vector(const std::string& path);
void write_vector_csv(std::ostream& out, const Eigen::VectorXd& v);
void write_vector_csv(const std::string& path, const Eigen::VectorXd& v);
void write_vector_json(std::ostream& out, const Eigen::VectorXd& v);
/// Writes JSON when the path ends in ".json", CSV otherwise.
void write_vector(const std::string& path, const Eigen::VectorXd& v);

WeightVector<double> read_weights(const std::string& path);
void write_weights(const std::string& path, const WeightVector<double>& w);

/// Loads H (m x n CSV) and y (length m).
RegressionProblem<DenseOperator<double>> load_problem_csv(const std::string& h_path, const std::string& y_path);

/// Columns: k,f,certificate,step,backtracks,time_s.
void write_trace_csv(std::ostream& out, const SolverTrace<double>& trace);
void write_trace_csv(const std::string& path, const SolverTrace<double>& trace);

std::string format_double(double x);

} // namespace owl::bench
