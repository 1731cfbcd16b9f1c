#include "owl/bench/io.hpp"

#include <json.hpp>

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <vector>

namespace owl::bench {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double parse_cell(std::string_view cell, const std::string& source, std::size_t line, std::size_t column)
{
    const std::string_view t = trim(cell);
    double value = 0.0;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    if (!t.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (t.empty() || ec != std::errc() || ptr != last) {
        throw ParseError(source + ":" + std::to_string(line) + ": non-numeric cell '" + std::string(t) +
                         "' in column " + std::to_string(column));
    }
    return value;
}

std::ifstream open_in(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open '" + path + "' for reading");
    return in;
}

std::ofstream open_out(const std::string& path)
{
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot open '" + path + "' for writing");
    return out;
}

bool ends_with(const std::string& s, std::string_view suffix)
{
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

} // namespace

std::string format_double(double x)
{
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Eigen::MatrixXd parse_matrix_csv(std::istream& in, const std::string& source)
{
    std::vector<double> values;
    std::size_t cols = 0, rows = 0, line_no = 0;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        std::size_t count = 0;
        std::string_view rest(line);
        for (;;) {
            const auto comma = rest.find(',');
            values.push_back(parse_cell(rest.substr(0, comma), source, line_no, count + 1));
            ++count;
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        if (rows == 0) cols = count;
        else if (count != cols) {
            throw ParseError(source + ":" + std::to_string(line_no) + ": ragged row, expected " + std::to_string(cols) +
                             " columns but found " + std::to_string(count));
        }
        ++rows;
    }
    if (rows == 0) throw ParseError(source + ": no data");
    Eigen::MatrixXd m(static_cast<Index>(rows), static_cast<Index>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(static_cast<Index>(i), static_cast<Index>(j)) = values[i * cols + j];
    return m;
}

Eigen::MatrixXd read_matrix_csv(const std::string& path)
{
    auto in = open_in(path);
    return parse_matrix_csv(in, path);
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m)
{
    auto out = open_out(path);
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << format_double(m(i, j));
        }
        out << '\n';
    }
}

Eigen::VectorXd parse_vector(const std::string& text, const std::string& source)
{
    const std::string_view t = trim(text);
    if (!t.empty() && t.front() == '[') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(t);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(source + ": invalid JSON: " + e.what());
        }
        if (!j.is_array()) throw ParseError(source + ": expected a JSON array");
        Eigen::VectorXd v(static_cast<Index>(j.size()));
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (!j[i].is_number()) throw ParseError(source + ": element " + std::to_string(i) + " is not a number");
            v[static_cast<Index>(i)] = j[i].get<double>();
        }
        return v;
    }
    std::istringstream in(text);
    const Eigen::MatrixXd m = parse_matrix_csv(in, source);
    if (m.cols() == 1) return m.col(0);
    if (m.rows() == 1) return m.row(0).transpose();
    throw ParseError(source + ": expected a single column, got " + std::to_string(m.rows()) + "x" +
                     std::to_string(m.cols()));
}

Eigen::VectorXd read_vector(const std::string& path)
{
    if (path == "-") {
        std::string text((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
        return parse_vector(text, "<stdin>");
    }
    auto in = open_in(path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_vector(text, path);
}

void write_vector_csv(std::ostream& out, const Eigen::VectorXd& v)
{
    for (Index i = 0; i < v.size(); ++i) out << format_double(v[i]) << '\n';
}

void write_vector_csv(const std::string& path, const Eigen::VectorXd& v)
{
    auto out = open_out(path);
    write_vector_csv(out, v);
}

void write_vector_json(std::ostream& out, const Eigen::VectorXd& v)
{
    out << '[';
    for (Index i = 0; i < v.size(); ++i) {
        if (i) out << ',';
        out << format_double(v[i]);
    }
    out << "]\n";
}

void write_vector(const std::string& path, const Eigen::VectorXd& v)
{
    auto out = open_out(path);
    if (ends_with(path, ".json")) write_vector_json(out, v);
    else write_vector_csv(out, v);
}

WeightVector<double> read_weights(const std::string& path)
{
    return WeightVector<double>(read_vector(path));
}

void write_weights(const std::string& path, const WeightVector<double>& w)
{
    write_vector(path, w.values());
}

RegressionProblem<DenseOperator<double>> load_problem_csv(const std::string& h_path, const std::string& y_path)
{
    Eigen::MatrixXd h = read_matrix_csv(h_path);
    Eigen::VectorXd y = read_vector(y_path);
    if (h.rows() != y.size()) {
        throw DimensionMismatch("dimension mismatch: " + h_path + " has " + std::to_string(h.rows()) + " rows but " +
                                y_path + " has " + std::to_string(y.size()) + " entries");
    }
    return make_problem<double>(std::move(h), std::move(y));
}

void write_trace_csv(std::ostream& out, const SolverTrace<double>& trace)
{
    out << "k,f,certificate,step,backtracks,time_s\n";
    for (const auto& r : trace) {
        out << r.k << ',' << format_double(r.objective) << ',' << format_double(r.certificate) << ','
            << format_double(r.step) << ',' << r.backtracks << ',' << format_double(r.time_s) << '\n';
    }
}

void write_trace_csv(const std::string& path, const SolverTrace<double>& trace)
{
    auto out = open_out(path);
    write_trace_csv(out, trace);
}

} // namespace owl::bench
