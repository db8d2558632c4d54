#pragma once

// Text format for problem definitions. Example:
//
//   [problem]
//   interval = 0, 1
//   q = 0.5
//   bc = left, 0, 0          # end, derivative order, value
//
//   [terms]                  # <order> = <coefficient>; order 0 is g(x)
//   0 = 1
//
//   [equation]
//   rhs = gamma(1.9)/gamma(1.4) * x^0.4 + x^0.9
//   exact = x^0.9
//
//   [discretization]
//   lambda = -0.49
//   N = 16
//   nodes = equispaced

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ultraspec/error.hpp"
#include "ultraspec/solver.hpp"

namespace ultraspec {

struct Discretization {
    std::vector<double> lambdas;
    std::vector<int> degrees;
    NodeScheme nodes = NodeScheme::equispaced;
};

struct ProblemSpec {
    FdeProblem problem;
    Discretization discretization;
};

/// Diagnostic with a 1-based line and column.
class ProblemFileError : public Error {
public:
    ProblemFileError(int line, int column, const std::string& message)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                message),
          line_(line), column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

/// Parses and validates; every failure is a ProblemFileError.
ProblemSpec parse_problem_file(std::string_view text);

/// Reads a file from disk. Throws std::filesystem::filesystem_error-like
/// IoError when the file cannot be read.
class IoError : public Error {
public:
    using Error::Error;
};
ProblemSpec load_problem_file(const std::filesystem::path& path);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

/// Problem-file text for the built-in examples. Example 1 is generated from
/// (q, q1); the other examples ignore them.
std::string builtin_example_text(int id, double q = 0.5, double q1 = 0.9);

}  // namespace ultraspec
