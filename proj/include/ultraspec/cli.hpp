#pragma once

// Command-line front end. Every subcommand writes to the given streams and
// returns a process exit code, so the commands can be driven from tests.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ultraspec/problem_file.hpp"
#include "ultraspec/solver.hpp"

namespace ultraspec::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_input = 2;
inline constexpr int exit_solver = 3;
inline constexpr int exit_io = 4;

/// Overrides applied on top of a problem file's [discretization] section.
struct RunOptions {
    std::optional<double> lambda;
    std::optional<int> degree;
    std::optional<NodeScheme> nodes;
    std::optional<int> samples;
    std::optional<std::string> output;
    std::optional<double> tol;
};

int cmd_example(int id, double q, double q1, const RunOptions& opts, std::ostream& out,
                std::ostream& err);

int cmd_solve(const std::filesystem::path& file, const RunOptions& opts, std::ostream& out,
              std::ostream& err);

/// Absent lambda/degree lists fall back to the file's [discretization];
/// an empty list yields a header-only table.
int cmd_convergence(const ProblemSpec& spec, const std::optional<std::vector<double>>& lambdas,
                    const std::optional<std::vector<int>>& degrees, std::optional<NodeScheme> nodes,
                    const std::optional<std::string>& output, std::ostream& out, std::ostream& err);

int cmd_basis_table(double lambda, int degree, const std::optional<std::string>& output,
                    std::ostream& out, std::ostream& err);

/// CSV text with header N,lambda,max_abs_error,residual,newton_iters,min_pivot.
std::string convergence_csv(std::span<const ConvergenceRow> rows);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ultraspec::cli
