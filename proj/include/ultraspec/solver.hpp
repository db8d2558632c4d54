#pragma once

// Collocation solver for multi-order fractional boundary value problems
//
//   lead(x) D^q u + sum_i rho_i(x) D^{s_i} u + g(x) u + N(x, u) = G(x)  on [A, B]
//
// with ceil(q) conditions u^(k)(A) = d_k, u^(k)(B) = e_k. The unknown is
// expanded in the shifted monic ultraspherical basis; the equation is
// enforced at interior nodes and the boundary conditions replace the
// remaining rows.

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ultraspec/basis.hpp"
#include "ultraspec/expr.hpp"
#include "ultraspec/fracdiff.hpp"
#include "ultraspec/numerics.hpp"
#include "ultraspec/special.hpp"

namespace ultraspec {

struct BoundaryCondition {
    End end = End::left;
    int derivative_order = 0;
    double value = 0.0;
};

/// rho(x) D^s u
struct LowerTerm {
    CaputoOrder order;
    Expr coefficient;
};

struct FdeProblem {
    Interval interval;
    CaputoOrder leading_order{1.0};
    Expr leading_coefficient = Expr::number(1.0);
    std::vector<LowerTerm> lower_terms;
    Expr zeroth_coeff = Expr::number(0.0);  // g(x)
    std::optional<Expr> nonlinear_term;     // N(x, u)
    Expr rhs;                               // G(x)
    std::vector<BoundaryCondition> boundary_conditions;
    std::optional<Expr> exact_solution;

    bool is_linear() const noexcept { return !nonlinear_term.has_value(); }

    /// Throws InvalidProblemError when an invariant is violated.
    void validate() const;
};

enum class NodeScheme { equispaced, gauss };

std::string_view to_string(NodeScheme s) noexcept;

struct SolveOptions {
    NodeScheme nodes = NodeScheme::equispaced;
    /// Newton tolerance; <= 0 selects tol::newton_rel * (1 + ||rhs||_inf).
    double tol = 0.0;
    int max_iter = 50;
};

/// Equispaced nodes n/N with one node removed per boundary condition
/// (left conditions drop from the left, right ones from the right, in
/// order). A surviving x = 0 is moved to 1/(2N) when q is non-integer.
/// Throws InvalidProblemError when N < ceil(q).
std::vector<double> collocation_nodes(int degree, const CaputoOrder& order,
                                      std::span<const BoundaryCondition> bcs);

/// Nodes of the requested scheme on the unit interval.
std::vector<double> collocation_nodes(int degree, const CaputoOrder& order,
                                      std::span<const BoundaryCondition> bcs, NodeScheme scheme,
                                      double lambda);

/// The square collocation system. Rows 0 .. nbc-1 hold the boundary
/// conditions, the remaining rows the equation at the collocation nodes.
class CollocationSystem {
public:
    CollocationSystem(std::shared_ptr<const Basis> basis, DenseMatrix linear, std::vector<double> rhs,
                      std::vector<double> nodes, std::vector<double> physical_nodes,
                      DenseMatrix node_values, std::size_t bc_rows,
                      std::optional<Expr> nonlinear);

    const Basis& basis() const noexcept { return *basis_; }
    std::shared_ptr<const Basis> basis_ptr() const noexcept { return basis_; }
    const DenseMatrix& matrix() const noexcept { return linear_; }
    std::span<const double> rhs() const noexcept { return rhs_; }
    /// Collocation nodes on [0, 1] and their images in [A, B].
    std::span<const double> nodes() const noexcept { return nodes_; }
    std::span<const double> physical_nodes() const noexcept { return physical_; }
    std::size_t bc_rows() const noexcept { return bc_rows_; }
    bool is_linear() const noexcept { return !nonlinear_.has_value(); }

    std::vector<double> residual(std::span<const double> coeffs) const;
    DenseMatrix jacobian(std::span<const double> coeffs) const;

private:
    std::shared_ptr<const Basis> basis_;
    DenseMatrix linear_;
    std::vector<double> rhs_;
    std::vector<double> nodes_;
    std::vector<double> physical_;
    DenseMatrix node_values_;  // C_j at each collocation node
    std::size_t bc_rows_;
    std::optional<Expr> nonlinear_;
};

/// Throws UnsupportedProblemError for non-integer orders when A != 0 and
/// InvalidProblemError for malformed problems.
CollocationSystem assemble(const FdeProblem& problem, std::shared_ptr<const Basis> basis,
                           NodeScheme scheme = NodeScheme::equispaced);

struct SolveDiagnostics {
    bool linear = true;
    bool converged = true;
    int iterations = 0;  // Newton iterations (0 for linear problems)
    double min_pivot = 0.0;
    double matrix_norm = 0.0;
    std::vector<double> step_norms;
    std::vector<std::string> warnings;
};

struct SpectralSolution {
    std::shared_ptr<const Basis> basis;
    std::vector<double> coefficients;
    double residual_norm = 0.0;
    SolveDiagnostics diagnostics;
};

/// Singular systems throw SingularMatrixError; Newton non-convergence is
/// reported through diagnostics.converged.
SpectralSolution solve(const FdeProblem& problem, double lambda, int degree,
                       const SolveOptions& options = {});

/// Solution values at points of [A, B]; DomainError outside.
std::vector<double> evaluate(const SpectralSolution& sol, std::span<const double> points);

/// max |sol - exact| over n_sample + 1 uniform points including both ends.
double max_abs_error(const SpectralSolution& sol, const Expr& exact, int n_sample = 1000);

struct ConvergenceRow {
    int degree = 0;
    double lambda = 0.0;
    double max_abs_error = 0.0;
    double residual = 0.0;
    int newton_iterations = 0;
    double min_pivot = 0.0;
    bool solved = false;  // false when the solve threw; the numbers are then unset
    std::optional<std::string> failure;
};

/// One row per degree. Per-row failures are recorded, never thrown.
/// Throws InvalidProblemError if the problem has no exact solution.
std::vector<ConvergenceRow> convergence_study(const FdeProblem& problem, double lambda,
                                              std::span<const int> degrees,
                                              const SolveOptions& options = {});

}  // namespace ultraspec
