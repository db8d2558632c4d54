#include "ultraspec/solver.hpp"

#include <cmath>
#include <deque>
#include <set>
#include <sstream>

#include "ultraspec/error.hpp"
#include "ultraspec/kernels.hpp"
#include "ultraspec/tolerances.hpp"

namespace ultraspec {

namespace {

void require_x_only(const Expr& e, const char* what) {
    if (e.depends_on_u()) {
        throw InvalidProblemError(std::string(what) + " must not depend on u");
    }
}

double order_scale(const CaputoOrder& order, const Interval& iv) {
    return std::pow(1.0 / iv.length(), order.value());
}

}  // namespace

std::string_view to_string(NodeScheme s) noexcept {
    return s == NodeScheme::gauss ? "gauss" : "equispaced";
}

void FdeProblem::validate() const {
    if (!(interval.a < interval.b)) throw InvalidProblemError("interval must satisfy A < B");
    const double q = leading_order.value();
    if (!(q > 0.0)) throw InvalidProblemError("leading order q must be > 0");
    const auto nbc = boundary_conditions.size();
    if (nbc != static_cast<std::size_t>(leading_order.ceil())) {
        throw InvalidProblemError("expected " + std::to_string(leading_order.ceil()) +
                                  " boundary conditions for q = " + std::to_string(q) + ", got " +
                                  std::to_string(nbc));
    }
    std::set<std::pair<int, int>> seen;
    for (const auto& bc : boundary_conditions) {
        if (bc.derivative_order < 0 || bc.derivative_order > leading_order.ceil() - 1) {
            throw InvalidProblemError("boundary condition derivative order " +
                                      std::to_string(bc.derivative_order) + " out of range");
        }
        if (!std::isfinite(bc.value)) throw InvalidProblemError("boundary value must be finite");
        if (!seen.insert({static_cast<int>(bc.end), bc.derivative_order}).second) {
            throw InvalidProblemError("duplicate boundary condition");
        }
    }
    for (const auto& t : lower_terms) {
        if (!(t.order.value() < q)) {
            throw InvalidProblemError("lower-order term order " + std::to_string(t.order.value()) +
                                      " is not below q");
        }
        require_x_only(t.coefficient, "term coefficient");
    }
    require_x_only(leading_coefficient, "leading coefficient");
    require_x_only(zeroth_coeff, "zeroth-order coefficient");
    require_x_only(rhs, "right-hand side");
    if (exact_solution) require_x_only(*exact_solution, "exact solution");
}

std::vector<double> collocation_nodes(int degree, const CaputoOrder& order,
                                      std::span<const BoundaryCondition> bcs) {
    if (degree < order.ceil() || static_cast<std::size_t>(degree) + 1 <= bcs.size()) {
        throw InvalidProblemError("degree " + std::to_string(degree) +
                                  " is too small for q = " + std::to_string(order.value()) +
                                  " (under-determined)");
    }
    std::deque<double> pts;
    for (int n = 0; n <= degree; ++n) pts.push_back(n == degree ? 1.0 : double(n) / degree);
    bool has_left = false;
    for (const auto& bc : bcs) {
        if (bc.end == End::left) {
            pts.pop_front();
            has_left = true;
        } else {
            pts.pop_back();
        }
    }
    if (!order.is_integer() && !has_left && !pts.empty() && pts.front() == 0.0) {
        pts.front() = 0.5 / degree;
    }
    return {pts.begin(), pts.end()};
}

std::vector<double> collocation_nodes(int degree, const CaputoOrder& order,
                                      std::span<const BoundaryCondition> bcs, NodeScheme scheme,
                                      double lambda) {
    if (scheme == NodeScheme::equispaced) return collocation_nodes(degree, order, bcs);
    if (degree < order.ceil() || static_cast<std::size_t>(degree) + 1 <= bcs.size()) {
        throw InvalidProblemError("degree " + std::to_string(degree) +
                                  " is too small for q = " + std::to_string(order.value()) +
                                  " (under-determined)");
    }
    const int count = degree + 1 - static_cast<int>(bcs.size());
    return gauss_jacobi(lambda - 0.5, count).nodes;
}

CollocationSystem::CollocationSystem(std::shared_ptr<const Basis> basis, DenseMatrix linear,
                                     std::vector<double> rhs, std::vector<double> nodes,
                                     std::vector<double> physical_nodes, DenseMatrix node_values,
                                     std::size_t bc_rows, std::optional<Expr> nonlinear)
    : basis_(std::move(basis)),
      linear_(std::move(linear)),
      rhs_(std::move(rhs)),
      nodes_(std::move(nodes)),
      physical_(std::move(physical_nodes)),
      node_values_(std::move(node_values)),
      bc_rows_(bc_rows),
      nonlinear_(std::move(nonlinear)) {}

std::vector<double> CollocationSystem::residual(std::span<const double> coeffs) const {
    auto r = linear_.multiply(coeffs);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= rhs_[i];
    if (nonlinear_) {
        const auto u = node_values_.multiply(coeffs);
        for (std::size_t n = 0; n < nodes_.size(); ++n) {
            r[bc_rows_ + n] += eval_dual(*nonlinear_, physical_[n], {u[n], 1.0}).value;
        }
    }
    return r;
}

DenseMatrix CollocationSystem::jacobian(std::span<const double> coeffs) const {
    DenseMatrix jac = linear_;
    if (!nonlinear_) return jac;
    const auto u = node_values_.multiply(coeffs);
    for (std::size_t n = 0; n < nodes_.size(); ++n) {
        const double du = eval_dual(*nonlinear_, physical_[n], {u[n], 1.0}).du;
        if (du == 0.0) continue;
        auto row = jac.row(bc_rows_ + n);
        const auto vals = node_values_.row(n);
        for (std::size_t j = 0; j < row.size(); ++j) row[j] += du * vals[j];
    }
    return jac;
}

CollocationSystem assemble(const FdeProblem& problem, std::shared_ptr<const Basis> basis,
                           NodeScheme scheme) {
    problem.validate();
    const auto& iv = problem.interval;
    if (!(basis->interval() == iv)) {
        throw InvalidProblemError("basis interval does not match the problem interval");
    }
    auto fractional = [&](const CaputoOrder& o) { return !o.is_integer(); };
    bool any_fractional = fractional(problem.leading_order);
    for (const auto& t : problem.lower_terms) any_fractional = any_fractional || fractional(t.order);
    if (any_fractional && iv.a != 0.0) {
        throw UnsupportedProblemError(
            "non-integer derivative orders require an interval starting at 0");
    }

    const int degree = basis->degree();
    const std::size_t size = static_cast<std::size_t>(degree) + 1;
    auto nodes = collocation_nodes(degree, problem.leading_order, problem.boundary_conditions,
                                   scheme, basis->lambda());
    std::vector<double> physical(nodes.size());
    for (std::size_t n = 0; n < nodes.size(); ++n) physical[n] = map_from_unit(iv, nodes[n]);

    DenseMatrix a(size, size);
    std::vector<double> rhs(size, 0.0);
    const std::size_t nbc = problem.boundary_conditions.size();

    for (std::size_t r = 0; r < nbc; ++r) {
        const auto& bc = problem.boundary_conditions[r];
        const double scale = std::pow(1.0 / iv.length(), bc.derivative_order);
        const auto row = endpoint_derivatives(*basis, bc.derivative_order, bc.end);
        for (std::size_t j = 0; j < size; ++j) a(r, j) = scale * row[j];
        rhs[r] = bc.value;
    }

    OperatorCache cache(basis, nodes);
    const auto& values = cache.get(CaputoOrder(0.0)).matrix;
    const auto& lead_op = cache.get(problem.leading_order).matrix;
    const double lead_scale = order_scale(problem.leading_order, iv);
    for (std::size_t n = 0; n < nodes.size(); ++n) {
        const double x = physical[n];
        const std::size_t r = nbc + n;
        const double lead = eval(problem.leading_coefficient, x) * lead_scale;
        const double g = eval(problem.zeroth_coeff, x);
        for (std::size_t j = 0; j < size; ++j) {
            a(r, j) = lead * lead_op(n, j) + g * values(n, j);
        }
        rhs[r] = eval(problem.rhs, x);
    }
    for (const auto& term : problem.lower_terms) {
        const auto& op = cache.get(term.order).matrix;
        const double scale = order_scale(term.order, iv);
        for (std::size_t n = 0; n < nodes.size(); ++n) {
            const double rho = eval(term.coefficient, physical[n]) * scale;
            if (rho == 0.0) continue;
            for (std::size_t j = 0; j < size; ++j) a(nbc + n, j) += rho * op(n, j);
        }
    }
    DenseMatrix node_values = values;
    return CollocationSystem(std::move(basis), std::move(a), std::move(rhs), std::move(nodes),
                             std::move(physical), std::move(node_values), nbc,
                             problem.nonlinear_term);
}

SpectralSolution solve(const FdeProblem& problem, double lambda, int degree,
                       const SolveOptions& options) {
    auto basis = std::make_shared<const Basis>(lambda, degree, problem.interval);
    const auto system = assemble(problem, basis, options.nodes);

    SpectralSolution sol;
    sol.basis = basis;
    auto& diag = sol.diagnostics;
    diag.linear = system.is_linear();

    if (system.is_linear()) {
        const LuFactorization lu(system.matrix());
        sol.coefficients = lu.solve(system.rhs());
        diag.min_pivot = lu.min_pivot();
        diag.matrix_norm = lu.norm_inf();
    } else {
        const double tol = options.tol > 0.0
                               ? options.tol
                               : tol::newton_rel * (1.0 + norm_inf(system.rhs()));
        auto result = newton_solve(
            [&](std::span<const double> c) { return system.residual(c); },
            [&](std::span<const double> c) { return system.jacobian(c); },
            std::vector<double>(static_cast<std::size_t>(degree) + 1, 0.0), tol, options.max_iter);
        sol.coefficients = std::move(result.x);
        diag.converged = result.report.converged;
        diag.iterations = result.report.iterations;
        diag.min_pivot = result.report.min_pivot;
        diag.matrix_norm = result.report.jacobian_norm;
        diag.step_norms = std::move(result.report.step_norms);
        if (!diag.converged) {
            std::ostringstream msg;
            msg << "Newton did not reach tolerance " << tol << " after " << diag.iterations
                << " iterations (residual " << result.report.final_residual_norm << ")";
            diag.warnings.push_back(msg.str());
        }
    }
    sol.residual_norm = norm_inf(system.residual(sol.coefficients));
    if (diag.min_pivot < tol::ill_conditioned_pivot * diag.matrix_norm) {
        std::ostringstream msg;
        msg << "ill-conditioned collocation matrix: smallest pivot " << diag.min_pivot
            << " vs ||A||_inf " << diag.matrix_norm;
        diag.warnings.push_back(msg.str());
    }
    return sol;
}

std::vector<double> evaluate(const SpectralSolution& sol, std::span<const double> points) {
    std::vector<double> unit(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        unit[i] = map_to_unit(sol.basis->interval(), points[i]);
    }
    const auto table = sol.basis->eval_many(unit);
    std::vector<double> out(points.size());
    kernels::best().combine(sol.coefficients, table, out);
    return out;
}

double max_abs_error(const SpectralSolution& sol, const Expr& exact, int n_sample) {
    if (n_sample < 1) throw DomainError("n_sample must be >= 1");
    const auto& iv = sol.basis->interval();
    std::vector<double> pts(static_cast<std::size_t>(n_sample) + 1);
    for (int i = 0; i <= n_sample; ++i) {
        pts[i] = i == n_sample ? iv.b : std::min(iv.b, iv.a + iv.length() * (double(i) / n_sample));
    }
    const auto values = evaluate(sol, pts);
    double worst = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        worst = std::max(worst, std::abs(values[i] - eval(exact, pts[i])));
    }
    return worst;
}

std::vector<ConvergenceRow> convergence_study(const FdeProblem& problem, double lambda,
                                              std::span<const int> degrees,
                                              const SolveOptions& options) {
    if (!problem.exact_solution) {
        throw InvalidProblemError("convergence study needs an exact solution");
    }
    std::vector<ConvergenceRow> rows;
    rows.reserve(degrees.size());
    for (int n : degrees) {
        ConvergenceRow row;
        row.degree = n;
        row.lambda = lambda;
        try {
            const auto sol = solve(problem, lambda, n, options);
            row.max_abs_error = max_abs_error(sol, *problem.exact_solution);
            row.residual = sol.residual_norm;
            row.newton_iterations = sol.diagnostics.iterations;
            row.min_pivot = sol.diagnostics.min_pivot;
            row.solved = true;
            if (!sol.diagnostics.converged) row.failure = "newton did not converge";
        } catch (const Error& e) {
            row.failure = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace ultraspec
