// Acceptance report: one PASS/FAIL line per criterion. Exits nonzero when
// any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "manufactured.hpp"
#include "oracles.hpp"
#include "ultraspec/basis.hpp"
#include "ultraspec/cli.hpp"
#include "ultraspec/fracdiff.hpp"
#include "ultraspec/problem_file.hpp"
#include "ultraspec/solver.hpp"

using namespace ultraspec;

namespace {

const double kLambdas[] = {1.0, 0.5, 0.49, -0.49};

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

ProblemSpec example(int id, double q = 0.5, double q1 = 0.9) {
    return parse_problem_file(builtin_example_text(id, q, q1));
}

SpectralSolution solve_example(const ProblemSpec& spec, double lambda, int degree) {
    SolveOptions opts;
    opts.nodes = spec.discretization.nodes;
    return solve(spec.problem, lambda, degree, opts);
}

double example_error(const ProblemSpec& spec, double lambda, int degree) {
    return max_abs_error(solve_example(spec, lambda, degree), *spec.problem.exact_solution);
}

// Example 1 at N = 8 and N = 16 for every lambda.
Outcome example1(double q, double q1) {
    const auto spec = example(1, q, q1);
    Outcome o;
    double worst8 = 0.0, worst16 = 0.0;
    for (double lam : kLambdas) {
        worst8 = std::max(worst8, example_error(spec, lam, 8));
        worst16 = std::max(worst16, example_error(spec, lam, 16));
    }
    o.pass = worst8 <= 1e-13 && worst16 <= 1e-12;
    o.detail = "worst error N=8 " + sci(worst8) + " (<= 1e-13), N=16 " + sci(worst16) + " (<= 1e-12)";
    return o;
}

Outcome criterion1() { return example1(0.5, 0.9); }
Outcome criterion2() { return example1(0.75, 0.75); }

Outcome criterion3() {
    const auto spec = example(2);
    const auto sol = solve_example(spec, -0.49, 14);
    const double err = max_abs_error(sol, *spec.problem.exact_solution);
    Outcome o;
    const bool newton_ok = sol.diagnostics.converged && sol.diagnostics.iterations <= 10;
    o.pass = newton_ok && err <= 1e-13;
    o.detail = "Newton " + std::string(sol.diagnostics.converged ? "converged" : "did not converge") +
               " in " + std::to_string(sol.diagnostics.iterations) + " iterations (<= 10), error " +
               sci(err) + " (<= 1e-13)";
    return o;
}

Outcome criterion4() {
    const auto spec = example(3);
    Outcome o;
    double worst8 = 0.0, worst14 = 0.0, worst20 = 0.0;
    bool monotone = true;
    int max_iters = 0;
    for (double lam : kLambdas) {
        double prev = INFINITY;
        for (int n : {8, 10, 12, 14, 16}) {
            const auto sol = solve_example(spec, lam, n);
            const double e = max_abs_error(sol, *spec.problem.exact_solution);
            max_iters = std::max(max_iters, sol.diagnostics.iterations);
            if (!sol.diagnostics.converged || !(e < prev)) monotone = false;
            prev = e;
            if (n == 8) worst8 = std::max(worst8, e);
            if (n == 14) worst14 = std::max(worst14, e);
        }
        const auto sol20 = solve_example(spec, lam, 20);
        max_iters = std::max(max_iters, sol20.diagnostics.iterations);
        worst20 = std::max(worst20, max_abs_error(sol20, *spec.problem.exact_solution));
    }
    o.pass = worst8 <= 1e-4 && worst14 <= 1e-9 && worst20 <= 1e-12 && monotone;
    o.detail = "nodes " + std::string(to_string(spec.discretization.nodes)) + ", worst error N=8 " +
               sci(worst8) + ", N=14 " + sci(worst14) + ", N=20 " + sci(worst20) + ", monotone " +
               (monotone ? "yes" : "no") + ", max Newton iterations " + std::to_string(max_iters);
    return o;
}

Outcome criterion5() {
    double ortho = 0.0, norm_rel = 0.0, sym = 0.0;
    bool monic = true;
    for (double lam : kLambdas) {
        const Basis basis(lam, 20);
        const auto rule = gauss_jacobi(lam - 0.5, 30);
        std::vector<std::vector<double>> vals;
        for (double x : rule.nodes) vals.push_back(basis.eval_all(x));
        for (int j = 0; j <= 20; ++j) {
            if (basis.coefficients(j)[j] != 1.0L) monic = false;
            for (int k = 0; k <= j; ++k) {
                double s = 0.0;
                for (std::size_t n = 0; n < vals.size(); ++n) s += rule.weights[n] * vals[n][j] * vals[n][k];
                if (k < j) {
                    ortho = std::max(ortho, std::abs(s));
                } else {
                    const double ref = basis.squared_norm(j);
                    norm_rel = std::max(norm_rel, std::abs(s - ref) / ref);
                }
            }
        }
        for (int p = 0; p < 50; ++p) {
            const double x = p / 49.0;
            const auto a = basis.eval_all(x);
            const auto b = basis.eval_all(1.0 - x);
            for (int j = 0; j <= 20; ++j) sym = std::max(sym, std::abs(b[j] - (j % 2 ? -a[j] : a[j])));
        }
    }
    Outcome o;
    o.pass = ortho <= 1e-10 && monic && norm_rel <= 1e-11 && sym <= 1e-12;
    o.detail = "orthogonality " + sci(ortho) + " (<= 1e-10), monic " + (monic ? "exact" : "NOT exact") +
               ", norm rel " + sci(norm_rel) + " (<= 1e-11), symmetry " + sci(sym) + " (<= 1e-12)";
    return o;
}

Outcome criterion6() {
    const std::pair<long, long> lambdas[] = {{-49, 100}, {1, 2}, {1, 1}};
    const double orders[] = {0.3, 0.5, 0.75, 1.5, 2.5};
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> xd(0.0, 1.0);
    double worst_ratio = 0.0;  // diff / allowed
    bool zero_cols = true;
    double integer_err = 0.0;
    for (const auto& [num, den] : lambdas) {
        const double lam = double(num) / double(den);
        const auto polys = oracle::ultraspherical(oracle::rational(num, den), 12);
        const Basis basis(lam, 12);
        for (double q : orders) {
            const CaputoOrder order(q);
            std::vector<double> xs;
            for (int t = 0; t < 20; ++t) xs.push_back(1.0 - xd(rng));
            const auto op = build_operator(basis, order, xs);
            for (std::size_t n = 0; n < xs.size(); ++n) {
                for (int j = 0; j <= 12; ++j) {
                    const double got = op.matrix(n, j);
                    if (j < order.ceil() && got != 0.0) zero_cols = false;
                    const double ref = static_cast<double>(
                        oracle::caputo(polys[j], oracle::Float50(q), oracle::Float50(xs[n])));
                    const double allowed = std::max(1e-11 * std::abs(ref), 1e-13);
                    worst_ratio = std::max(worst_ratio, std::abs(got - ref) / allowed);
                }
            }
        }
        for (int m = 1; m <= 4; ++m) {
            const auto d = integer_deriv_coeffs(Basis(lam, 15), m);
            const Basis b15(lam, 15);
            for (int p = 0; p <= 20; ++p) {
                const double x = p / 20.0;
                const auto got = frac_deriv_basis_at(b15, CaputoOrder(m), x);
                for (int j = 0; j <= 15; ++j) {
                    long double s = 0;
                    for (std::size_t k = d[j].size(); k-- > 0;) s = s * x + d[j][k];
                    integer_err = std::max(integer_err, std::abs(got[j] - static_cast<double>(s)));
                }
            }
        }
    }
    Outcome o;
    o.pass = worst_ratio <= 1.0 && zero_cols && integer_err <= 1e-11;
    o.detail = "oracle worst diff / max(1e-11 |ref|, 1e-13) = " + sci(worst_ratio) + " (<= 1), leading columns " +
               (zero_cols ? "exactly zero" : "NOT zero") + ", integer-order diff " + sci(integer_err) +
               " (<= 1e-11)";
    return o;
}

Outcome criterion7() {
    std::mt19937_64 rng(7);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) worst = std::max(worst, manufactured::run_trial(t, rng).max_coeff_error);
    Outcome o;
    o.pass = worst <= 1e-8;
    o.detail = "20 trials, N <= 12, worst coefficient error " + sci(worst) + " (<= 1e-8)";
    return o;
}

std::string convergence_run() {
    const std::vector<std::string> args = {"ultraspec", "convergence", "--example", "3", "--lambdas",
                                           "1,0.5,0.49,-0.49", "--Ns", "8,10,12,14,16,18,20"};
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return std::to_string(code) + "\n" + out.str();
}

Outcome criterion8() {
    const auto a = convergence_run();
    const auto b = convergence_run();
    Outcome o;
    o.pass = a == b && a.rfind("0\n", 0) == 0;
    o.detail = std::to_string(a.size()) + " bytes, runs " + (a == b ? "identical" : "differ");
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        Outcome (*run)();
    };
    const Criterion criteria[] = {
        {"example 1, q = 0.5, q1 = 0.9", criterion1},
        {"example 1, q = q1 = 0.75", criterion2},
        {"example 2, Riccati", criterion3},
        {"example 3, fourth order on [-1, 1]", criterion4},
        {"basis properties", criterion5},
        {"fractional derivative oracle", criterion6},
        {"manufactured solutions", criterion7},
        {"convergence CSV determinism", criterion8},
    };
    int failed = 0;
    int index = 0;
    for (const auto& c : criteria) {
        ++index;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!o.pass) ++failed;
        std::printf("[%s] %d. %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", index, c.name,
                    o.detail.c_str(), secs);
    }
    std::printf("%d of %d criteria passed\n", index - failed, index);
    return failed == 0 ? 0 : 1;
}
