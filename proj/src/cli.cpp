#include "ultraspec/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "ultraspec/error.hpp"

namespace ultraspec::cli {

namespace {

// Writes `text` to `output` (a file path) or to `out` when no path is given.
int emit(const std::string& text, const std::optional<std::string>& output, std::ostream& out,
         std::ostream& err) {
    if (!output || *output == "-") {
        out << text;
        return exit_ok;
    }
    std::ofstream file(*output, std::ios::binary | std::ios::trunc);
    if (!file) {
        err << "error: cannot open '" << *output << "' for writing\n";
        return exit_io;
    }
    file << text;
    file.flush();
    if (!file) {
        err << "error: failed writing '" << *output << "'\n";
        return exit_io;
    }
    return exit_ok;
}

std::string samples_csv(const SpectralSolution& sol, const FdeProblem& problem, int samples) {
    const auto& iv = problem.interval;
    std::vector<double> pts(static_cast<std::size_t>(samples) + 1);
    for (int i = 0; i <= samples; ++i) {
        pts[i] = i == samples ? iv.b : std::min(iv.b, iv.a + iv.length() * (double(i) / samples));
    }
    const auto values = evaluate(sol, pts);
    std::string csv = problem.exact_solution ? "x,u,exact,abs_error\n" : "x,u\n";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        csv += format_double(pts[i]) + "," + format_double(values[i]);
        if (problem.exact_solution) {
            const double ex = eval(*problem.exact_solution, pts[i]);
            csv += "," + format_double(ex) + "," + format_double(std::abs(values[i] - ex));
        }
        csv += '\n';
    }
    return csv;
}

int run_spec(const ProblemSpec& spec, const RunOptions& opts, std::ostream& out,
             std::ostream& err) {
    const auto& disc = spec.discretization;
    const std::optional<double> lambda =
        opts.lambda ? opts.lambda
                    : (disc.lambdas.empty() ? std::nullopt : std::optional(disc.lambdas.front()));
    const std::optional<int> degree =
        opts.degree ? opts.degree
                    : (disc.degrees.empty() ? std::nullopt : std::optional(disc.degrees.front()));
    if (!lambda || !degree) {
        err << "error: lambda and N must be given in the file or with --lambda/--N\n";
        return exit_input;
    }
    if (opts.samples && *opts.samples < 1) {
        err << "error: --samples must be >= 1\n";
        return exit_input;
    }
    SolveOptions so;
    so.nodes = opts.nodes.value_or(disc.nodes);
    if (opts.tol) so.tol = *opts.tol;

    SpectralSolution sol;
    try {
        sol = solve(spec.problem, *lambda, *degree, so);
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const InvalidProblemError& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const UnsupportedProblemError& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const Error& e) {
        err << "solver failure: " << e.what() << '\n';
        return exit_solver;
    }
    for (const auto& w : sol.diagnostics.warnings) err << "warning: " << w << '\n';

    std::ostringstream report;
    report << "lambda = " << format_double(*lambda) << '\n'
           << "N = " << *degree << '\n'
           << "nodes = " << to_string(so.nodes) << '\n';
    if (spec.problem.exact_solution) {
        try {
            report << "max_abs_error = "
                   << format_double(max_abs_error(sol, *spec.problem.exact_solution)) << '\n';
        } catch (const Error& e) {
            err << "error: evaluating the exact solution: " << e.what() << '\n';
            return exit_input;
        }
    }
    report << "residual = " << format_double(sol.residual_norm) << '\n'
           << "newton_iterations = " << sol.diagnostics.iterations << '\n'
           << "converged = " << (sol.diagnostics.converged ? "true" : "false") << '\n'
           << "min_pivot = " << format_double(sol.diagnostics.min_pivot) << '\n';

    int code = exit_ok;
    if (opts.samples) {
        std::string csv;
        try {
            csv = samples_csv(sol, spec.problem, *opts.samples);
        } catch (const Error& e) {
            err << "error: " << e.what() << '\n';
            return exit_input;
        }
        if (opts.output && *opts.output != "-") {
            out << report.str();
            code = emit(csv, opts.output, out, err);
        } else {
            err << report.str();
            out << csv;
        }
    } else {
        code = emit(report.str(), opts.output, out, err);
    }
    if (code == exit_ok && !sol.diagnostics.converged) code = exit_solver;
    return code;
}

}  // namespace

std::string convergence_csv(std::span<const ConvergenceRow> rows) {
    std::string csv = "N,lambda,max_abs_error,residual,newton_iters,min_pivot\n";
    for (const auto& r : rows) {
        csv += std::to_string(r.degree) + "," + format_double(r.lambda) + ",";
        if (!r.solved) {
            csv += "error,,,\n";
            continue;
        }
        csv += format_double(r.max_abs_error) + "," + format_double(r.residual) + "," +
               std::to_string(r.newton_iterations) + "," + format_double(r.min_pivot) + "\n";
    }
    return csv;
}

int cmd_example(int id, double q, double q1, const RunOptions& opts, std::ostream& out,
                std::ostream& err) {
    if (id == 1 && !(q > 0.0 && q <= q1 && q1 <= 1.0)) {
        err << "error: Example 1 needs 0 < q <= q1 <= 1\n";
        return exit_input;
    }
    ProblemSpec spec;
    try {
        spec = parse_problem_file(builtin_example_text(id, q, q1));
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    }
    return run_spec(spec, opts, out, err);
}

int cmd_solve(const std::filesystem::path& file, const RunOptions& opts, std::ostream& out,
              std::ostream& err) {
    ProblemSpec spec;
    try {
        spec = load_problem_file(file);
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return exit_io;
    } catch (const ProblemFileError& e) {
        err << file.string() << ':' << e.line() << ':' << e.column() << ": " << e.what() << '\n';
        return exit_input;
    }
    return run_spec(spec, opts, out, err);
}

int cmd_convergence(const ProblemSpec& spec, const std::optional<std::vector<double>>& lambdas,
                    const std::optional<std::vector<int>>& degrees, std::optional<NodeScheme> nodes,
                    const std::optional<std::string>& output, std::ostream& out, std::ostream& err) {
    if (!spec.problem.exact_solution) {
        err << "error: convergence needs an exact solution in the problem\n";
        return exit_input;
    }
    const auto& disc = spec.discretization;
    const std::vector<double>& lams = lambdas ? *lambdas : disc.lambdas;
    const std::vector<int>& degs = degrees ? *degrees : disc.degrees;
    for (int n : degs) {
        if (n < 0) {
            err << "error: N must be >= 0, got " << n << '\n';
            return exit_input;
        }
    }
    for (double lam : lams) {
        if (!(lam > -0.5) || lam == 0.0) {
            err << "error: lambda must be > -1/2 and != 0, got " << format_double(lam) << '\n';
            return exit_input;
        }
    }
    SolveOptions so;
    so.nodes = nodes.value_or(disc.nodes);

    std::vector<ConvergenceRow> rows;
    for (int n : degs) {
        for (double lam : lams) {
            auto r = convergence_study(spec.problem, lam, std::span(&n, 1), so);
            if (r.front().failure) {
                err << "warning: N=" << n << " lambda=" << format_double(lam) << ": "
                    << *r.front().failure << '\n';
            }
            rows.push_back(std::move(r.front()));
        }
    }
    return emit(convergence_csv(rows), output, out, err);
}

int cmd_basis_table(double lambda, int degree, const std::optional<std::string>& output,
                    std::ostream& out, std::ostream& err) {
    if (degree < 0 || degree > 30) {
        err << "error: N must be in [0, 30]\n";
        return exit_input;
    }
    std::string csv = "j,squared_norm";
    try {
        const Basis basis(lambda, degree);
        for (int k = 0; k <= degree; ++k) csv += ",c" + std::to_string(k);
        csv += '\n';
        for (int j = 0; j <= degree; ++j) {
            csv += std::to_string(j) + "," + format_double(basis.squared_norm(j));
            const auto c = basis.coefficients(j);
            for (int k = 0; k <= degree; ++k) {
                csv += ',';
                if (k <= j) csv += format_double(static_cast<double>(c[k]));
            }
            csv += '\n';
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    }
    return emit(csv, output, out, err);
}

namespace {

template <typename T>
std::vector<T> split_numbers(const std::string& text) {
    std::vector<T> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = std::min(text.find(',', start), text.size());
        std::string item = text.substr(start, comma - start);
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        start = comma + 1;
        if (item.empty()) {
            if (comma == text.size() && values.empty()) break;
            throw std::invalid_argument("empty entry in list '" + text + "'");
        }
        T v{};
        const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
        if (res.ec != std::errc{} || res.ptr != item.data() + item.size()) {
            throw std::invalid_argument("bad number '" + item + "' in list '" + text + "'");
        }
        values.push_back(v);
    }
    return values;
}

std::optional<NodeScheme> parse_scheme(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return s == "gauss" ? NodeScheme::gauss : NodeScheme::equispaced;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Shifted monic ultraspherical spectral solver for fractional BVPs", "ultraspec"};
    app.require_subcommand(1);

    RunOptions opts;
    double lambda = 0.0;
    int degree = 0;
    std::string nodes;
    int samples = 0;
    std::string output;
    double tol = 0.0;
    double q = 0.5, q1 = 0.9;

    auto add_run_flags = [&](CLI::App* cmd) {
        cmd->add_option("--lambda", lambda, "ultraspherical parameter (> -1/2, != 0)");
        cmd->add_option("--N", degree, "polynomial degree")->check(CLI::NonNegativeNumber);
        cmd->add_option("--nodes", nodes, "collocation nodes")
            ->check(CLI::IsMember({"equispaced", "gauss"}));
        cmd->add_option("--samples", samples, "write k+1 (x, u) samples as CSV")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--output", output, "output path (default stdout)");
        cmd->add_option("--tol", tol, "Newton tolerance")->check(CLI::PositiveNumber);
    };

    int example_id = 0;
    auto* ex = app.add_subcommand("example", "solve a built-in example (1, 2 or 3)");
    ex->add_option("id", example_id, "example id")->required()->check(CLI::Range(1, 3));
    ex->add_option("--q", q, "Example 1 order q");
    ex->add_option("--q1", q1, "Example 1 exponent q1");
    add_run_flags(ex);

    std::string file;
    auto* sv = app.add_subcommand("solve", "solve a problem file");
    sv->add_option("file", file, "problem file")->required();
    add_run_flags(sv);

    std::string lambda_list;
    std::string degree_list;
    int conv_example = 0;
    std::string conv_file;
    auto* cv = app.add_subcommand("convergence", "error table over (N, lambda)");
    auto* cv_ex = cv->add_option("--example", conv_example, "built-in example id")
                      ->check(CLI::Range(1, 3));
    auto* cv_file = cv->add_option("--file", conv_file, "problem file");
    cv_ex->excludes(cv_file);
    cv->add_option("--lambdas", lambda_list, "comma-separated lambda list");
    cv->add_option("--Ns", degree_list, "comma-separated degree list (empty for none)");
    cv->add_option("--nodes", nodes, "collocation nodes")
        ->check(CLI::IsMember({"equispaced", "gauss"}));
    cv->add_option("--q", q, "Example 1 order q");
    cv->add_option("--q1", q1, "Example 1 exponent q1");
    cv->add_option("--output", output, "output path (default stdout)");

    auto* bt = app.add_subcommand("basis-table", "monomial coefficients and squared norms");
    bt->add_option("--lambda", lambda, "ultraspherical parameter")->required();
    bt->add_option("--N", degree, "maximum degree (<= 30)")->required();
    bt->add_option("--output", output, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? exit_ok : exit_input;
    }

    auto collect = [&](CLI::App* cmd) {
        if (cmd->count("--lambda")) opts.lambda = lambda;
        if (cmd->count("--N")) opts.degree = degree;
        if (cmd->count("--nodes")) opts.nodes = parse_scheme(nodes);
        if (cmd->count("--samples")) opts.samples = samples;
        if (cmd->count("--output")) opts.output = output;
        if (cmd->count("--tol")) opts.tol = tol;
    };

    try {
        if (ex->parsed()) {
            collect(ex);
            return cmd_example(example_id, q, q1, opts, out, err);
        }
        if (sv->parsed()) {
            collect(sv);
            return cmd_solve(file, opts, out, err);
        }
        if (cv->parsed()) {
            ProblemSpec spec;
            if (cv->count("--file")) {
                try {
                    spec = load_problem_file(conv_file);
                } catch (const IoError& e) {
                    err << "error: " << e.what() << '\n';
                    return exit_io;
                } catch (const ProblemFileError& e) {
                    err << conv_file << ':' << e.line() << ':' << e.column() << ": " << e.what()
                        << '\n';
                    return exit_input;
                }
            } else if (cv->count("--example")) {
                spec = parse_problem_file(builtin_example_text(conv_example, q, q1));
            } else {
                err << "error: convergence needs --example or --file\n";
                return exit_input;
            }
            std::optional<std::string> out_path;
            if (cv->count("--output")) out_path = output;
            std::optional<std::vector<double>> lambdas;
            std::optional<std::vector<int>> degrees;
            try {
                if (cv->count("--lambdas")) lambdas = split_numbers<double>(lambda_list);
                if (cv->count("--Ns")) degrees = split_numbers<int>(degree_list);
            } catch (const std::invalid_argument& e) {
                err << "error: " << e.what() << '\n';
                return exit_input;
            }
            return cmd_convergence(spec, lambdas, degrees,
                                   cv->count("--nodes") ? parse_scheme(nodes) : std::nullopt,
                                   out_path, out, err);
        }
        if (bt->parsed()) {
            std::optional<std::string> out_path;
            if (bt->count("--output")) out_path = output;
            return cmd_basis_table(lambda, degree, out_path, out, err);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    }
    return exit_input;
}

}  // namespace ultraspec::cli
