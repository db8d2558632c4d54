#include "ultraspec/problem_file.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace ultraspec {

namespace {

struct Field {
    std::string_view text;
    int line;
    int column;  // 1-based column of text[0]
};

std::string_view trim(std::string_view s, int* lead = nullptr) {
    std::size_t b = 0;
    while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    std::size_t e = s.size();
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    if (lead) *lead = static_cast<int>(b);
    return s.substr(b, e - b);
}

Field trimmed(const Field& f) {
    int lead = 0;
    const auto t = trim(f.text, &lead);
    return {t, f.line, f.column + lead};
}

// Split on commas outside parentheses.
std::vector<Field> split_list(const Field& f) {
    std::vector<Field> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= f.text.size(); ++i) {
        if (i == f.text.size() || (f.text[i] == ',' && depth == 0)) {
            out.push_back(trimmed({f.text.substr(start, i - start), f.line,
                                   f.column + static_cast<int>(start)}));
            start = i + 1;
        } else if (f.text[i] == '(') {
            ++depth;
        } else if (f.text[i] == ')') {
            --depth;
        }
    }
    return out;
}

[[noreturn]] void fail(const Field& f, const std::string& msg) {
    throw ProblemFileError(f.line, f.column, msg);
}

Expr parse_field_expr(const Field& f, std::string_view key) {
    if (f.text.empty()) fail(f, std::string(key) + ": empty expression");
    try {
        return parse_expr(f.text);
    } catch (const ParseError& e) {
        throw ProblemFileError(f.line, f.column + static_cast<int>(e.offset()) - 1,
                               std::string(key) + ": " + e.message());
    }
}

double parse_constant(const Field& f, std::string_view key) {
    const auto e = parse_field_expr(f, key);
    if (e.depends_on_x() || e.depends_on_u()) fail(f, std::string(key) + ": must be a constant");
    double v;
    try {
        v = eval(e, 0.0);
    } catch (const Error& err) {
        fail(f, std::string(key) + ": " + err.what());
    }
    if (!std::isfinite(v)) fail(f, std::string(key) + ": value is not finite");
    return v;
}

int parse_int(const Field& f, std::string_view key) {
    int v = 0;
    const auto* first = f.text.data();
    const auto* last = first + f.text.size();
    const auto res = std::from_chars(first, last, v);
    if (f.text.empty() || res.ec != std::errc{} || res.ptr != last) {
        fail(f, std::string(key) + ": expected an integer, got '" + std::string(f.text) + "'");
    }
    return v;
}

CaputoOrder parse_order(const Field& f, std::string_view key, bool allow_zero) {
    const double v = parse_constant(f, key);
    if (v < 0.0 || (!allow_zero && v == 0.0)) {
        fail(f, std::string(key) + ": order must be " + (allow_zero ? ">= 0" : "> 0") +
                    ", got " + format_double(v));
    }
    return CaputoOrder(v);
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

ProblemSpec parse_problem_file(std::string_view text) {
    ProblemSpec spec;
    auto& p = spec.problem;
    bool have_interval = false, have_q = false, have_rhs = false, have_g = false;
    Field q_field{};
    std::vector<std::pair<BoundaryCondition, Field>> bcs;
    std::string section;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view raw = text.substr(pos, eol == std::string_view::npos ? text.npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        if (const auto hash = raw.find('#'); hash != raw.npos) raw = raw.substr(0, hash);
        const Field line = trimmed({raw, line_no, 1});
        if (line.text.empty() || line.text.front() == ';') continue;

        if (line.text.front() == '[') {
            if (line.text.back() != ']') fail(line, "unterminated section header");
            section = std::string(trim(line.text.substr(1, line.text.size() - 2)));
            if (section != "problem" && section != "terms" && section != "equation" &&
                section != "discretization") {
                fail(line, "unknown section [" + section + "]");
            }
            continue;
        }
        const auto eq = line.text.find('=');
        if (eq == line.text.npos) fail(line, "expected 'key = value'");
        const Field key = trimmed({line.text.substr(0, eq), line.line, line.column});
        const Field value =
            trimmed({line.text.substr(eq + 1), line.line, line.column + static_cast<int>(eq) + 1});
        const std::string k(key.text);
        if (section.empty()) fail(line, "key '" + k + "' outside of any section");

        if (section == "problem") {
            if (k == "interval") {
                const auto parts = split_list(value);
                if (parts.size() != 2) fail(value, "interval: expected 'A, B'");
                p.interval = {parse_constant(parts[0], "interval"), parse_constant(parts[1], "interval")};
                if (!(p.interval.a < p.interval.b)) fail(value, "interval: need A < B");
                have_interval = true;
            } else if (k == "q") {
                p.leading_order = parse_order(value, "q", false);
                q_field = value;
                have_q = true;
            } else if (k == "leading") {
                p.leading_coefficient = parse_field_expr(value, "leading");
            } else if (k == "bc") {
                const auto parts = split_list(value);
                if (parts.size() != 3) fail(value, "bc: expected 'end, order, value'");
                BoundaryCondition bc;
                if (parts[0].text == "left") {
                    bc.end = End::left;
                } else if (parts[0].text == "right") {
                    bc.end = End::right;
                } else {
                    fail(parts[0], "bc: end must be 'left' or 'right'");
                }
                bc.derivative_order = parse_int(parts[1], "bc");
                if (bc.derivative_order < 0) fail(parts[1], "bc: derivative order must be >= 0");
                bc.value = parse_constant(parts[2], "bc");
                bcs.emplace_back(bc, value);
            } else {
                fail(key, "unknown key '" + k + "' in [problem]");
            }
        } else if (section == "terms") {
            const auto order = parse_order(key, "term order", true);
            auto coeff = parse_field_expr(value, "term");
            if (coeff.depends_on_u()) fail(value, "term: coefficient must not depend on u");
            if (order.value() == 0.0) {
                p.zeroth_coeff =
                    have_g ? Expr::binary(ExprKind::add, p.zeroth_coeff, coeff) : coeff;
                have_g = true;
            } else {
                p.lower_terms.push_back({order, coeff});
            }
        } else if (section == "equation") {
            if (k == "rhs") {
                p.rhs = parse_field_expr(value, "rhs");
                have_rhs = true;
            } else if (k == "nonlinear") {
                p.nonlinear_term = parse_field_expr(value, "nonlinear");
            } else if (k == "exact") {
                p.exact_solution = parse_field_expr(value, "exact");
            } else {
                fail(key, "unknown key '" + k + "' in [equation]");
            }
        } else {
            auto& d = spec.discretization;
            if (k == "lambda") {
                d.lambdas.clear();
                for (const auto& f : split_list(value)) {
                    const double lam = parse_constant(f, "lambda");
                    if (!(lam > -0.5) || lam == 0.0) fail(f, "lambda: must be > -1/2 and != 0");
                    d.lambdas.push_back(lam);
                }
            } else if (k == "N") {
                d.degrees.clear();
                for (const auto& f : split_list(value)) {
                    const int n = parse_int(f, "N");
                    if (n < 0) fail(f, "N: must be >= 0");
                    d.degrees.push_back(n);
                }
            } else if (k == "nodes") {
                if (value.text == "equispaced") {
                    d.nodes = NodeScheme::equispaced;
                } else if (value.text == "gauss") {
                    d.nodes = NodeScheme::gauss;
                } else {
                    fail(value, "nodes: expected 'equispaced' or 'gauss'");
                }
            } else {
                fail(key, "unknown key '" + k + "' in [discretization]");
            }
        }
    }

    const Field eof{{}, line_no, 1};
    if (!have_interval) fail(eof, "missing [problem] interval");
    if (!have_q) fail(eof, "missing [problem] q");
    if (!have_rhs) fail(eof, "missing [equation] rhs");
    for (const auto& [bc, f] : bcs) {
        if (bc.derivative_order > p.leading_order.ceil() - 1) {
            fail(f, "bc: derivative order must be below ceil(q) = " +
                        std::to_string(p.leading_order.ceil()));
        }
        p.boundary_conditions.push_back(bc);
    }
    for (const auto& t : p.lower_terms) {
        if (!(t.order.value() < p.leading_order.value())) {
            fail(q_field, "q: lower-order term of order " + format_double(t.order.value()) +
                              " is not below q");
        }
    }
    try {
        p.validate();
    } catch (const InvalidProblemError& e) {
        fail(q_field, e.what());
    }
    return spec;
}

ProblemSpec load_problem_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open problem file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("cannot read problem file '" + path.string() + "'");
    return parse_problem_file(buf.str());
}

std::string builtin_example_text(int id, double q, double q1) {
    std::ostringstream s;
    switch (id) {
        case 1: {
            const std::string fq = format_double(q);
            const std::string fq1 = format_double(q1);
            s << "# Example 1: linear FDE with a fractional leading order\n"
                 "#   D^q u + u = Gamma(q1+1)/Gamma(q1-q+1) x^(q1-q) + x^q1,  u(0) = 0\n"
                 "# exact solution u = x^q1\n"
                 "[problem]\n"
                 "interval = 0, 1\n"
              << "q = " << fq << "\n"
              << "bc = left, 0, 0\n"
                 "\n"
                 "[terms]\n"
                 "0 = 1\n"
                 "\n"
                 "[equation]\n"
              << "rhs = gamma(" << format_double(q1 + 1.0) << ") / gamma("
              << format_double(q1 - q + 1.0) << ") * x^" << format_double(q1 - q) << " + x^"
              << fq1 << "\n"
              << "exact = x^" << fq1 << "\n"
              << "\n"
                 "[discretization]\n"
                 "lambda = -0.49\n"
                 "N = 16\n"
                 "nodes = equispaced\n";
            return s.str();
        }
        case 2:
            return "# Example 2: Riccati equation D^1 u = 1 - u^2, u(0) = 0\n"
                   "# exact solution u = tanh(x)\n"
                   "[problem]\n"
                   "interval = 0, 1\n"
                   "q = 1\n"
                   "bc = left, 0, 0\n"
                   "\n"
                   "[equation]\n"
                   "nonlinear = u^2\n"
                   "rhs = 1\n"
                   "exact = tanh(x)\n"
                   "\n"
                   "[discretization]\n"
                   "lambda = -0.49\n"
                   "N = 14\n"
                   "nodes = equispaced\n";
        case 3:
            return "# Example 3: nonlinear fourth-order BVP on [-1, 1]\n"
                   "#   16 u'''' - 6 exp(-4u) = -12 (1.5 + 0.5x)^-4\n"
                   "# exact solution u = ln(1.5 + 0.5x)\n"
                   "[problem]\n"
                   "interval = -1, 1\n"
                   "q = 4\n"
                   "leading = 16\n"
                   "bc = left, 0, 0\n"
                   "bc = right, 0, ln(2)\n"
                   "bc = left, 1, 0.5\n"
                   "bc = right, 1, 0.25\n"
                   "\n"
                   "[equation]\n"
                   "nonlinear = -6 * exp(-4 * u)\n"
                   "rhs = -12 * (1.5 + 0.5 * x)^(-4)\n"
                   "exact = ln(1.5 + 0.5 * x)\n"
                   "\n"
                   "[discretization]\n"
                   "lambda = 0.5\n"
                   "N = 20\n"
                   "# Gauss-Jacobi interior nodes; equispaced nodes lose two digits here\n"
                   "nodes = gauss\n";
        default:
            throw ParameterError("unknown example id " + std::to_string(id) + " (expected 1, 2 or 3)");
    }
}

}  // namespace ultraspec
