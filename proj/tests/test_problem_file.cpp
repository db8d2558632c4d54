#include <doctest.h>

#include <cmath>
#include <string>

#include "ultraspec/error.hpp"
#include "ultraspec/problem_file.hpp"

using namespace ultraspec;

namespace {

const char* kMinimal =
    "[problem]\n"
    "interval = 0, 1\n"
    "q = 1.5\n"
    "bc = left, 0, 0\n"
    "bc = right, 0, 1\n"
    "[terms]\n"
    "0.5 = 1 + x\n"
    "0 = 2\n"
    "0 = x\n"
    "[equation]\n"
    "rhs = sin(x)\n";

ProblemFileError error_of(const std::string& text) {
    try {
        parse_problem_file(text);
    } catch (const ProblemFileError& e) {
        return e;
    }
    FAIL("expected a problem-file error");
    return ProblemFileError(0, 0, "");
}

std::string replace(std::string text, const std::string& from, const std::string& to) {
    const auto pos = text.find(from);
    REQUIRE(pos != std::string::npos);
    return text.replace(pos, from.size(), to);
}

void check_same_problem(const ProblemSpec& a, const ProblemSpec& b) {
    const auto& p = a.problem;
    const auto& r = b.problem;
    CHECK(p.interval == r.interval);
    CHECK(p.leading_order == r.leading_order);
    CHECK(p.leading_coefficient == r.leading_coefficient);
    CHECK(p.zeroth_coeff == r.zeroth_coeff);
    CHECK(p.rhs == r.rhs);
    CHECK(p.nonlinear_term.has_value() == r.nonlinear_term.has_value());
    if (p.nonlinear_term && r.nonlinear_term) CHECK(*p.nonlinear_term == *r.nonlinear_term);
    CHECK(p.exact_solution.has_value() == r.exact_solution.has_value());
    if (p.exact_solution && r.exact_solution) CHECK(*p.exact_solution == *r.exact_solution);
    REQUIRE(p.lower_terms.size() == r.lower_terms.size());
    for (std::size_t i = 0; i < p.lower_terms.size(); ++i) {
        CHECK(p.lower_terms[i].order == r.lower_terms[i].order);
        CHECK(p.lower_terms[i].coefficient == r.lower_terms[i].coefficient);
    }
    REQUIRE(p.boundary_conditions.size() == r.boundary_conditions.size());
    for (std::size_t i = 0; i < p.boundary_conditions.size(); ++i) {
        CHECK(p.boundary_conditions[i].end == r.boundary_conditions[i].end);
        CHECK(p.boundary_conditions[i].derivative_order == r.boundary_conditions[i].derivative_order);
        CHECK(p.boundary_conditions[i].value == r.boundary_conditions[i].value);
    }
    CHECK(a.discretization.lambdas == b.discretization.lambdas);
    CHECK(a.discretization.degrees == b.discretization.degrees);
    CHECK(a.discretization.nodes == b.discretization.nodes);
}

}  // namespace

TEST_CASE("minimal file") {
    const auto spec = parse_problem_file(kMinimal);
    const auto& p = spec.problem;
    CHECK(p.interval == Interval{0.0, 1.0});
    CHECK(p.leading_order.value() == 1.5);
    REQUIRE(p.boundary_conditions.size() == 2);
    CHECK(p.boundary_conditions[1].end == End::right);
    CHECK(p.boundary_conditions[1].value == 1.0);
    REQUIRE(p.lower_terms.size() == 1);
    CHECK(p.lower_terms[0].order.value() == 0.5);
    CHECK(eval(p.zeroth_coeff, 0.25) == 2.25);
    CHECK_FALSE(p.nonlinear_term.has_value());
    CHECK_FALSE(p.exact_solution.has_value());
    CHECK(spec.discretization.lambdas.empty());
    CHECK(spec.discretization.degrees.empty());
}

TEST_CASE("lists, constants and comments") {
    std::string text = kMinimal;
    text += "[discretization]\n"
            "lambda = 1, 0.5, 0.49, -0.49   # trailing comment\n"
            "N = 8, 16,24\n"
            "nodes = gauss\n";
    text = replace(text, "bc = right, 0, 1", "bc = right, 0, ln(2) / 2");
    const auto spec = parse_problem_file(text);
    CHECK(spec.discretization.lambdas == std::vector<double>{1.0, 0.5, 0.49, -0.49});
    CHECK(spec.discretization.degrees == std::vector<int>{8, 16, 24});
    CHECK(spec.discretization.nodes == NodeScheme::gauss);
    CHECK(spec.problem.boundary_conditions[1].value == doctest::Approx(std::log(2.0) / 2).epsilon(1e-15));
}

TEST_CASE("diagnostics name the field and location") {
    {
        const auto e = error_of(replace(kMinimal, "q = 1.5", "q = -1"));
        CHECK(e.line() == 3);
        CHECK(e.column() == 5);
        CHECK(std::string(e.what()).find("q") != std::string::npos);
    }
    {
        const auto e = error_of(replace(kMinimal, "rhs = sin(x)", "rhs = sin(x"));
        CHECK(e.line() == 11);
        CHECK(e.column() == 12);
        CHECK(std::string(e.what()).find("rhs") != std::string::npos);
    }
    {
        const auto e = error_of(replace(kMinimal, "bc = left, 0, 0", "bc = middle, 0, 0"));
        CHECK(e.line() == 4);
        CHECK(e.column() == 6);
    }
    {
        const auto e = error_of(replace(kMinimal, "bc = right, 0, 1", "bc = right, 2, 1"));
        CHECK(std::string(e.what()).find("ceil(q)") != std::string::npos);
    }
    CHECK(std::string(error_of(replace(kMinimal, "bc = right, 0, 1\n", "")).what()).find("boundary") !=
          std::string::npos);
    CHECK(std::string(error_of(replace(kMinimal, "[terms]", "[stuff]")).what()).find("unknown section") !=
          std::string::npos);
    CHECK(std::string(error_of(replace(kMinimal, "rhs = sin(x)", "rhs = sin(x) + y")).what()).find("rhs") !=
          std::string::npos);
    CHECK(std::string(error_of(replace(kMinimal, "0.5 = 1 + x", "0.5 = u")).what()).find("term") !=
          std::string::npos);
    CHECK(std::string(error_of(replace(kMinimal, "0.5 = 1 + x", "1.5 = 1")).what()).find("not below q") !=
          std::string::npos);
    CHECK(std::string(error_of(replace(kMinimal, "[equation]\nrhs = sin(x)\n", "")).what()).find("rhs") !=
          std::string::npos);
    CHECK(std::string(error_of(std::string(kMinimal) + "[discretization]\nlambda = 0\n").what())
              .find("lambda") != std::string::npos);
    CHECK(std::string(error_of(std::string(kMinimal) + "[discretization]\nN = 8.5\n").what())
              .find("N") != std::string::npos);
    CHECK(std::string(error_of(std::string(kMinimal) + "[discretization]\nnodes = random\n").what())
              .find("nodes") != std::string::npos);
    CHECK(std::string(error_of("interval = 0, 1\n").what()).find("outside") != std::string::npos);
    CHECK(std::string(error_of(replace(kMinimal, "interval = 0, 1", "interval = 1, 0")).what())
              .find("interval") != std::string::npos);
}

TEST_CASE("load_problem_file reports missing files") {
    CHECK_THROWS_AS(load_problem_file("/nonexistent/problem.ini"), IoError);
}

TEST_CASE("format_double is the shortest round-trip form") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(-0.49) == "-0.49");
    CHECK(format_double(1e-16) == "1e-16");
    CHECK(format_double(0.1 + 0.2) == "0.30000000000000004");
    CHECK(std::stod(format_double(std::log(3.0))) == std::log(3.0));
}

TEST_CASE("builtin examples parse") {
    for (int id : {1, 2, 3}) {
        const auto spec = parse_problem_file(builtin_example_text(id));
        CHECK(spec.problem.exact_solution.has_value());
        CHECK(spec.discretization.lambdas.size() == 1);
        CHECK(spec.discretization.degrees.size() == 1);
    }
    CHECK_THROWS_AS(builtin_example_text(4), ParameterError);

    const auto ex1 = parse_problem_file(builtin_example_text(1, 0.75, 0.75));
    CHECK(ex1.problem.leading_order.value() == 0.75);
    // Gamma(1.75)/Gamma(1) x^0 + x^0.75 at x = 0.5.
    CHECK(eval(ex1.problem.rhs, 0.5) ==
          doctest::Approx(std::tgamma(1.75) + std::pow(0.5, 0.75)).epsilon(1e-14));
    CHECK(eval(*ex1.problem.exact_solution, 0.0) == 0.0);
}

TEST_CASE("shipped problem files match the builtins") {
    const std::string dir = ULTRASPEC_PROBLEMS_DIR;
    for (int id : {1, 2, 3}) {
        CAPTURE(id);
        const auto file = load_problem_file(dir + "/example" + std::to_string(id) + ".ini");
        check_same_problem(file, parse_problem_file(builtin_example_text(id)));
    }
}
