#pragma once

// Expression language for coefficient functions, right-hand sides,
// nonlinear terms and exact solutions.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?          right-associative
//   primary := number | 'x' | 'u' | 'pi' | 'e' | name '(' args ')' | '(' expr ')'
//
// Functions: sin cos tan tanh exp ln sqrt abs gamma (one argument) and
// pow(a, b), which is the same node as a ^ b.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace ultraspec {

enum class ExprKind {
    number,
    var_x,
    var_u,
    const_pi,
    const_e,
    negate,
    add,
    sub,
    mul,
    div,
    pow,
    call,
};

enum class ExprFunction { sin, cos, tan, tanh, exp, ln, sqrt, abs, gamma };

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    ExprKind kind;
    double number = 0.0;                    // kind == number
    ExprFunction function = ExprFunction::sin;  // kind == call
    std::vector<ExprPtr> args;
};

/// Immutable expression tree handle.
class Expr {
public:
    /// The constant 0.
    Expr();
    explicit Expr(ExprPtr root) : root_(std::move(root)) {}

    static Expr number(double v);
    static Expr x();
    static Expr u();
    static Expr constant(ExprKind kind);
    static Expr negate(Expr a);
    static Expr binary(ExprKind op, Expr a, Expr b);
    static Expr call(ExprFunction f, Expr arg);

    const ExprNode& root() const noexcept { return *root_; }
    const ExprPtr& ptr() const noexcept { return root_; }

    bool depends_on_u() const noexcept;
    bool depends_on_x() const noexcept;

    friend bool operator==(const Expr& a, const Expr& b) noexcept;

private:
    ExprPtr root_;
};

/// Throws ParseError; offsets are 1-based byte positions in `text`.
Expr parse_expr(std::string_view text);

/// Fully parenthesized text that parses back to the same tree.
std::string to_string(const Expr& e);

std::string_view function_name(ExprFunction f) noexcept;

/// A value together with its derivative with respect to u.
struct DualValue {
    double value = 0.0;
    double du = 0.0;
};

/// Forward-mode evaluation seeded in u; x is a constant parameter.
/// Domain violations throw EvalError naming the offending subexpression.
/// 0^b is 0 for b > 0 and 1 for b = 0.
DualValue eval_dual(const Expr& e, double x, DualValue u);

/// Plain value (u defaults to 0 for expressions that ignore it).
double eval(const Expr& e, double x, double u = 0.0);

}  // namespace ultraspec
