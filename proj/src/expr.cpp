#include "ultraspec/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <system_error>

#include "ultraspec/error.hpp"
#include "ultraspec/special.hpp"

namespace ultraspec {

namespace {

ExprPtr make(ExprKind kind, std::vector<ExprPtr> args = {}) {
    auto n = std::make_shared<ExprNode>();
    n->kind = kind;
    n->args = std::move(args);
    return n;
}

bool node_equal(const ExprNode& a, const ExprNode& b) noexcept {
    if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
    if (a.kind == ExprKind::number && a.number != b.number) return false;
    if (a.kind == ExprKind::call && a.function != b.function) return false;
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (!node_equal(*a.args[i], *b.args[i])) return false;
    }
    return true;
}

bool node_uses(const ExprNode& n, ExprKind var) noexcept {
    if (n.kind == var) return true;
    for (const auto& a : n.args) {
        if (node_uses(*a, var)) return true;
    }
    return false;
}

struct FunctionEntry {
    std::string_view name;
    ExprFunction fn;
};
constexpr FunctionEntry kFunctions[] = {
    {"sin", ExprFunction::sin},   {"cos", ExprFunction::cos},   {"tan", ExprFunction::tan},
    {"tanh", ExprFunction::tanh}, {"exp", ExprFunction::exp},   {"ln", ExprFunction::ln},
    {"sqrt", ExprFunction::sqrt}, {"abs", ExprFunction::abs},   {"gamma", ExprFunction::gamma},
};

// ---------------------------------------------------------------- parsing

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expr parse() {
        auto e = parse_sum();
        skip_ws();
        if (pos_ < text_.size()) {
            if (text_[pos_] == ')') fail("unbalanced parenthesis");
            fail(std::string("unexpected character '") + text_[pos_] + "'");
        }
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_ + 1, msg); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Expr parse_sum() {
        auto lhs = parse_product();
        while (true) {
            if (accept('+')) {
                lhs = Expr::binary(ExprKind::add, lhs, parse_product());
            } else if (accept('-')) {
                lhs = Expr::binary(ExprKind::sub, lhs, parse_product());
            } else {
                return lhs;
            }
        }
    }

    Expr parse_product() {
        auto lhs = parse_unary();
        while (true) {
            if (accept('*')) {
                lhs = Expr::binary(ExprKind::mul, lhs, parse_unary());
            } else if (accept('/')) {
                lhs = Expr::binary(ExprKind::div, lhs, parse_unary());
            } else {
                return lhs;
            }
        }
    }

    Expr parse_unary() {
        if (accept('-')) return Expr::negate(parse_unary());
        return parse_power();
    }

    Expr parse_power() {
        auto base = parse_primary();
        if (accept('^')) return Expr::binary(ExprKind::pow, base, parse_unary());
        return base;
    }

    void expect_close() {
        if (!accept(')')) fail("unbalanced parenthesis");
    }

    Expr parse_primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            auto e = parse_sum();
            expect_close();
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
        fail(std::string("unexpected character '") + c + "'");
    }

    Expr parse_number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        };
        digits();
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            digits();
        }
        // Exponent only when a digit follows, so "2e" stays "2" then the constant e.
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t p = pos_ + 1;
            if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
            if (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) {
                pos_ = p;
                digits();
            }
        }
        double v = 0.0;
        const auto* first = text_.data() + start;
        const auto* last = text_.data() + pos_;
        const auto res = std::from_chars(first, last, v);
        if (res.ec != std::errc{} || res.ptr != last) {
            pos_ = start;
            fail("malformed number");
        }
        return Expr::number(v);
    }

    Expr parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        const auto name = text_.substr(start, pos_ - start);
        skip_ws();
        const bool is_call = pos_ < text_.size() && text_[pos_] == '(';
        if (!is_call) {
            if (name == "x") return Expr::x();
            if (name == "u") return Expr::u();
            if (name == "pi") return Expr::constant(ExprKind::const_pi);
            if (name == "e") return Expr::constant(ExprKind::const_e);
            pos_ = start;
            fail("unknown identifier '" + std::string(name) + "'");
        }
        ++pos_;  // '('
        std::vector<Expr> args;
        if (!accept(')')) {
            args.push_back(parse_sum());
            while (accept(',')) args.push_back(parse_sum());
            expect_close();
        }
        if (name == "pow") {
            if (args.size() != 2) {
                pos_ = start;
                fail("pow expects 2 arguments, got " + std::to_string(args.size()));
            }
            return Expr::binary(ExprKind::pow, args[0], args[1]);
        }
        for (const auto& f : kFunctions) {
            if (f.name == name) {
                if (args.size() != 1) {
                    pos_ = start;
                    fail(std::string(name) + " expects 1 argument, got " +
                         std::to_string(args.size()));
                }
                return Expr::call(f.fn, args[0]);
            }
        }
        pos_ = start;
        fail("unknown function '" + std::string(name) + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

// ---------------------------------------------------------------- printing

void print(const ExprNode& n, std::string& out) {
    switch (n.kind) {
        case ExprKind::number: {
            char buf[64];
            const auto res = std::to_chars(buf, buf + sizeof buf, n.number);
            out.append(buf, res.ptr);
            return;
        }
        case ExprKind::var_x: out += 'x'; return;
        case ExprKind::var_u: out += 'u'; return;
        case ExprKind::const_pi: out += "pi"; return;
        case ExprKind::const_e: out += 'e'; return;
        case ExprKind::negate:
            out += "(-";
            print(*n.args[0], out);
            out += ')';
            return;
        case ExprKind::call:
            out += function_name(n.function);
            out += '(';
            print(*n.args[0], out);
            out += ')';
            return;
        default: break;
    }
    const char* op = n.kind == ExprKind::add   ? " + "
                     : n.kind == ExprKind::sub ? " - "
                     : n.kind == ExprKind::mul ? " * "
                     : n.kind == ExprKind::div ? " / "
                                               : " ^ ";
    out += '(';
    print(*n.args[0], out);
    out += op;
    print(*n.args[1], out);
    out += ')';
}

// ---------------------------------------------------------------- evaluation

[[noreturn]] void domain_fail(const ExprNode& n, const std::string& why) {
    std::string text;
    print(n, text);
    throw EvalError(why + " in '" + text + "'");
}

DualValue power(const ExprNode& n, DualValue a, DualValue b) {
    if (b.du == 0.0) {
        const double p = b.value;
        if (a.value == 0.0) {
            if (p > 0.0) return {0.0, p == 1.0 ? a.du : 0.0};
            if (p == 0.0) return {1.0, 0.0};
            domain_fail(n, "zero raised to a negative power");
        }
        if (a.value < 0.0 && p != std::round(p)) {
            domain_fail(n, "negative base with non-integer exponent");
        }
        const double v = std::pow(a.value, p);
        const double d = a.du == 0.0 ? 0.0 : p * std::pow(a.value, p - 1.0) * a.du;
        return {v, d};
    }
    if (a.value == 0.0 && b.value > 0.0) return {0.0, 0.0};
    if (!(a.value > 0.0)) domain_fail(n, "u-dependent exponent needs a positive base");
    const double v = std::pow(a.value, b.value);
    return {v, v * (b.du * std::log(a.value) + b.value * a.du / a.value)};
}

DualValue eval_node(const ExprNode& n, double x, DualValue u) {
    switch (n.kind) {
        case ExprKind::number: return {n.number, 0.0};
        case ExprKind::var_x: return {x, 0.0};
        case ExprKind::var_u: return u;
        case ExprKind::const_pi: return {std::numbers::pi, 0.0};
        case ExprKind::const_e: return {std::numbers::e, 0.0};
        case ExprKind::negate: {
            const auto a = eval_node(*n.args[0], x, u);
            return {-a.value, -a.du};
        }
        case ExprKind::add:
        case ExprKind::sub:
        case ExprKind::mul:
        case ExprKind::div:
        case ExprKind::pow: {
            const auto a = eval_node(*n.args[0], x, u);
            const auto b = eval_node(*n.args[1], x, u);
            switch (n.kind) {
                case ExprKind::add: return {a.value + b.value, a.du + b.du};
                case ExprKind::sub: return {a.value - b.value, a.du - b.du};
                case ExprKind::mul: return {a.value * b.value, a.du * b.value + a.value * b.du};
                case ExprKind::div:
                    if (b.value == 0.0) domain_fail(n, "division by zero");
                    return {a.value / b.value, (a.du * b.value - a.value * b.du) / (b.value * b.value)};
                default: return power(n, a, b);
            }
        }
        case ExprKind::call: break;
    }
    const auto a = eval_node(*n.args[0], x, u);
    switch (n.function) {
        case ExprFunction::sin: return {std::sin(a.value), std::cos(a.value) * a.du};
        case ExprFunction::cos: return {std::cos(a.value), -std::sin(a.value) * a.du};
        case ExprFunction::tan: {
            const double c = std::cos(a.value);
            if (c == 0.0) domain_fail(n, "tan at a pole");
            return {std::tan(a.value), a.du / (c * c)};
        }
        case ExprFunction::tanh: {
            const double t = std::tanh(a.value);
            return {t, (1.0 - t * t) * a.du};
        }
        case ExprFunction::exp: {
            const double v = std::exp(a.value);
            return {v, v * a.du};
        }
        case ExprFunction::ln:
            if (!(a.value > 0.0)) domain_fail(n, "logarithm of a non-positive value");
            return {std::log(a.value), a.du / a.value};
        case ExprFunction::sqrt: {
            if (a.value < 0.0) domain_fail(n, "square root of a negative value");
            const double s = std::sqrt(a.value);
            if (s == 0.0) {
                if (a.du != 0.0) domain_fail(n, "derivative of sqrt at zero");
                return {0.0, 0.0};
            }
            return {s, 0.5 * a.du / s};
        }
        case ExprFunction::abs:
            return {std::abs(a.value), a.value > 0.0 ? a.du : (a.value < 0.0 ? -a.du : 0.0)};
        case ExprFunction::gamma: {
            try {
                const double g = gamma(a.value);
                return {g, a.du == 0.0 ? 0.0 : g * digamma(a.value) * a.du};
            } catch (const DomainError& err) {
                domain_fail(n, err.what());
            }
        }
    }
    domain_fail(n, "unknown node");
}

}  // namespace

Expr::Expr() : root_(make(ExprKind::number)) {}

Expr Expr::number(double v) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprKind::number;
    n->number = v;
    return Expr(std::move(n));
}

Expr Expr::x() { return Expr(make(ExprKind::var_x)); }
Expr Expr::u() { return Expr(make(ExprKind::var_u)); }
Expr Expr::constant(ExprKind kind) { return Expr(make(kind)); }
Expr Expr::negate(Expr a) { return Expr(make(ExprKind::negate, {a.root_})); }
Expr Expr::binary(ExprKind op, Expr a, Expr b) { return Expr(make(op, {a.root_, b.root_})); }

Expr Expr::call(ExprFunction f, Expr arg) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprKind::call;
    n->function = f;
    n->args = {arg.root_};
    return Expr(std::move(n));
}

bool Expr::depends_on_u() const noexcept { return node_uses(*root_, ExprKind::var_u); }
bool Expr::depends_on_x() const noexcept { return node_uses(*root_, ExprKind::var_x); }

bool operator==(const Expr& a, const Expr& b) noexcept { return node_equal(*a.root_, *b.root_); }

Expr parse_expr(std::string_view text) { return Parser(text).parse(); }

std::string to_string(const Expr& e) {
    std::string out;
    print(e.root(), out);
    return out;
}

std::string_view function_name(ExprFunction f) noexcept {
    for (const auto& entry : kFunctions) {
        if (entry.fn == f) return entry.name;
    }
    return "?";
}

DualValue eval_dual(const Expr& e, double x, DualValue u) { return eval_node(e.root(), x, u); }

double eval(const Expr& e, double x, double u) { return eval_node(e.root(), x, {u, 0.0}).value; }

}  // namespace ultraspec
