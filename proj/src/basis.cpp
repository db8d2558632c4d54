#include "ultraspec/basis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ultraspec/error.hpp"
#include "ultraspec/kernels.hpp"
#include "ultraspec/special.hpp"
#include "ultraspec/tolerances.hpp"

namespace ultraspec {

namespace {

void check_lambda(double lambda) {
    if (!std::isfinite(lambda) || lambda <= -0.5) {
        throw ParameterError("lambda must be > -1/2, got " + std::to_string(lambda));
    }
    if (lambda == 0.0) throw ParameterError("lambda = 0 is not supported");
}

// b_j of the symmetric monic family; also valid at lambda = 0 (Chebyshev T),
// which the quadrature needs for alpha = -1/2.
long double jacobi_b(long double lambda, int j) {
    if (j == 1) return 1.0L / (8.0L * (1.0L + lambda));
    const long double jj = j;
    return jj * (jj + 2.0L * lambda - 1.0L) /
           (16.0L * (jj + lambda) * (jj + lambda - 1.0L));
}

}  // namespace

double map_to_unit(const Interval& interval, double xi) {
    if (!(xi >= interval.a && xi <= interval.b)) {
        throw DomainError("point " + std::to_string(xi) + " outside [" +
                          std::to_string(interval.a) + ", " + std::to_string(interval.b) + "]");
    }
    return (xi - interval.a) / interval.length();
}

double map_from_unit(const Interval& interval, double x) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw DomainError("point " + std::to_string(x) + " outside [0, 1]");
    }
    if (x == 1.0) return interval.b;
    return interval.a + interval.length() * x;
}

RecurrenceCoefficients recurrence_coefficients(double lambda, int j) {
    check_lambda(lambda);
    if (j < 1) throw ParameterError("recurrence index must be >= 1");
    return {0.5, static_cast<double>(jacobi_b(lambda, j))};
}

std::vector<std::vector<long double>> monomial_coefficients(double lambda, int degree) {
    check_lambda(lambda);
    if (degree < 0) throw ParameterError("degree must be >= 0");
    std::vector<std::vector<long double>> c(static_cast<std::size_t>(degree) + 1);
    c[0] = {1.0L};
    if (degree == 0) return c;
    c[1] = {-0.5L, 1.0L};
    for (int j = 1; j < degree; ++j) {
        const long double bj = jacobi_b(lambda, j);
        const auto& cur = c[j];
        const auto& prev = c[j - 1];
        auto& next = c[j + 1];
        next.assign(static_cast<std::size_t>(j) + 2, 0.0L);
        for (int k = 0; k <= j; ++k) {
            next[k + 1] += cur[k];
            next[k] -= 0.5L * cur[k];
        }
        for (int k = 0; k < j; ++k) next[k] -= bj * prev[k];
        next[j + 1] = 1.0L;
    }
    return c;
}

Basis::Basis(double lambda, int degree, Interval interval)
    : lambda_(lambda), degree_(degree), interval_(interval) {
    check_lambda(lambda);
    if (degree < 0) throw ParameterError("degree must be >= 0");
    if (!(interval.a < interval.b) || !std::isfinite(interval.a) || !std::isfinite(interval.b)) {
        throw ParameterError("interval must satisfy A < B");
    }
    b_.assign(static_cast<std::size_t>(degree) + 1, 0.0);
    for (int j = 1; j <= degree; ++j) b_[j] = static_cast<double>(jacobi_b(lambda, j));
    coeffs_ = monomial_coefficients(lambda, degree);
}

std::span<const long double> Basis::coefficients(int j) const {
    if (j < 0 || j > degree_) throw ParameterError("basis index out of range");
    return coeffs_[static_cast<std::size_t>(j)];
}

std::vector<double> Basis::eval_all(double x) const {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw DomainError("basis evaluation point " + std::to_string(x) + " outside [0, 1]");
    }
    std::vector<double> out(static_cast<std::size_t>(degree_) + 1);
    const double t = x - 0.5;
    out[0] = 1.0;
    if (degree_ == 0) return out;
    out[1] = t;
    for (int j = 1; j < degree_; ++j) out[j + 1] = t * out[j] - b_[j] * out[j - 1];
    return out;
}

std::vector<double> Basis::eval_many(std::span<const double> xs) const {
    for (double x : xs) {
        if (!(x >= 0.0 && x <= 1.0)) {
            throw DomainError("basis evaluation point " + std::to_string(x) + " outside [0, 1]");
        }
    }
    std::vector<double> out((static_cast<std::size_t>(degree_) + 1) * xs.size());
    kernels::best().eval_recurrence(0.5, b_, static_cast<std::size_t>(degree_), xs, out);
    return out;
}

double Basis::squared_norm(int j) const {
    if (j < 0 || j > degree_) throw ParameterError("basis index out of range");
    // H_j^2 psi_j = pi 2^(1 - 4 lambda - 4 j) Gamma(j + 2 lambda) j! / ((j + lambda) Gamma(j + lambda)^2)
    const double lam = lambda_;
    const auto g2 = signed_log_gamma(j + 2.0 * lam);
    const auto g1 = signed_log_gamma(j + lam);
    const double jl = j + lam;
    const double log_value = std::log(std::numbers::pi) +
                             (1.0 - 4.0 * lam - 4.0 * j) * std::numbers::ln2 + g2.log_abs +
                             log_gamma(j + 1.0) - std::log(std::abs(jl)) - 2.0 * g1.log_abs;
    const int sign = g2.sign * (jl > 0.0 ? 1 : -1);
    return sign * std::exp(log_value);
}

namespace {

struct ExtendedRule {
    std::vector<long double> nodes;
    std::vector<long double> weights;
};

ExtendedRule gauss_jacobi_extended(double alpha, int n) {
    if (!std::isfinite(alpha) || alpha <= -1.0) {
        throw ParameterError("Gauss-Jacobi exponent must be > -1, got " + std::to_string(alpha));
    }
    if (n < 1) throw ParameterError("quadrature needs at least one node");
    const long double lambda = static_cast<long double>(alpha) + 0.5L;

    // Orthonormal recurrence: sqrt(b_{k+1}) p_{k+1} = (x - 1/2) p_k - sqrt(b_k) p_{k-1}.
    std::vector<long double> sb(static_cast<std::size_t>(n) + 1, 0.0L);
    for (int k = 1; k <= n; ++k) sb[k] = std::sqrt(jacobi_b(lambda, k));
    const long double a1 = static_cast<long double>(alpha) + 1.0L;
    const long double mass = std::exp(2.0L * std::lgamma(a1) - std::lgamma(2.0L * a1));
    const long double p0 = 1.0L / std::sqrt(mass);

    // Value and derivative of the orthonormal polynomial of degree m.
    auto eval = [&](int m, long double x, long double& dp) {
        long double prev = 0.0L, cur = p0, dprev = 0.0L, dcur = 0.0L;
        for (int k = 0; k < m; ++k) {
            const long double next = ((x - 0.5L) * cur - sb[k] * prev) / sb[k + 1];
            const long double dnext = (cur + (x - 0.5L) * dcur - sb[k] * dprev) / sb[k + 1];
            prev = cur;
            cur = next;
            dprev = dcur;
            dcur = dnext;
        }
        dp = dcur;
        return cur;
    };

    std::vector<long double> roots;  // roots of degree m - 1
    for (int m = 1; m <= n; ++m) {
        std::vector<long double> next(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) {
            long double lo = i == 0 ? 0.0L : roots[i - 1];
            long double hi = i == m - 1 ? 1.0L : roots[i];
            long double dlo;
            const long double flo = eval(m, lo, dlo);
            const bool lo_negative = flo < 0.0L;
            long double x = 0.5L * (lo + hi);
            bool done = false;
            for (int it = 0; it < tol::quadrature_max_iter && !done; ++it) {
                long double dp;
                const long double f = eval(m, x, dp);
                if (f == 0.0L) break;
                if ((f < 0.0L) == lo_negative) lo = x; else hi = x;
                long double trial = dp != 0.0L ? x - f / dp : lo;
                if (!(trial > lo && trial < hi)) trial = 0.5L * (lo + hi);
                const long double step = std::abs(trial - x);
                x = trial;
                if (step <= 4.0L * std::numeric_limits<long double>::epsilon() * x ||
                    hi - lo <= 4.0L * std::numeric_limits<long double>::epsilon() * x) {
                    done = true;
                }
            }
            if (!done) {
                long double dp;
                const long double f = eval(m, x, dp);
                if (f != 0.0L && std::abs(f / dp) > 1e-17L * (1.0L + x)) {
                    throw NumericalError("Gauss-Jacobi node " + std::to_string(i) +
                                             " did not converge",
                                         i);
                }
            }
            next[i] = x;
        }
        roots = std::move(next);
    }

    ExtendedRule rule;
    rule.nodes = roots;
    rule.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const long double x = roots[i];
        long double prev = 0.0L, cur = p0, sum = cur * cur;
        for (int k = 0; k + 1 < n; ++k) {
            const long double nxt = ((x - 0.5L) * cur - sb[k] * prev) / sb[k + 1];
            prev = cur;
            cur = nxt;
            sum += cur * cur;
        }
        rule.weights[i] = 1.0L / sum;
    }
    return rule;
}

}  // namespace

QuadratureRule gauss_jacobi(double alpha, int n) {
    const auto ext = gauss_jacobi_extended(alpha, n);
    QuadratureRule rule;
    rule.alpha = alpha;
    for (long double x : ext.nodes) rule.nodes.push_back(static_cast<double>(x));
    for (long double w : ext.weights) rule.weights.push_back(static_cast<double>(w));
    return rule;
}

std::vector<double> project(const std::function<double(double)>& f, const Basis& basis,
                            int quadrature_nodes) {
    // Inner products in extended precision at the double points where f is
    // sampled; the remaining error is the rounding of f itself.
    const int nq = quadrature_nodes > 0 ? quadrature_nodes : basis.degree() + 10;
    const auto rule = gauss_jacobi_extended(basis.lambda() - 0.5, nq);
    const int degree = basis.degree();
    const auto b = basis.recurrence_b();
    std::vector<long double> acc(static_cast<std::size_t>(degree) + 1, 0.0L);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double x = static_cast<double>(rule.nodes[i]);
        const long double fw = rule.weights[i] * static_cast<long double>(f(x));
        const long double t = static_cast<long double>(x) - 0.5L;
        long double prev = 0.0L, cur = 1.0L;
        acc[0] += fw;
        for (int j = 1; j <= degree; ++j) {
            const long double next = j == 1 ? t : t * cur - static_cast<long double>(b[j - 1]) * prev;
            prev = cur;
            cur = next;
            acc[j] += fw * cur;
        }
    }
    std::vector<double> coeffs(acc.size());
    for (int j = 0; j <= degree; ++j) {
        coeffs[j] = static_cast<double>(acc[j] / basis.squared_norm(j));
    }
    return coeffs;
}

}  // namespace ultraspec
