#include "ultraspec/special.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ultraspec/error.hpp"
#include "ultraspec/tolerances.hpp"

namespace ultraspec {

namespace {

bool near_nonpositive_integer(double z, double eps) {
    if (z > eps) return false;
    return std::abs(z - std::round(z)) <= eps;
}

// sin(pi z) with exact zeros at integers and argument reduction done on z.
double sin_pi(double z) {
    double r = std::fmod(z, 2.0);  // (-2, 2)
    if (r > 1.0) r -= 2.0;
    if (r < -1.0) r += 2.0;
    if (r > 0.5) r = 1.0 - r;
    if (r < -0.5) r = -1.0 - r;
    return std::sin(std::numbers::pi * r);
}

double lgamma_positive(double z, int* sign) {
#if defined(__GLIBC__) || defined(__APPLE__)
    return ::lgamma_r(z, sign);
#else
    *sign = 1;
    return std::lgamma(z);
#endif
}

}  // namespace

CaputoOrder::CaputoOrder(double q) {
    if (!std::isfinite(q) || q < 0.0) {
        throw ParameterError("Caputo order must be finite and non-negative, got " +
                             std::to_string(q));
    }
    const double r = std::round(q);
    if (std::abs(q - r) <= tol::integer_order) {
        q_ = r;
        ceil_ = floor_ = static_cast<int>(r);
    } else {
        q_ = q;
        ceil_ = static_cast<int>(std::ceil(q));
        floor_ = static_cast<int>(std::floor(q));
    }
}

double log_gamma(double z) {
    if (!(z > 0.0) || !std::isfinite(z)) {
        throw DomainError("log_gamma requires z > 0, got " + std::to_string(z));
    }
    int sign = 1;
    return lgamma_positive(z, &sign);
}

SignedLogGamma signed_log_gamma(double z) {
    if (!std::isfinite(z)) throw DomainError("signed_log_gamma of non-finite argument");
    if (z > 0.0) return {log_gamma(z), 1};
    if (near_nonpositive_integer(z, 0.0)) {
        throw PoleError("Gamma has a pole at " + std::to_string(z));
    }
    // Gamma(z) = pi / (sin(pi z) Gamma(1 - z))
    const double s = sin_pi(z);
    const double lg = log_gamma(1.0 - z);
    return {std::log(std::numbers::pi) - std::log(std::abs(s)) - lg, s > 0.0 ? 1 : -1};
}

double gamma(double z) {
    if (!std::isfinite(z)) throw DomainError("gamma of non-finite argument");
    if (z > 0.0) return std::tgamma(z);
    if (near_nonpositive_integer(z, 0.0)) {
        throw PoleError("Gamma has a pole at " + std::to_string(z));
    }
    return std::numbers::pi / (sin_pi(z) * std::tgamma(1.0 - z));
}

double digamma(double z) {
    if (!std::isfinite(z)) throw DomainError("digamma of non-finite argument");
    if (near_nonpositive_integer(z, 0.0)) {
        throw PoleError("digamma has a pole at " + std::to_string(z));
    }
    if (z < 0.5) {
        // psi(z) = psi(1 - z) - pi cot(pi z)
        const double s = sin_pi(z);
        const double c = sin_pi(z + 0.5);
        return digamma(1.0 - z) - std::numbers::pi * c / s;
    }
    double acc = 0.0;
    while (z < 10.0) {
        acc -= 1.0 / z;
        z += 1.0;
    }
    const double inv = 1.0 / z;
    const double inv2 = inv * inv;
    // Asymptotic series with Bernoulli numbers B_2..B_12.
    const double series =
        inv2 * (1.0 / 12 - inv2 * (1.0 / 120 - inv2 * (1.0 / 252 - inv2 * (1.0 / 240 -
                                   inv2 * (1.0 / 132 - inv2 * (691.0 / 32760))))));
    return acc + std::log(z) - 0.5 * inv - series;
}

double gamma_ratio(double a, double b) {
    return std::exp(log_gamma(a) - log_gamma(b));
}

double caputo_monomial(const CaputoOrder& order, double beta, double x) {
    if (beta < 0.0 || !std::isfinite(beta)) {
        throw DomainError("caputo_monomial requires beta >= 0, got " + std::to_string(beta));
    }
    if (x < 0.0 || !std::isfinite(x)) {
        throw DomainError("caputo_monomial requires x >= 0, got " + std::to_string(x));
    }
    const double q = order.value();
    if (q == 0.0) return std::pow(x, beta);
    const bool beta_integer = beta == std::round(beta);
    if (beta_integer && beta < order.ceil()) return 0.0;

    const double denom_arg = beta + 1.0 - q;
    if (near_nonpositive_integer(denom_arg, tol::gamma_pole)) return 0.0;

    const double exponent = beta - q;
    if (order.is_integer() && beta_integer) {
        // Falling factorial beta (beta-1) ... (beta-q+1), exact in floating point.
        double coeff = 1.0;
        for (int i = 0; i < order.ceil(); ++i) coeff *= beta - i;
        return exponent == 0.0 ? coeff : coeff * std::pow(x, exponent);
    }
    if (x == 0.0) {
        if (exponent < 0.0) {
            throw SingularEvaluationError("D^q x^beta is singular at x = 0 (beta - q < 0)");
        }
        if (exponent > 0.0) return 0.0;
    }
    double coeff;
    if (denom_arg > 0.0) {
        coeff = gamma_ratio(beta + 1.0, denom_arg);
    } else {
        const auto num = log_gamma(beta + 1.0);
        const auto den = signed_log_gamma(denom_arg);
        coeff = den.sign * std::exp(num - den.log_abs);
    }
    return exponent == 0.0 ? coeff : coeff * std::pow(x, exponent);
}

}  // namespace ultraspec
