#pragma once

// Gamma-function machinery and the Caputo derivative of a single monomial.

namespace ultraspec {

/// Order q > 0 of a Caputo derivative together with its ceiling and floor.
/// q = 0 is also accepted and denotes the identity operator.
class CaputoOrder {
public:
    /// Throws ParameterError for q < 0 or non-finite q. Values within
    /// tol::integer_order of an integer snap to that integer.
    explicit CaputoOrder(double q);

    double value() const noexcept { return q_; }
    int ceil() const noexcept { return ceil_; }
    int floor() const noexcept { return floor_; }
    bool is_integer() const noexcept { return ceil_ == floor_; }

    friend bool operator==(const CaputoOrder&, const CaputoOrder&) = default;

private:
    double q_;
    int ceil_;
    int floor_;
};

/// ln Gamma(z) for z > 0. Throws DomainError otherwise.
double log_gamma(double z);

/// Gamma(z) for any z that is not a non-positive integer (PoleError there).
/// Negative arguments go through the reflection formula.
double gamma(double z);

/// ln|Gamma(z)| and the sign of Gamma(z); valid for negative non-integer z.
struct SignedLogGamma {
    double log_abs;
    int sign;
};
SignedLogGamma signed_log_gamma(double z);

/// psi(z) = Gamma'(z) / Gamma(z); PoleError at non-positive integers.
double digamma(double z);

/// Gamma(a) / Gamma(b) for a, b > 0 computed as exp(lnG(a) - lnG(b)).
double gamma_ratio(double a, double b);

/// D^q x^beta in the Caputo sense.
///
/// Zero when beta is a non-negative integer below ceil(q), or when
/// beta + 1 - q sits on a Gamma pole (integer q, classical case). Otherwise
/// Gamma(beta+1)/Gamma(beta+1-q) x^(beta-q). Throws SingularEvaluationError
/// for x = 0 with beta - q < 0, DomainError for x < 0 or beta < 0.
double caputo_monomial(const CaputoOrder& order, double beta, double x);

}  // namespace ultraspec
