#pragma once

// Shifted monic ultraspherical polynomials on [0, 1]:
//   C_0 = 1,  C_1 = x - 1/2,
//   C_{j+1} = (x - 1/2) C_j - b_j C_{j-1},
//   b_j = j (j + 2 lambda - 1) / (16 (j + lambda)(j + lambda - 1)),
// orthogonal under the weight (x - x^2)^(lambda - 1/2).

#include <functional>
#include <span>
#include <vector>

namespace ultraspec {

/// Closed interval [a, b] with a < b.
struct Interval {
    double a = 0.0;
    double b = 1.0;

    double length() const noexcept { return b - a; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

/// xi in [A, B] -> (xi - A) / (B - A). Throws DomainError outside.
double map_to_unit(const Interval& interval, double xi);
/// x in [0, 1] -> A + (B - A) x. Throws DomainError outside.
double map_from_unit(const Interval& interval, double x);

struct RecurrenceCoefficients {
    double center;  // a_j
    double b;       // b_j
};

/// Monic recurrence coefficients for j >= 1. Requires lambda > -1/2 and
/// lambda != 0 (ParameterError otherwise).
RecurrenceCoefficients recurrence_coefficients(double lambda, int j);

/// Lower-triangular table c[j][k], k <= j, with C_j(x) = sum_k c[j][k] x^k.
/// Built by running the recurrence on coefficient vectors in extended precision.
std::vector<std::vector<long double>> monomial_coefficients(double lambda, int degree);

class Basis {
public:
    /// Throws ParameterError for lambda <= -1/2, lambda == 0, degree < 0 or a
    /// degenerate interval.
    Basis(double lambda, int degree, Interval interval = {});

    double lambda() const noexcept { return lambda_; }
    int degree() const noexcept { return degree_; }
    const Interval& interval() const noexcept { return interval_; }

    /// b_0 .. b_N (b_0 is unused and stored as 0).
    std::span<const double> recurrence_b() const noexcept { return b_; }

    /// Monomial coefficients of C_j, lowest power first (size j + 1).
    std::span<const long double> coefficients(int j) const;

    /// (C_0(x), ..., C_N(x)) by the three-term recurrence; x in [0, 1].
    std::vector<double> eval_all(double x) const;

    /// Recurrence evaluation at many points. Result is row-major with
    /// degree() + 1 rows of xs.size() values (row j = C_j at every point).
    std::vector<double> eval_many(std::span<const double> xs) const;

    /// Closed-form int_0^1 (x - x^2)^(lambda - 1/2) C_j(x)^2 dx.
    double squared_norm(int j) const;

private:
    double lambda_;
    int degree_;
    Interval interval_;
    std::vector<double> b_;
    std::vector<std::vector<long double>> coeffs_;
};

/// Gauss rule for the weight (x - x^2)^alpha on [0, 1].
struct QuadratureRule {
    std::vector<double> nodes;    // increasing, in (0, 1)
    std::vector<double> weights;  // positive
    double alpha;
};

/// n-point Gauss-Jacobi rule (alpha > -1, n >= 1). Nodes come from
/// safeguarded Newton on the recurrence, bracketed by the interlacing roots
/// of the previous degree; weights from the Christoffel formula.
QuadratureRule gauss_jacobi(double alpha, int n);

/// Weighted L2 projection of f (sampled on (0, 1) only) onto the basis.
/// quadrature_nodes <= 0 selects the default degree + 10.
std::vector<double> project(const std::function<double(double)>& f, const Basis& basis,
                            int quadrature_nodes = 0);

}  // namespace ultraspec
