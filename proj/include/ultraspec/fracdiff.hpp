#pragma once

// Caputo derivatives of the shifted monic ultraspherical basis and the
// node-evaluation operator matrices used for collocation.

#include <map>
#include <memory>
#include <span>
#include <vector>

#include "ultraspec/basis.hpp"
#include "ultraspec/numerics.hpp"
#include "ultraspec/special.hpp"

namespace ultraspec {

/// (D^q C_0)(x), ..., (D^q C_N)(x) on the unit interval.
///
/// Non-integer q: term-wise Caputo on the monomial table,
///   sum_{k >= ceil(q)} c[j][k] Gamma(k+1)/Gamma(k+1-q) x^(k-q),
/// accumulated in extended precision; x = 0 throws SingularEvaluationError.
/// Integer q: differentiated three-term recurrence, valid on all of [0, 1].
/// Entries j < ceil(q) are exactly zero in both cases.
std::vector<double> frac_deriv_basis_at(const Basis& basis, const CaputoOrder& order, double x);

/// M[n][j] = (D^q C_j)(nodes[n]).
struct FracDerivOperator {
    CaputoOrder order;
    std::vector<double> nodes;
    DenseMatrix matrix;
};

FracDerivOperator build_operator(const Basis& basis, const CaputoOrder& order,
                                 std::span<const double> nodes);

/// d[j] = monomial coefficients of the k-th classical derivative of C_j
/// (d[j] = {0} when j < k).
std::vector<std::vector<long double>> integer_deriv_coeffs(const Basis& basis, int k);

enum class End { left, right };

/// C_j^(k) at the unit-interval endpoint for every j. The left end reads the
/// constant term of the derivative table; the right end uses the parity
/// C_j^(k)(1) = (-1)^(j+k) C_j^(k)(0).
std::vector<double> endpoint_derivatives(const Basis& basis, int k, End end);

/// Operators for one (basis, node set), built on first request per order.
class OperatorCache {
public:
    OperatorCache(std::shared_ptr<const Basis> basis, std::vector<double> nodes);

    const FracDerivOperator& get(const CaputoOrder& order);

    const Basis& basis() const noexcept { return *basis_; }
    std::span<const double> nodes() const noexcept { return nodes_; }

private:
    std::shared_ptr<const Basis> basis_;
    std::vector<double> nodes_;
    std::map<double, std::unique_ptr<FracDerivOperator>> cache_;
};

}  // namespace ultraspec
