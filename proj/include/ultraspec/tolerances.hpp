#pragma once

// Library-wide numerical constants. Everything that compares against a
// fixed threshold reads it from here.

namespace ultraspec::tol {

/// log_gamma target relative accuracy.
inline constexpr double log_gamma_rel = 1e-14;
/// gamma target relative accuracy.
inline constexpr double gamma_rel = 1e-13;
/// Caputo monomial target relative accuracy.
inline constexpr double caputo_rel = 1e-13;

/// beta + 1 - q closer than this to a non-positive integer is a Gamma pole.
inline constexpr double gamma_pole = 1e-12;
/// Orders closer than this to an integer are treated as that integer.
inline constexpr double integer_order = 1e-12;

/// LU declares a matrix singular below this pivot magnitude.
inline constexpr double singular_pivot = 1e-300;
/// Warn when the smallest pivot falls below this fraction of ||A||_inf.
inline constexpr double ill_conditioned_pivot = 1e-10;

/// Newton defaults: tol = newton_rel * (1 + ||rhs||_inf).
inline constexpr double newton_rel = 1e-13;
inline constexpr int newton_max_iter = 50;
inline constexpr int newton_max_halvings = 20;

/// Gauss-Jacobi node refinement.
inline constexpr int quadrature_max_iter = 100;

}  // namespace ultraspec::tol
