#pragma once

// Independent reference computations used only by the tests: exact-rational
// polynomial arithmetic and 50-digit floating point.

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <vector>

namespace oracle {

using Rational = boost::multiprecision::cpp_rational;
using Float50 = boost::multiprecision::cpp_bin_float_50;
using RationalPoly = std::vector<Rational>;  // lowest power first

/// lambda given exactly as num / den.
inline Rational rational(long num, long den = 1) { return Rational(num) / Rational(den); }

/// Monic shifted ultraspherical polynomials from the three-term recurrence in
/// exact rationals: P_{j+1} = (x - 1/2) P_j - b_j P_{j-1}.
inline std::vector<RationalPoly> ultraspherical(const Rational& lambda, int degree) {
    std::vector<RationalPoly> p;
    p.push_back({Rational(1)});
    if (degree >= 1) p.push_back({Rational(-1, 2), Rational(1)});
    for (int j = 1; j < degree; ++j) {
        const Rational jj(j);
        const Rational b = jj * (jj + 2 * lambda - 1) / (16 * (jj + lambda) * (jj + lambda - 1));
        RationalPoly next(j + 2, Rational(0));
        for (std::size_t k = 0; k < p[j].size(); ++k) {
            next[k + 1] += p[j][k];
            next[k] -= p[j][k] / 2;
        }
        for (std::size_t k = 0; k < p[j - 1].size(); ++k) next[k] -= b * p[j - 1][k];
        p.push_back(std::move(next));
    }
    return p;
}

/// Monic orthogonal polynomials for weight 1 on [0, 1] by Gram-Schmidt on
/// the monomials, using the exact moments int x^m dx = 1/(m+1).
inline std::vector<RationalPoly> gram_schmidt_legendre(int degree) {
    auto inner = [](const RationalPoly& a, const RationalPoly& b) {
        Rational s(0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t k = 0; k < b.size(); ++k) s += a[i] * b[k] / Rational(int(i + k + 1));
        return s;
    };
    std::vector<RationalPoly> out;
    for (int j = 0; j <= degree; ++j) {
        RationalPoly v(j + 1, Rational(0));
        v[j] = 1;
        RationalPoly mono = v;
        for (const auto& q : out) {
            const Rational c = inner(mono, q) / inner(q, q);
            for (std::size_t k = 0; k < q.size(); ++k) v[k] -= c * q[k];
        }
        out.push_back(std::move(v));
    }
    return out;
}

inline Float50 to_float(const Rational& r) {
    return Float50(numerator(r)) / Float50(denominator(r));
}

inline Float50 tgamma(const Float50& z) { return boost::math::tgamma(z); }

/// Caputo D^q of a rational polynomial at x, term by term:
/// sum_{k >= ceil(q)} c_k Gamma(k+1)/Gamma(k+1-q) x^(k-q). For integer q the
/// terms with k < q vanish.
inline Float50 caputo(const RationalPoly& c, const Float50& q, const Float50& x) {
    using boost::multiprecision::ceil;
    using boost::multiprecision::pow;
    const int ceil_q = static_cast<int>(ceil(q));
    Float50 s = 0;
    for (int k = ceil_q; k < static_cast<int>(c.size()); ++k) {
        if (c[k] == 0) continue;
        const Float50 kk = k;
        s += to_float(c[k]) * tgamma(kk + 1) / tgamma(kk + 1 - q) * pow(x, kk - q);
    }
    return s;
}

/// Closed-form analytic expansion of the monic shifted polynomial:
/// C_j = H_j sum_r sum_k (-1)^(j-r-k) Gamma(j-r+lambda) 2^(j-2r+k)
///        / (Gamma(lambda) r! k! (j-2r-k)!) x^k,
/// H_j = 2^(-2j) Gamma(lambda) j! / Gamma(j+lambda).
inline std::vector<Float50> analytic_coefficients(const Float50& lambda, int j) {
    using boost::multiprecision::ldexp;
    std::vector<Float50> c(j + 1, Float50(0));
    const Float50 h = ldexp(tgamma(lambda) * tgamma(Float50(j + 1)) / tgamma(j + lambda), -2 * j);
    for (int r = 0; 2 * r <= j; ++r) {
        for (int k = 0; k <= j - 2 * r; ++k) {
            const int sign = ((j - r - k) % 2 == 0) ? 1 : -1;
            const Float50 term = ldexp(tgamma(j - r + lambda), j - 2 * r + k) /
                                 (tgamma(lambda) * tgamma(Float50(r + 1)) *
                                  tgamma(Float50(k + 1)) * tgamma(Float50(j - 2 * r - k + 1)));
            c[k] += sign * h * term;
        }
    }
    return c;
}

inline Rational eval(const RationalPoly& p, const Rational& x) {
    Rational s(0);
    for (std::size_t k = p.size(); k-- > 0;) s = s * x + p[k];
    return s;
}

inline RationalPoly derivative(const RationalPoly& p) {
    if (p.size() <= 1) return {Rational(0)};
    RationalPoly d(p.size() - 1);
    for (std::size_t k = 1; k < p.size(); ++k) d[k - 1] = p[k] * int(k);
    return d;
}

}  // namespace oracle
