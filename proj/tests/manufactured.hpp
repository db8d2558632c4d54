#pragma once

// Manufactured-solution trials: a random expansion u* in the basis, its
// right-hand side G = D^q u* + (1 + x) D^(q - 1/2) u* + 2 u* built from the
// exact-rational, 50-digit Caputo oracle, and the solver's recovery of u*.

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "ultraspec/solver.hpp"

namespace manufactured {

struct Trial {
    double lambda;
    double q;
    int degree;
    double max_coeff_error;
};

inline Trial run_trial(int index, std::mt19937_64& rng) {
    using namespace ultraspec;
    static const std::pair<long, long> lambdas[] = {{-49, 100}, {1, 2}, {1, 1}};
    static const double orders[] = {0.5, 0.75, 1.0, 1.5, 2.0};
    std::uniform_real_distribution<double> coef(-1.0, 1.0);

    const auto [num, den] = lambdas[index % 3];
    const double lam = double(num) / double(den);
    const double q = orders[index % 5];
    const int n = 4 + index % 9;  // 4 .. 12
    const auto polys = oracle::ultraspherical(oracle::rational(num, den), n);

    std::vector<double> target(n + 1);
    for (auto& v : target) v = coef(rng);
    std::vector<oracle::Float50> mono(n + 1, oracle::Float50(0));
    for (int j = 0; j <= n; ++j)
        for (std::size_t k = 0; k < polys[j].size(); ++k)
            mono[k] += oracle::Float50(target[j]) * oracle::to_float(polys[j][k]);

    auto add = [](Expr a, Expr b) { return Expr::binary(ExprKind::add, std::move(a), std::move(b)); };
    auto mul = [](Expr a, Expr b) { return Expr::binary(ExprKind::mul, std::move(a), std::move(b)); };
    // sum_k c_k Gamma(k+1)/Gamma(k+1-s) x^(k-s) as an expression.
    auto caputo_expr = [&](double s) {
        Expr e = Expr::number(0.0);
        const oracle::Float50 s50(s);
        const int first = static_cast<int>(std::ceil(s - 1e-12));
        for (int k = first; k <= n; ++k) {
            const oracle::Float50 kk(k);
            const oracle::Float50 c = mono[k] * oracle::tgamma(kk + 1) / oracle::tgamma(kk + 1 - s50);
            const Expr power = k - s == 0.0 ? Expr::number(1.0)
                                            : Expr::binary(ExprKind::pow, Expr::x(), Expr::number(k - s));
            e = add(e, mul(Expr::number(static_cast<double>(c)), power));
        }
        return e;
    };
    auto u_at = [&](double x) {
        oracle::Float50 acc = 0;
        for (std::size_t k = mono.size(); k-- > 0;) acc = acc * x + mono[k];
        return static_cast<double>(acc);
    };

    const double s = q - 0.5;
    FdeProblem p;
    p.leading_order = CaputoOrder(q);
    p.lower_terms = {{CaputoOrder(s), parse_expr("1 + x")}};
    p.zeroth_coeff = Expr::number(2.0);
    p.rhs = add(add(caputo_expr(q), mul(parse_expr("1 + x"), caputo_expr(s))),
                mul(Expr::number(2.0), caputo_expr(0.0)));
    p.boundary_conditions = {{End::left, 0, u_at(0.0)}};
    if (CaputoOrder(q).ceil() == 2) p.boundary_conditions.push_back({End::right, 0, u_at(1.0)});

    const auto sol = solve(p, lam, n);
    double worst = 0.0;
    for (int j = 0; j <= n; ++j) worst = std::max(worst, std::abs(sol.coefficients[j] - target[j]));
    return {lam, q, n, worst};
}

}  // namespace manufactured
