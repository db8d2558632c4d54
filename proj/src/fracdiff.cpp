#include "ultraspec/fracdiff.hpp"

#include <cmath>
#include <string>

#include "ultraspec/error.hpp"

namespace ultraspec {

namespace {

std::vector<double> integer_order_row(const Basis& basis, int m, double x) {
    const int n = basis.degree();
    const auto b = basis.recurrence_b();
    const long double t = static_cast<long double>(x) - 0.5L;
    // derivs[s][j] = C_j^(s)(x), s = 0..m
    std::vector<std::vector<long double>> d(static_cast<std::size_t>(m) + 1,
                                            std::vector<long double>(n + 1, 0.0L));
    for (int j = 0; j <= n; ++j) {
        for (int s = 0; s <= m; ++s) {
            long double v;
            if (j == 0) {
                v = s == 0 ? 1.0L : 0.0L;
            } else if (j == 1) {
                v = s == 0 ? t : (s == 1 ? 1.0L : 0.0L);
            } else {
                // C_j = t C_{j-1} - b_{j-1} C_{j-2}, differentiated s times
                v = t * d[s][j - 1] - static_cast<long double>(b[j - 1]) * d[s][j - 2];
                if (s > 0) v += s * d[s - 1][j - 1];
            }
            d[s][j] = v;
        }
    }
    std::vector<double> row(n + 1, 0.0);
    for (int j = m; j <= n; ++j) row[j] = static_cast<double>(d[m][j]);
    return row;
}

std::vector<double> fractional_order_row(const Basis& basis, const CaputoOrder& order, double x) {
    if (x == 0.0) {
        throw SingularEvaluationError(
            "non-integer Caputo derivative of the basis cannot be evaluated at x = 0");
    }
    const int n = basis.degree();
    const int lo = order.ceil();
    std::vector<double> row(n + 1, 0.0);
    if (lo > n) return row;

    const long double q = order.value();
    const long double xl = x;
    // gamma_ratio[k] = Gamma(k+1) / Gamma(k+1-q), power[k] = x^(k-q)
    std::vector<long double> term(n + 1, 0.0L);
    long double ratio = std::tgamma(static_cast<long double>(lo) + 1.0L) /
                        std::tgamma(static_cast<long double>(lo) + 1.0L - q);
    long double power = std::pow(xl, static_cast<long double>(lo) - q);
    for (int k = lo; k <= n; ++k) {
        term[k] = ratio * power;
        ratio *= static_cast<long double>(k + 1) / (static_cast<long double>(k + 1) - q);
        power *= xl;
    }
    for (int j = lo; j <= n; ++j) {
        const auto c = basis.coefficients(j);
        long double acc = 0.0L;
        for (int k = lo; k <= j; ++k) acc += c[k] * term[k];
        row[j] = static_cast<double>(acc);
    }
    return row;
}

}  // namespace

std::vector<double> frac_deriv_basis_at(const Basis& basis, const CaputoOrder& order, double x) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw DomainError("derivative evaluation point " + std::to_string(x) + " outside [0, 1]");
    }
    if (order.value() == 0.0) return basis.eval_all(x);
    if (order.is_integer()) return integer_order_row(basis, order.ceil(), x);
    return fractional_order_row(basis, order, x);
}

FracDerivOperator build_operator(const Basis& basis, const CaputoOrder& order,
                                 std::span<const double> nodes) {
    FracDerivOperator op{order, {nodes.begin(), nodes.end()},
                         DenseMatrix(nodes.size(), static_cast<std::size_t>(basis.degree()) + 1)};
    if (order.value() == 0.0) {
        const auto table = basis.eval_many(nodes);
        const std::size_t np = nodes.size();
        for (int j = 0; j <= basis.degree(); ++j) {
            for (std::size_t r = 0; r < np; ++r) op.matrix(r, j) = table[j * np + r];
        }
        return op;
    }
    for (std::size_t r = 0; r < nodes.size(); ++r) {
        const auto row = frac_deriv_basis_at(basis, order, nodes[r]);
        std::copy(row.begin(), row.end(), op.matrix.row(r).begin());
    }
    return op;
}

std::vector<std::vector<long double>> integer_deriv_coeffs(const Basis& basis, int k) {
    if (k < 0 || k > basis.degree()) throw ParameterError("derivative order out of range");
    std::vector<std::vector<long double>> d(static_cast<std::size_t>(basis.degree()) + 1);
    for (int j = 0; j <= basis.degree(); ++j) {
        if (j < k) {
            d[j] = {0.0L};
            continue;
        }
        const auto c = basis.coefficients(j);
        d[j].resize(static_cast<std::size_t>(j - k) + 1);
        for (int m = k; m <= j; ++m) {
            long double f = 1.0L;
            for (int i = 0; i < k; ++i) f *= m - i;
            d[j][m - k] = f * c[m];
        }
    }
    return d;
}

std::vector<double> endpoint_derivatives(const Basis& basis, int k, End end) {
    const int n = basis.degree();
    std::vector<double> row(n + 1, 0.0);
    if (k > n) return row;
    const auto d = integer_deriv_coeffs(basis, k);
    for (int j = k; j <= n; ++j) {
        long double v = d[j][0];
        if (end == End::right && (j + k) % 2 != 0) v = -v;
        row[j] = static_cast<double>(v);
    }
    return row;
}

OperatorCache::OperatorCache(std::shared_ptr<const Basis> basis, std::vector<double> nodes)
    : basis_(std::move(basis)), nodes_(std::move(nodes)) {}

const FracDerivOperator& OperatorCache::get(const CaputoOrder& order) {
    auto& slot = cache_[order.value()];
    if (!slot) slot = std::make_unique<FracDerivOperator>(build_operator(*basis_, order, nodes_));
    return *slot;
}

}  // namespace ultraspec
