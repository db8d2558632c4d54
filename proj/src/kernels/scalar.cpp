#include <cstddef>

#include "ultraspec/kernels.hpp"

namespace ultraspec::kernels {

namespace {

void eval_recurrence(double center, std::span<const double> b, std::size_t degree,
                     std::span<const double> xs, std::span<double> out) {
    const std::size_t n = xs.size();
    for (std::size_t p = 0; p < n; ++p) out[p] = 1.0;
    if (degree == 0) return;
    for (std::size_t p = 0; p < n; ++p) out[n + p] = xs[p] - center;
    for (std::size_t j = 1; j < degree; ++j) {
        const double* prev = out.data() + (j - 1) * n;
        const double* cur = out.data() + j * n;
        double* next = out.data() + (j + 1) * n;
        for (std::size_t p = 0; p < n; ++p) {
            next[p] = (xs[p] - center) * cur[p] - b[j] * prev[p];
        }
    }
}

void combine(std::span<const double> coeffs, std::span<const double> table,
             std::span<double> out) {
    const std::size_t n = out.size();
    for (std::size_t p = 0; p < n; ++p) out[p] = 0.0;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        const double c = coeffs[j];
        const double* row = table.data() + j * n;
        for (std::size_t p = 0; p < n; ++p) out[p] = out[p] + c * row[p];
    }
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = y[i] + alpha * x[i];
}

}  // namespace

namespace detail {
const KernelTable scalar_table{Isa::scalar, &eval_recurrence, &combine, &axpy};
}

}  // namespace ultraspec::kernels
