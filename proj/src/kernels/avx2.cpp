#include <cstddef>

#include "ultraspec/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

// Compiled with -mavx2 (no -mfma): mul and add stay separate roundings,
// matching the scalar reference lane for lane.

namespace ultraspec::kernels {

namespace {

void eval_recurrence(double center, std::span<const double> b, std::size_t degree,
                     std::span<const double> xs, std::span<double> out) {
    const std::size_t n = xs.size();
    const std::size_t vec_end = n - n % 4;
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d c = _mm256_set1_pd(center);

    for (std::size_t p = 0; p < vec_end; p += 4) {
        const __m256d t = _mm256_sub_pd(_mm256_loadu_pd(xs.data() + p), c);
        __m256d prev = one;
        _mm256_storeu_pd(out.data() + p, prev);
        if (degree == 0) continue;
        __m256d cur = t;
        _mm256_storeu_pd(out.data() + n + p, cur);
        for (std::size_t j = 1; j < degree; ++j) {
            const __m256d bj = _mm256_set1_pd(b[j]);
            const __m256d next = _mm256_sub_pd(_mm256_mul_pd(t, cur), _mm256_mul_pd(bj, prev));
            _mm256_storeu_pd(out.data() + (j + 1) * n + p, next);
            prev = cur;
            cur = next;
        }
    }
    for (std::size_t p = vec_end; p < n; ++p) {
        const double t = xs[p] - center;
        double prev = 1.0;
        out[p] = prev;
        if (degree == 0) continue;
        double cur = t;
        out[n + p] = cur;
        for (std::size_t j = 1; j < degree; ++j) {
            const double next = t * cur - b[j] * prev;
            out[(j + 1) * n + p] = next;
            prev = cur;
            cur = next;
        }
    }
}

void combine(std::span<const double> coeffs, std::span<const double> table,
             std::span<double> out) {
    const std::size_t n = out.size();
    const std::size_t vec_end = n - n % 4;
    for (std::size_t p = 0; p < vec_end; p += 4) {
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t j = 0; j < coeffs.size(); ++j) {
            const __m256d cj = _mm256_set1_pd(coeffs[j]);
            acc = _mm256_add_pd(acc, _mm256_mul_pd(cj, _mm256_loadu_pd(table.data() + j * n + p)));
        }
        _mm256_storeu_pd(out.data() + p, acc);
    }
    for (std::size_t p = vec_end; p < n; ++p) {
        double acc = 0.0;
        for (std::size_t j = 0; j < coeffs.size(); ++j) acc = acc + coeffs[j] * table[j * n + p];
        out[p] = acc;
    }
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    const std::size_t n = y.size();
    const std::size_t vec_end = n - n % 4;
    const __m256d a = _mm256_set1_pd(alpha);
    for (std::size_t i = 0; i < vec_end; i += 4) {
        const __m256d yi = _mm256_loadu_pd(y.data() + i);
        const __m256d xi = _mm256_loadu_pd(x.data() + i);
        _mm256_storeu_pd(y.data() + i, _mm256_add_pd(yi, _mm256_mul_pd(a, xi)));
    }
    for (std::size_t i = vec_end; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

}  // namespace

namespace detail {
const KernelTable avx2_table{Isa::avx2, &eval_recurrence, &combine, &axpy};
}

}  // namespace ultraspec::kernels

#endif
