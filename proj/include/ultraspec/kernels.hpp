#pragma once

// Data-parallel inner loops with a scalar reference path and SIMD variants
// picked at runtime. Every variant performs the same IEEE operations per
// lane in the same order, so results are bit-identical across variants.

#include <cstddef>
#include <span>
#include <string_view>

namespace ultraspec::kernels {

enum class Isa { scalar, avx2 };

std::string_view name(Isa isa) noexcept;

struct KernelTable {
    Isa isa;

    /// Monic three-term recurrence P_0 = 1, P_1 = x - center,
    /// P_{j+1} = (x - center) P_j - b[j] P_{j-1}, evaluated at every point.
    /// `out` holds (degree + 1) rows of xs.size() values, row j = P_j.
    /// b[0] is ignored; b.size() must be >= degree.
    void (*eval_recurrence)(double center, std::span<const double> b, std::size_t degree,
                            std::span<const double> xs, std::span<double> out);

    /// out[p] = sum_j coeffs[j] * table[j * out.size() + p], summed in j order.
    void (*combine)(std::span<const double> coeffs, std::span<const double> table,
                    std::span<double> out);

    /// y += alpha * x
    void (*axpy)(double alpha, std::span<const double> x, std::span<double> y);
};

/// Table for a given instruction set, or nullptr when the CPU (or the build)
/// does not support it.
const KernelTable* table_for(Isa isa) noexcept;

/// Fastest table supported by the running CPU.
const KernelTable& best() noexcept;

namespace detail {
extern const KernelTable scalar_table;
#if defined(__x86_64__) || defined(_M_X64)
extern const KernelTable avx2_table;
#endif
}  // namespace detail

}  // namespace ultraspec::kernels
