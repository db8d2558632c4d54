#include "ultraspec/kernels.hpp"

namespace ultraspec::kernels {

std::string_view name(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
    }
    return "unknown";
}

const KernelTable* table_for(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar:
            return &detail::scalar_table;
        case Isa::avx2:
#if defined(__x86_64__) || defined(_M_X64)
            if (__builtin_cpu_supports("avx2")) return &detail::avx2_table;
#endif
            return nullptr;
    }
    return nullptr;
}

const KernelTable& best() noexcept {
    static const KernelTable* chosen = [] {
        if (const auto* t = table_for(Isa::avx2)) return t;
        return &detail::scalar_table;
    }();
    return *chosen;
}

}  // namespace ultraspec::kernels
