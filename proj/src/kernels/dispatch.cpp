#include "kernels_impl.hpp"

namespace pbphase::kernels {

const KernelTable& scalar_kernels() noexcept {
    static constexpr KernelTable table{
        Isa::scalar,           "scalar",
        detail::matmul_scalar, detail::matvec_scalar,
        detail::axpy_scalar,   detail::max_abs_diff_scalar,
        detail::norm_sq_scalar,
    };
    return table;
}

std::optional<KernelTable> avx2_kernels() noexcept {
#if defined(PBPHASE_HAVE_AVX2)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
        return KernelTable{
            Isa::avx2,           "avx2",
            detail::matmul_avx2, detail::matvec_avx2,
            detail::axpy_avx2,   detail::max_abs_diff_avx2,
            detail::norm_sq_avx2,
        };
    }
#endif
    return std::nullopt;
}

const KernelTable& active() noexcept {
    static const KernelTable table = avx2_kernels().value_or(scalar_kernels());
    return table;
}

}  // namespace pbphase::kernels
