#pragma once
//
// Inner-loop kernels for dense complex algebra.
//
// Every kernel exists as a portable scalar reference and, on x86-64, as an
// AVX2/FMA variant. The variant is chosen once at runtime from CPUID; the
// scalar table is always reachable so tests can compare the two.
//
// All matrices are row-major, square, n x n. Pointers must not alias unless
// stated otherwise.

#include <complex>
#include <cstddef>
#include <optional>
#include <string_view>

namespace pbphase::kernels {

using Complex = std::complex<double>;

enum class Isa { scalar, avx2 };

struct KernelTable {
    Isa isa;
    std::string_view name;

    // c = a * b
    void (*matmul)(std::size_t n, const Complex* a, const Complex* b, Complex* c);
    // y = a * x
    void (*matvec)(std::size_t n, const Complex* a, const Complex* x, Complex* y);
    // y += alpha * x  (length n)
    void (*axpy)(std::size_t n, Complex alpha, const Complex* x, Complex* y);
    // max_i |a_i - b_i|  (length n)
    double (*max_abs_diff)(std::size_t n, const Complex* a, const Complex* b);
    // sum_i |x_i|^2  (length n)
    double (*norm_sq)(std::size_t n, const Complex* x);
};

const KernelTable& scalar_kernels() noexcept;

// Empty when the build has no AVX2 variant or the CPU lacks AVX2+FMA.
std::optional<KernelTable> avx2_kernels() noexcept;

// Best table for this machine; fixed for the lifetime of the process.
const KernelTable& active() noexcept;

}  // namespace pbphase::kernels
