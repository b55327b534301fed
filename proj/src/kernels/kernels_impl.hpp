#pragma once

#include "pbphase/kernels.hpp"

namespace pbphase::kernels::detail {

void matmul_scalar(std::size_t n, const Complex* a, const Complex* b, Complex* c);
void matvec_scalar(std::size_t n, const Complex* a, const Complex* x, Complex* y);
void axpy_scalar(std::size_t n, Complex alpha, const Complex* x, Complex* y);
double max_abs_diff_scalar(std::size_t n, const Complex* a, const Complex* b);
double norm_sq_scalar(std::size_t n, const Complex* x);

#if defined(PBPHASE_HAVE_AVX2)
void matmul_avx2(std::size_t n, const Complex* a, const Complex* b, Complex* c);
void matvec_avx2(std::size_t n, const Complex* a, const Complex* x, Complex* y);
void axpy_avx2(std::size_t n, Complex alpha, const Complex* x, Complex* y);
double max_abs_diff_avx2(std::size_t n, const Complex* a, const Complex* b);
double norm_sq_avx2(std::size_t n, const Complex* x);
#endif

}  // namespace pbphase::kernels::detail
