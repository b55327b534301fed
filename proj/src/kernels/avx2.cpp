// AVX2 + FMA variants. This translation unit is compiled with -mavx2 -mfma and
// must only be entered after the dispatcher has confirmed CPU support.
//
// std::complex<double> is laid out as {re, im}, so one __m256d carries two
// complex numbers: [re0, im0, re1, im1].

#include "kernels_impl.hpp"

#if defined(PBPHASE_HAVE_AVX2)

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace pbphase::kernels::detail {
namespace {

inline const double* as_doubles(const Complex* p) { return reinterpret_cast<const double*>(p); }
inline double* as_doubles(Complex* p) { return reinterpret_cast<double*>(p); }

// x * (br + i bi) for both complex lanes of x.
inline __m256d mul_broadcast(__m256d x, __m256d br, __m256d bi) {
    const __m256d swapped = _mm256_permute_pd(x, 0b0101);
    return _mm256_fmaddsub_pd(x, br, _mm256_mul_pd(swapped, bi));
}

// Lane-wise complex product a * x.
inline __m256d mul_lanes(__m256d a, __m256d x) {
    const __m256d are = _mm256_movedup_pd(a);
    const __m256d aim = _mm256_permute_pd(a, 0b1111);
    const __m256d swapped = _mm256_permute_pd(x, 0b0101);
    return _mm256_fmaddsub_pd(are, x, _mm256_mul_pd(aim, swapped));
}

// [a, b, c, d] -> (a + c, b + d)
inline Complex fold_pair(__m256d v) {
    const __m128d sum = _mm_add_pd(_mm256_castpd256_pd128(v), _mm256_extractf128_pd(v, 1));
    alignas(16) double out[2];
    _mm_store_pd(out, sum);
    return {out[0], out[1]};
}

}  // namespace

void axpy_avx2(std::size_t n, Complex alpha, const Complex* x, Complex* y) {
    const __m256d br = _mm256_set1_pd(alpha.real());
    const __m256d bi = _mm256_set1_pd(alpha.imag());
    const double* xs = as_doubles(x);
    double* ys = as_doubles(y);
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        const __m256d xv = _mm256_loadu_pd(xs + 2 * j);
        const __m256d yv = _mm256_loadu_pd(ys + 2 * j);
        _mm256_storeu_pd(ys + 2 * j, _mm256_add_pd(yv, mul_broadcast(xv, br, bi)));
    }
    if (j < n) {
        axpy_scalar(n - j, alpha, x + j, y + j);
    }
}

void matmul_avx2(std::size_t n, const Complex* a, const Complex* b, Complex* c) {
    std::fill(c, c + n * n, Complex{});
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            axpy_avx2(n, a[i * n + k], b + k * n, c + i * n);
        }
    }
}

void matvec_avx2(std::size_t n, const Complex* a, const Complex* x, Complex* y) {
    const double* xs = as_doubles(x);
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = as_doubles(a + i * n);
        __m256d acc = _mm256_setzero_pd();
        std::size_t j = 0;
        for (; j + 2 <= n; j += 2) {
            acc = _mm256_add_pd(acc, mul_lanes(_mm256_loadu_pd(row + 2 * j), _mm256_loadu_pd(xs + 2 * j)));
        }
        Complex sum = fold_pair(acc);
        if (j < n) {
            sum += a[i * n + j] * x[j];
        }
        y[i] = sum;
    }
}

double max_abs_diff_avx2(std::size_t n, const Complex* a, const Complex* b) {
    const double* as = as_doubles(a);
    const double* bs = as_doubles(b);
    __m256d worst = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(as + 2 * j), _mm256_loadu_pd(bs + 2 * j));
        const __m256d sq = _mm256_mul_pd(d, d);
        worst = _mm256_max_pd(worst, _mm256_add_pd(sq, _mm256_permute_pd(sq, 0b0101)));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, worst);
    double result = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
    result = std::sqrt(result);
    if (j < n) {
        result = std::max(result, max_abs_diff_scalar(n - j, a + j, b + j));
    }
    return result;
}

double norm_sq_avx2(std::size_t n, const Complex* x) {
    const double* xs = as_doubles(x);
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        const __m256d v = _mm256_loadu_pd(xs + 2 * j);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    const Complex folded = fold_pair(acc);
    double result = folded.real() + folded.imag();
    if (j < n) {
        result += norm_sq_scalar(n - j, x + j);
    }
    return result;
}

}  // namespace pbphase::kernels::detail

#endif  // PBPHASE_HAVE_AVX2
