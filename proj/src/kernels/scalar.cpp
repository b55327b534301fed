#include "kernels_impl.hpp"

#include <algorithm>
#include <cmath>

namespace pbphase::kernels::detail {

void matmul_scalar(std::size_t n, const Complex* a, const Complex* b, Complex* c) {
    std::fill(c, c + n * n, Complex{});
    for (std::size_t i = 0; i < n; ++i) {
        Complex* row = c + i * n;
        for (std::size_t k = 0; k < n; ++k) {
            const double ar = a[i * n + k].real();
            const double ai = a[i * n + k].imag();
            const Complex* brow = b + k * n;
            for (std::size_t j = 0; j < n; ++j) {
                const double br = brow[j].real();
                const double bi = brow[j].imag();
                row[j] = {row[j].real() + (ar * br - ai * bi), row[j].imag() + (ar * bi + ai * br)};
            }
        }
    }
}

void matvec_scalar(std::size_t n, const Complex* a, const Complex* x, Complex* y) {
    for (std::size_t i = 0; i < n; ++i) {
        double re = 0.0;
        double im = 0.0;
        const Complex* row = a + i * n;
        for (std::size_t j = 0; j < n; ++j) {
            re += row[j].real() * x[j].real() - row[j].imag() * x[j].imag();
            im += row[j].real() * x[j].imag() + row[j].imag() * x[j].real();
        }
        y[i] = {re, im};
    }
}

void axpy_scalar(std::size_t n, Complex alpha, const Complex* x, Complex* y) {
    const double ar = alpha.real();
    const double ai = alpha.imag();
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = {y[i].real() + (ar * x[i].real() - ai * x[i].imag()),
                y[i].imag() + (ar * x[i].imag() + ai * x[i].real())};
    }
}

double max_abs_diff_scalar(std::size_t n, const Complex* a, const Complex* b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dr = a[i].real() - b[i].real();
        const double di = a[i].imag() - b[i].imag();
        worst = std::max(worst, dr * dr + di * di);
    }
    return std::sqrt(worst);
}

double norm_sq_scalar(std::size_t n, const Complex* x) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    }
    return acc;
}

}  // namespace pbphase::kernels::detail
