#pragma once
//
// Finite-dimensional phase operators built from the discrete Fourier transform.
//
// Basis |0>, ..., |s> of an (s+1)-dimensional space. The DFT F has entries
// F[n][j] = exp(2 pi i n j / (s+1)) / sqrt(s+1); its columns are the phase
// states |theta_j> and it diagonalises the cyclic shift V (the
// London-Susskind-Glogower operator) with eigenvalues lambda_j = exp(i theta_j).
//
// The Pegg-Barnett operator (phase reference zero) is
//     Phi = F (2 pi N / (s+1)) F^dagger = sum_m theta_m |theta_m><theta_m|,
// with the closed form
//     Phi[n][n] = pi s / (s+1)
//     Phi[n][k] = (2 pi / (s+1)) / (exp(2 pi i (n-k)/(s+1)) - 1),   n != k.
// The widely reproduced form with "2 pi" in place of "2 pi / (s+1)" on the
// off-diagonal is kept as PhaseOperatorPair::paper_literal: it is wrong by a
// factor (s+1), which the verification suite measures explicitly.

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "pbphase/linalg.hpp"

namespace pbphase {

// (s+1)-dimensional truncated number space; s = 0 is the 1x1 space.
class HilbertDim {
public:
    explicit constexpr HilbertDim(std::size_t s) noexcept : s_(s) {}

    // From a dimension d = s+1 >= 1; throws usage_error for d = 0.
    static HilbertDim from_dim(std::size_t dim);

    constexpr std::size_t s() const noexcept { return s_; }
    constexpr std::size_t dim() const noexcept { return s_ + 1; }

private:
    std::size_t s_;
};

// Angle in radians, canonical range [0, 2 pi).
class PhaseAngle {
public:
    // Throws usage_error if theta is not finite or outside [0, 2 pi).
    explicit PhaseAngle(double theta);
    // Reduces any finite angle into [0, 2 pi).
    static PhaseAngle wrap(double theta);

    double radians() const noexcept { return theta_; }

private:
    double theta_;
};

struct PhaseOperatorPair {
    Operator spectral;       // F diag(theta_m) F^dagger
    Operator closed_form;    // entrywise closed form, corrected prefactor
    Operator paper_literal;  // off-diagonal prefactor 2 pi (too large by s+1)
};

// diag(0, 1, ..., s)
Operator number_operator(HilbertDim h);

// Vandermonde matrix of the roots of unity, normalised to be unitary.
Operator dft(HilbertDim h);

// theta_m = 2 pi m / (s+1); throws usage_error unless m <= s.
PhaseAngle theta_m(HilbertDim h, std::size_t m);

// |theta> = sum_n exp(i n theta) |n> / sqrt(s+1)
FieldState phase_state(HilbertDim h, PhaseAngle theta);

// F N F^dagger, evaluated through the spectral route.
Operator dft_number_conjugation(HilbertDim h);

// s/2 on the diagonal, 1/(exp(2 pi i (n-k)/(s+1)) - 1) off it.
Operator dft_number_conjugation_closed_form(HilbertDim h);

PhaseOperatorPair pb_phase_operator(HilbertDim h);

// sum_{m=0}^{s} m exp(2 pi i d m / (s+1)) in closed form,
//     -i (s+1) / (2 sin(pi d/(s+1))) * exp(i pi d (2s+1)/(s+1)).
// Throws usage_error if d = 0 (mod s+1) or |d| > s.
Complex geometric_moment_sum(HilbertDim h, long d);
// The same sum, accumulated term by term. Accepts any d.
Complex geometric_moment_sum_brute(HilbertDim h, long d);

// Cyclic shift V = sum_{n<s} |n><n+1| + |s><0|.
Operator lsg_shift_operator(HilbertDim h);

// Eigenvalues of V: lambda_j = exp(2 pi i j/(s+1)), j = 0..s.
std::vector<Complex> spectral_diagonal(HilbertDim h);

// f(V) = F f(D) F^dagger. Throws domain_error naming j if f(lambda_j) is not finite.
Operator operator_function(HilbertDim h, const std::function<Complex(Complex)>& f);

// ln(V) on the branch arg in [0, 2 pi): ln(lambda_j) = i 2 pi j/(s+1).
Operator log_shift_operator(HilbertDim h);

// Argument of z reduced into [0, 2 pi).
double arg_0_2pi(Complex z);

}  // namespace pbphase
