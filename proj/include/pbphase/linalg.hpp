#pragma once
//
// Dense complex operators and field vectors on a finite Hilbert space.
//
// Operator and FieldState are immutable values. Every entry is checked to be
// finite on construction, so NaN/Inf can never enter a computation through
// these types. Equality is always approximate: compare with max_abs_diff.

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "pbphase/errors.hpp"

namespace pbphase {

using Complex = std::complex<double>;

// Named tolerances shared by verification and revival detection.
struct ToleranceProfile {
    double eq_tol = 1e-12;        // operator identities
    double spectral_tol = 1e-10;  // eigenrelations
    double ode_tol = 1e-6;        // RK4 against exact propagation
    double revival_tol = 1e-9;    // 1 - fidelity threshold

    // Throws usage_error unless every tolerance lies in (0, 1).
    void validate() const;
};

class Operator {
public:
    // Row-major, entries.size() must equal dim * dim and dim >= 1.
    Operator(std::size_t dim, std::vector<Complex> entries);

    static Operator identity(std::size_t dim);
    static Operator diagonal(std::span<const Complex> values);

    // Builds entry (r, c) from fn(r, c).
    template <class Fn>
    static Operator generate(std::size_t dim, Fn&& fn) {
        std::vector<Complex> entries(dim * dim);
        for (std::size_t r = 0; r < dim; ++r) {
            for (std::size_t c = 0; c < dim; ++c) {
                entries[r * dim + c] = fn(r, c);
            }
        }
        return Operator(dim, std::move(entries));
    }

    std::size_t dim() const noexcept { return dim_; }

    // Unchecked element access.
    Complex operator()(std::size_t row, std::size_t col) const noexcept { return entries_[row * dim_ + col]; }
    // Checked element access; throws usage_error when out of range.
    Complex at(std::size_t row, std::size_t col) const;

    std::span<const Complex> entries() const noexcept { return entries_; }
    std::vector<Complex> diagonal_entries() const;
    Complex trace() const noexcept;

    friend Operator operator+(const Operator& a, const Operator& b);
    friend Operator operator-(const Operator& a, const Operator& b);
    friend Operator operator*(Complex scale, const Operator& a);

private:
    std::size_t dim_;
    std::vector<Complex> entries_;
};

class FieldState {
public:
    explicit FieldState(std::vector<Complex> amplitudes);

    // Unit amplitude on site k, zero elsewhere.
    static FieldState basis(std::size_t dim, std::size_t k);

    std::size_t dim() const noexcept { return amplitudes_.size(); }
    Complex operator[](std::size_t i) const noexcept { return amplitudes_[i]; }
    std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }

    double norm_squared() const noexcept;
    // |E_n|^2 per site.
    std::vector<double> intensities() const;

    friend FieldState operator*(Complex scale, const FieldState& v);

private:
    std::vector<Complex> amplitudes_;
};

Operator mat_mul(const Operator& a, const Operator& b);
// Conjugate transpose.
Operator adjoint(const Operator& a);
FieldState apply(const Operator& a, const FieldState& v);

double max_abs_diff(const Operator& a, const Operator& b);
double max_abs_diff(const FieldState& a, const FieldState& b);

// u * diag(d) * u^dagger. The workhorse for every spectral function.
Operator conjugate_by_unitary(const Operator& u, std::span<const Complex> d);

// <a|b>, antilinear in the first argument.
Complex inner_product(const FieldState& a, const FieldState& b);

// a^k by repeated multiplication; a^0 = I.
Operator power(const Operator& a, unsigned k);

inline bool is_hermitian(const Operator& a, double tol) { return max_abs_diff(a, adjoint(a)) < tol; }

inline bool is_unitary(const Operator& u, double tol) {
    return max_abs_diff(mat_mul(u, adjoint(u)), Operator::identity(u.dim())) < tol;
}

}  // namespace pbphase
