#include "pbphase/linalg.hpp"

#include <cmath>
#include <string>

#include "pbphase/kernels.hpp"

namespace pbphase {
namespace {

void require_finite(std::span<const Complex> values, const char* what) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i].real()) || !std::isfinite(values[i].imag())) {
            throw domain_error(std::string(what) + ": non-finite entry at index " + std::to_string(i));
        }
    }
}

void require_same_dim(std::size_t a, std::size_t b, const char* op) {
    if (a != b) {
        throw usage_error(std::string(op) + ": dimension mismatch (" + std::to_string(a) + " vs " +
                          std::to_string(b) + ")");
    }
}

}  // namespace

void ToleranceProfile::validate() const {
    for (double t : {eq_tol, spectral_tol, ode_tol, revival_tol}) {
        if (!(t > 0.0 && t < 1.0)) {
            throw usage_error("ToleranceProfile: every tolerance must lie in (0, 1)");
        }
    }
}

Operator::Operator(std::size_t dim, std::vector<Complex> entries) : dim_(dim), entries_(std::move(entries)) {
    if (dim_ == 0) {
        throw usage_error("Operator: dim must be at least 1");
    }
    if (entries_.size() != dim_ * dim_) {
        throw usage_error("Operator: expected " + std::to_string(dim_ * dim_) + " entries, got " +
                          std::to_string(entries_.size()));
    }
    require_finite(entries_, "Operator");
}

Operator Operator::identity(std::size_t dim) {
    return generate(dim, [](std::size_t r, std::size_t c) { return r == c ? Complex{1.0} : Complex{}; });
}

Operator Operator::diagonal(std::span<const Complex> values) {
    return generate(values.size(), [&](std::size_t r, std::size_t c) { return r == c ? values[r] : Complex{}; });
}

Complex Operator::at(std::size_t row, std::size_t col) const {
    if (row >= dim_ || col >= dim_) {
        throw usage_error("Operator::at: index out of range");
    }
    return (*this)(row, col);
}

std::vector<Complex> Operator::diagonal_entries() const {
    std::vector<Complex> out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        out[i] = (*this)(i, i);
    }
    return out;
}

Complex Operator::trace() const noexcept {
    Complex sum{};
    for (std::size_t i = 0; i < dim_; ++i) {
        sum += (*this)(i, i);
    }
    return sum;
}

Operator operator+(const Operator& a, const Operator& b) {
    require_same_dim(a.dim(), b.dim(), "operator+");
    std::vector<Complex> out(a.entries_);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] += b.entries_[i];
    }
    return Operator(a.dim(), std::move(out));
}

Operator operator-(const Operator& a, const Operator& b) { return a + Complex{-1.0} * b; }

Operator operator*(Complex scale, const Operator& a) {
    std::vector<Complex> out(a.entries_);
    for (auto& z : out) {
        z *= scale;
    }
    return Operator(a.dim(), std::move(out));
}

FieldState::FieldState(std::vector<Complex> amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.empty()) {
        throw usage_error("FieldState: dim must be at least 1");
    }
    require_finite(amplitudes_, "FieldState");
}

FieldState FieldState::basis(std::size_t dim, std::size_t k) {
    if (k >= dim) {
        throw usage_error("FieldState::basis: site " + std::to_string(k) + " outside dim " + std::to_string(dim));
    }
    std::vector<Complex> v(dim);
    v[k] = 1.0;
    return FieldState(std::move(v));
}

double FieldState::norm_squared() const noexcept {
    return kernels::active().norm_sq(amplitudes_.size(), amplitudes_.data());
}

std::vector<double> FieldState::intensities() const {
    std::vector<double> out(amplitudes_.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = std::norm(amplitudes_[i]);
    }
    return out;
}

FieldState operator*(Complex scale, const FieldState& v) {
    std::vector<Complex> out(v.amplitudes_);
    for (auto& z : out) {
        z *= scale;
    }
    return FieldState(std::move(out));
}

Operator mat_mul(const Operator& a, const Operator& b) {
    require_same_dim(a.dim(), b.dim(), "mat_mul");
    const std::size_t n = a.dim();
    std::vector<Complex> out(n * n);
    kernels::active().matmul(n, a.entries().data(), b.entries().data(), out.data());
    return Operator(n, std::move(out));
}

Operator adjoint(const Operator& a) {
    return Operator::generate(a.dim(), [&](std::size_t r, std::size_t c) { return std::conj(a(c, r)); });
}

FieldState apply(const Operator& a, const FieldState& v) {
    require_same_dim(a.dim(), v.dim(), "apply");
    std::vector<Complex> out(v.dim());
    kernels::active().matvec(a.dim(), a.entries().data(), v.amplitudes().data(), out.data());
    return FieldState(std::move(out));
}

double max_abs_diff(const Operator& a, const Operator& b) {
    require_same_dim(a.dim(), b.dim(), "max_abs_diff");
    return kernels::active().max_abs_diff(a.entries().size(), a.entries().data(), b.entries().data());
}

double max_abs_diff(const FieldState& a, const FieldState& b) {
    require_same_dim(a.dim(), b.dim(), "max_abs_diff");
    return kernels::active().max_abs_diff(a.dim(), a.amplitudes().data(), b.amplitudes().data());
}

Operator conjugate_by_unitary(const Operator& u, std::span<const Complex> d) {
    require_same_dim(u.dim(), d.size(), "conjugate_by_unitary");
    const Operator scaled = Operator::generate(u.dim(), [&](std::size_t r, std::size_t c) { return u(r, c) * d[c]; });
    return mat_mul(scaled, adjoint(u));
}

Complex inner_product(const FieldState& a, const FieldState& b) {
    require_same_dim(a.dim(), b.dim(), "inner_product");
    Complex sum{};
    for (std::size_t i = 0; i < a.dim(); ++i) {
        sum += std::conj(a[i]) * b[i];
    }
    return sum;
}

Operator power(const Operator& a, unsigned k) {
    Operator result = Operator::identity(a.dim());
    for (unsigned i = 0; i < k; ++i) {
        result = mat_mul(result, a);
    }
    return result;
}

}  // namespace pbphase
