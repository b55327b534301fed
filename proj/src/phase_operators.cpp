#include "pbphase/phase_operators.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace pbphase {
namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// exp(2 pi i k / dim), with k reduced first so large products stay exact.
Complex root_of_unity(long long k, std::size_t dim) {
    const auto n = static_cast<long long>(dim);
    const long long r = ((k % n) + n) % n;
    return std::polar(1.0, two_pi * static_cast<double>(r) / static_cast<double>(dim));
}

// 1 / (exp(i a) - 1) for a = 2 pi d / dim, d != 0 (mod dim). The denominator
// is formed as (-2 sin^2(a/2), sin a) to avoid cancellation near a = 0.
Complex inverse_root_minus_one(long long d, std::size_t dim) {
    const auto n = static_cast<long long>(dim);
    const long long r = ((d % n) + n) % n;
    const double a = two_pi * static_cast<double>(r) / static_cast<double>(dim);
    const double half = std::sin(0.5 * a);
    return 1.0 / Complex{-2.0 * half * half, std::sin(a)};
}

Operator closed_form_with(HilbertDim h, double diagonal, double off_scale) {
    const std::size_t dim = h.dim();
    return Operator::generate(dim, [&](std::size_t n, std::size_t k) -> Complex {
        if (n == k) {
            return diagonal;
        }
        const auto d = static_cast<long long>(n) - static_cast<long long>(k);
        return off_scale * inverse_root_minus_one(d, dim);
    });
}

}  // namespace

HilbertDim HilbertDim::from_dim(std::size_t dim) {
    if (dim == 0) {
        throw usage_error("HilbertDim: dimension must be at least 1");
    }
    return HilbertDim(dim - 1);
}

PhaseAngle::PhaseAngle(double theta) : theta_(theta) {
    if (!std::isfinite(theta) || theta < 0.0 || theta >= two_pi) {
        throw usage_error("PhaseAngle: " + std::to_string(theta) + " outside [0, 2pi)");
    }
}

PhaseAngle PhaseAngle::wrap(double theta) {
    if (!std::isfinite(theta)) {
        throw usage_error("PhaseAngle::wrap: non-finite angle");
    }
    double r = std::fmod(theta, two_pi);
    if (r < 0.0) {
        r += two_pi;
    }
    if (r >= two_pi) {
        r = 0.0;
    }
    return PhaseAngle(r);
}

double arg_0_2pi(Complex z) { return PhaseAngle::wrap(std::arg(z)).radians(); }

Operator number_operator(HilbertDim h) {
    std::vector<Complex> diag(h.dim());
    for (std::size_t k = 0; k < diag.size(); ++k) {
        diag[k] = static_cast<double>(k);
    }
    return Operator::diagonal(diag);
}

Operator dft(HilbertDim h) {
    const std::size_t dim = h.dim();
    const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
    return Operator::generate(dim, [&](std::size_t n, std::size_t j) {
        return norm * root_of_unity(static_cast<long long>(n * j), dim);
    });
}

PhaseAngle theta_m(HilbertDim h, std::size_t m) {
    if (m > h.s()) {
        throw usage_error("theta_m: m = " + std::to_string(m) + " exceeds s = " + std::to_string(h.s()));
    }
    return PhaseAngle(two_pi * static_cast<double>(m) / static_cast<double>(h.dim()));
}

FieldState phase_state(HilbertDim h, PhaseAngle theta) {
    const double norm = 1.0 / std::sqrt(static_cast<double>(h.dim()));
    std::vector<Complex> amps(h.dim());
    for (std::size_t n = 0; n < amps.size(); ++n) {
        amps[n] = std::polar(norm, static_cast<double>(n) * theta.radians());
    }
    return FieldState(std::move(amps));
}

Operator dft_number_conjugation(HilbertDim h) {
    return conjugate_by_unitary(dft(h), number_operator(h).diagonal_entries());
}

Operator dft_number_conjugation_closed_form(HilbertDim h) {
    return closed_form_with(h, 0.5 * static_cast<double>(h.s()), 1.0);
}

PhaseOperatorPair pb_phase_operator(HilbertDim h) {
    const double dim = static_cast<double>(h.dim());
    const double step = two_pi / dim;
    std::vector<Complex> thetas(h.dim());
    for (std::size_t m = 0; m < thetas.size(); ++m) {
        thetas[m] = step * static_cast<double>(m);
    }
    const double diagonal = std::numbers::pi * static_cast<double>(h.s()) / dim;
    return PhaseOperatorPair{
        conjugate_by_unitary(dft(h), thetas),
        closed_form_with(h, diagonal, step),
        closed_form_with(h, diagonal, two_pi),
    };
}

Complex geometric_moment_sum(HilbertDim h, long d) {
    const auto dim = static_cast<long long>(h.dim());
    if (d == 0 || static_cast<unsigned long>(std::labs(d)) > h.s() || d % dim == 0) {
        throw usage_error("geometric_moment_sum: need 0 < |d| <= s, got d = " + std::to_string(d) +
                          " with s = " + std::to_string(h.s()));
    }
    const double denom = 2.0 * std::sin(std::numbers::pi * static_cast<double>(d) / static_cast<double>(dim));
    // exp(i pi d (2s+1)/(s+1)) = exp(2 pi i r / (2 dim)) with r = d (2s+1) mod 2 dim.
    const Complex phase = root_of_unity(static_cast<long long>(d) * (2 * dim - 1), static_cast<std::size_t>(2 * dim));
    return Complex{0.0, -static_cast<double>(dim) / denom} * phase;
}

Complex geometric_moment_sum_brute(HilbertDim h, long d) {
    Complex sum{};
    for (std::size_t m = 0; m <= h.s(); ++m) {
        sum += static_cast<double>(m) * root_of_unity(static_cast<long long>(d) * static_cast<long long>(m), h.dim());
    }
    return sum;
}

Operator lsg_shift_operator(HilbertDim h) {
    const std::size_t dim = h.dim();
    return Operator::generate(dim, [&](std::size_t r, std::size_t c) {
        return c == (r + 1) % dim ? Complex{1.0} : Complex{};
    });
}

std::vector<Complex> spectral_diagonal(HilbertDim h) {
    std::vector<Complex> out(h.dim());
    for (std::size_t j = 0; j < out.size(); ++j) {
        out[j] = root_of_unity(static_cast<long long>(j), h.dim());
    }
    return out;
}

Operator operator_function(HilbertDim h, const std::function<Complex(Complex)>& f) {
    std::vector<Complex> values = spectral_diagonal(h);
    for (std::size_t j = 0; j < values.size(); ++j) {
        values[j] = f(values[j]);
        if (!std::isfinite(values[j].real()) || !std::isfinite(values[j].imag())) {
            throw domain_error("operator_function: f is not finite at eigenvalue index j = " + std::to_string(j));
        }
    }
    return conjugate_by_unitary(dft(h), values);
}

Operator log_shift_operator(HilbertDim h) {
    return operator_function(h, [](Complex lambda) { return Complex{0.0, arg_0_2pi(lambda)}; });
}

}  // namespace pbphase
