#include "pbphase/waveguide.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <thread>

#include "pbphase/bessel.hpp"
#include "pbphase/kernels.hpp"
#include "pbphase/phase_operators.hpp"

namespace pbphase {
namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr double folded_cutoff = 1e-16;

// i^n for any integer n.
Complex i_power(long n) {
    switch (((n % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

std::size_t ring_index(long k, std::size_t n) {
    const auto m = static_cast<long>(n);
    return static_cast<std::size_t>(((k % m) + m) % m);
}

void require_sites(const RingLattice& lat, const FieldState& e0, const char* op) {
    if (e0.dim() != lat.sites()) {
        throw usage_error(std::string(op) + ": field has " + std::to_string(e0.dim()) + " sites, lattice has " +
                          std::to_string(lat.sites()));
    }
}

void require_finite_z(double z, const char* op) {
    if (!std::isfinite(z)) {
        throw usage_error(std::string(op) + ": z must be finite");
    }
}

// E(z) = F diag(exp(-i z eps_j)) F^dagger e0 with F^dagger e0 computed once.
class SpectralPropagator {
public:
    SpectralPropagator(const RingLattice& lat, const FieldState& e0)
        : f_(dft(HilbertDim(lat.sites() - 1))),
          eps_(lat.eigenvalues()),
          coeffs_(apply(adjoint(f_), e0)),
          input_norm_sq_(e0.norm_squared()),
          e0_(e0) {}

    FieldState at(double z) const {
        if (z == 0.0) return e0_;
        std::vector<Complex> rotated(eps_.size());
        for (std::size_t j = 0; j < eps_.size(); ++j) {
            rotated[j] = std::polar(1.0, -z * eps_[j]) * coeffs_[j];
        }
        return apply(f_, FieldState(std::move(rotated)));
    }

    // Norm of E(z) equals that of e0 exactly for a unitary step, so the
    // overlap reduces to a sum over the spectrum.
    double fidelity(double z) const {
        if (input_norm_sq_ == 0.0) {
            return 0.0;
        }
        Complex overlap{};
        for (std::size_t j = 0; j < eps_.size(); ++j) {
            overlap += std::norm(coeffs_[j]) * std::polar(1.0, -z * eps_[j]);
        }
        return std::norm(overlap) / (input_norm_sq_ * input_norm_sq_);
    }

private:
    Operator f_;
    std::vector<double> eps_;
    FieldState coeffs_;
    double input_norm_sq_;
    FieldState e0_;
};

// dE_n/dz = -i gamma (E_{n-1} + E_{n+1}), ring closure on both ends.
void coupled_mode_rhs(double gamma, const std::vector<Complex>& e, std::vector<Complex>& out) {
    const std::size_t n = e.size();
    for (std::size_t j = 0; j < n; ++j) {
        const Complex neighbours = e[(j + n - 1) % n] + e[(j + 1) % n];
        out[j] = Complex{0.0, -gamma} * neighbours;
    }
}

double golden_section_max(const SpectralPropagator& prop, double a, double b) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = prop.fidelity(c);
    double fd = prop.fidelity(d);
    for (int iter = 0; iter < 200 && (b - a) > 1e-9; ++iter) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = prop.fidelity(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = prop.fidelity(d);
        }
    }
    return 0.5 * (a + b);
}

FieldState trace_sample(const RingLattice& lat, const FieldState& e0, const SpectralPropagator& spectral,
                        PropagationMethod method, double z) {
    switch (method) {
        case PropagationMethod::spectral: return spectral.at(z);
        case PropagationMethod::bessel: return propagate_bessel(lat, z, e0, default_bessel_truncation(lat, z));
        case PropagationMethod::folded: return folded_coefficients(lat, z).apply_to(e0);
        case PropagationMethod::ode: break;
    }
    throw usage_error("trace_sample: ode is not sampled pointwise");
}

}  // namespace

RingLattice::RingLattice(std::size_t sites, double gamma) : sites_(sites), gamma_(gamma) {
    if (sites < 2) {
        throw usage_error("RingLattice: need at least 2 sites, got " + std::to_string(sites));
    }
    if (!std::isfinite(gamma) || gamma <= 0.0) {
        throw usage_error("RingLattice: gamma must be finite and positive");
    }
}

std::vector<double> RingLattice::eigenvalues() const {
    std::vector<double> out(sites_);
    for (std::size_t j = 0; j < sites_; ++j) {
        out[j] = 2.0 * gamma_ * std::cos(two_pi * static_cast<double>(j) / static_cast<double>(sites_));
    }
    return out;
}

PropagationMethod parse_method(std::string_view name) {
    if (name == "spectral") return PropagationMethod::spectral;
    if (name == "bessel") return PropagationMethod::bessel;
    if (name == "folded") return PropagationMethod::folded;
    if (name == "ode") return PropagationMethod::ode;
    throw usage_error("unknown propagation method '" + std::string(name) + "'");
}

std::string_view method_name(PropagationMethod m) {
    switch (m) {
        case PropagationMethod::spectral: return "spectral";
        case PropagationMethod::bessel: return "bessel";
        case PropagationMethod::folded: return "folded";
        case PropagationMethod::ode: return "ode";
    }
    return "unknown";
}

std::vector<double> PropagationPlan::z_grid() const {
    if (samples < 2) {
        throw usage_error("PropagationPlan: samples must be at least 2");
    }
    if (!std::isfinite(z_max) || z_max < 0.0) {
        throw usage_error("PropagationPlan: z_max must be finite and non-negative");
    }
    std::vector<double> grid(samples);
    const double last = static_cast<double>(samples - 1);
    for (std::size_t k = 0; k < samples; ++k) {
        grid[k] = z_max * static_cast<double>(k) / last;
    }
    grid.back() = z_max;
    return grid;
}

FieldState FoldedCoefficients::apply_to(const FieldState& e0) const {
    if (e0.dim() != g.size()) {
        throw usage_error("FoldedCoefficients::apply_to: dimension mismatch");
    }
    std::vector<Complex> out(g.size());
    for (std::size_t n = 0; n < g.size(); ++n) {
        const FieldState shifted = cyclic_shift(e0, static_cast<long>(n));
        kernels::active().axpy(out.size(), g[n], shifted.amplitudes().data(), out.data());
    }
    return FieldState(std::move(out));
}

FieldState cyclic_shift(const FieldState& e, long k) {
    std::vector<Complex> out(e.dim());
    for (std::size_t j = 0; j < out.size(); ++j) {
        out[j] = e[ring_index(static_cast<long>(j) + k, out.size())];
    }
    return FieldState(std::move(out));
}

Operator hamiltonian(const RingLattice& lat) {
    const Operator v = lsg_shift_operator(HilbertDim(lat.sites() - 1));
    return Complex{lat.gamma()} * (v + adjoint(v));
}

Operator propagator_spectral(const RingLattice& lat, double z) {
    require_finite_z(z, "propagator_spectral");
    if (z == 0.0) return Operator::identity(lat.sites());
    const std::vector<double> eps = lat.eigenvalues();
    std::vector<Complex> phases(eps.size());
    for (std::size_t j = 0; j < eps.size(); ++j) {
        phases[j] = std::polar(1.0, -z * eps[j]);
    }
    return conjugate_by_unitary(dft(HilbertDim(lat.sites() - 1)), phases);
}

long default_bessel_truncation(const RingLattice& lat, double z) {
    return static_cast<long>(std::ceil(2.0 * lat.gamma() * std::abs(z))) + 40;
}

FieldState propagate_bessel(const RingLattice& lat, double z, const FieldState& e0, long trunc) {
    require_finite_z(z, "propagate_bessel");
    require_sites(lat, e0, "propagate_bessel");
    if (trunc < 0) {
        throw usage_error("propagate_bessel: truncation must be non-negative");
    }
    const double x = -2.0 * lat.gamma() * z;
    const std::vector<double> j = bessel_j_sequence(trunc, x);
    std::vector<Complex> out(e0.dim());
    const auto& k = kernels::active();
    for (long n = -trunc; n <= trunc; ++n) {
        const long a = std::abs(n);
        // J_{-n}(x) = (-1)^n J_n(x)
        const double jn = (n < 0 && (a % 2) != 0) ? -j[static_cast<std::size_t>(a)] : j[static_cast<std::size_t>(a)];
        if (jn == 0.0) {
            continue;
        }
        const FieldState shifted = cyclic_shift(e0, n);
        k.axpy(out.size(), i_power(n) * jn, shifted.amplitudes().data(), out.data());
    }
    return FieldState(std::move(out));
}

FoldedCoefficients folded_coefficients(const RingLattice& lat, double z) {
    require_finite_z(z, "folded_coefficients");
    const std::size_t sites = lat.sites();
    const double x = -2.0 * lat.gamma() * z;
    const double ax = std::abs(x);

    long reach = static_cast<long>(std::ceil(ax)) + 60;
    for (;;) {
        const std::vector<double> j = bessel_j_sequence(reach, x);
        std::vector<Complex> g(sites);
        bool converged = false;
        for (long p = 0; p <= reach; ++p) {
            const double jp = j[static_cast<std::size_t>(p)];
            g[ring_index(p, sites)] += i_power(p) * jp;
            if (p > 0) {
                const double jm = (p % 2 != 0) ? -jp : jp;
                g[ring_index(-p, sites)] += i_power(-p) * jm;
            }
            if (static_cast<double>(p) > ax && std::abs(jp) < folded_cutoff) {
                converged = true;
                break;
            }
        }
        if (converged) {
            return FoldedCoefficients{std::move(g)};
        }
        reach *= 2;
    }
}

IntensityTrace propagate_ode(const RingLattice& lat, const std::vector<double>& z_grid, const FieldState& e0,
                             double step) {
    require_sites(lat, e0, "propagate_ode");
    const double max_step = 0.01 / lat.gamma();
    if (!(step > 0.0) || step > max_step * (1.0 + 1e-12)) {
        throw usage_error("propagate_ode: step must lie in (0, 0.01/gamma] = (0, " + std::to_string(max_step) + "]");
    }
    if (z_grid.empty() || z_grid.front() != 0.0) {
        throw usage_error("propagate_ode: z grid must start at 0");
    }
    for (std::size_t i = 1; i < z_grid.size(); ++i) {
        if (!(z_grid[i] >= z_grid[i - 1]) || !std::isfinite(z_grid[i])) {
            throw usage_error("propagate_ode: z grid must be finite and ascending");
        }
    }

    const std::size_t n = e0.dim();
    const auto& k = kernels::active();
    std::vector<Complex> e(e0.amplitudes().begin(), e0.amplitudes().end());
    std::vector<Complex> k1(n), k2(n), k3(n), k4(n), tmp(n);

    IntensityTrace trace;
    trace.z_values = z_grid;
    trace.intensities.reserve(z_grid.size());
    trace.amplitudes.reserve(z_grid.size());
    auto record = [&] {
        FieldState state(e);
        trace.intensities.push_back(state.intensities());
        trace.amplitudes.push_back(std::move(state));
    };
    record();

    for (std::size_t i = 1; i < z_grid.size(); ++i) {
        const double span = z_grid[i] - z_grid[i - 1];
        const auto substeps = static_cast<std::size_t>(std::ceil(span / step));
        if (substeps > 0) {
            const double h = span / static_cast<double>(substeps);
            for (std::size_t s = 0; s < substeps; ++s) {
                coupled_mode_rhs(lat.gamma(), e, k1);
                tmp = e;
                k.axpy(n, 0.5 * h, k1.data(), tmp.data());
                coupled_mode_rhs(lat.gamma(), tmp, k2);
                tmp = e;
                k.axpy(n, 0.5 * h, k2.data(), tmp.data());
                coupled_mode_rhs(lat.gamma(), tmp, k3);
                tmp = e;
                k.axpy(n, h, k3.data(), tmp.data());
                coupled_mode_rhs(lat.gamma(), tmp, k4);
                k.axpy(n, h / 6.0, k1.data(), e.data());
                k.axpy(n, h / 3.0, k2.data(), e.data());
                k.axpy(n, h / 3.0, k3.data(), e.data());
                k.axpy(n, h / 6.0, k4.data(), e.data());
            }
        }
        record();
    }
    return trace;
}

IntensityTrace intensity_trace(const RingLattice& lat, const FieldState& e0, const PropagationPlan& plan) {
    require_sites(lat, e0, "intensity_trace");
    const std::vector<double> grid = plan.z_grid();
    if (plan.method == PropagationMethod::ode) {
        const double step = plan.ode_step > 0.0 ? plan.ode_step : std::min(1e-3, 0.01 / lat.gamma());
        return propagate_ode(lat, grid, e0, step);
    }

    const SpectralPropagator spectral(lat, e0);
    std::vector<std::optional<FieldState>> states(grid.size());
    auto fill = [&](std::size_t begin, std::size_t stride) {
        for (std::size_t i = begin; i < grid.size(); i += stride) {
            states[i] = trace_sample(lat, e0, spectral, plan.method, grid[i]);
        }
    };
    const std::size_t workers =
        plan.parallel ? std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, grid.size()) : 1;
    if (workers <= 1) {
        fill(0, 1);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back(fill, w, workers);
        }
    }

    IntensityTrace trace;
    trace.z_values = grid;
    trace.intensities.reserve(grid.size());
    trace.amplitudes.reserve(grid.size());
    for (auto& s : states) {
        trace.intensities.push_back(s->intensities());
        trace.amplitudes.push_back(std::move(*s));
    }
    return trace;
}

double fidelity(const RingLattice& lat, const FieldState& e0, double z) {
    require_sites(lat, e0, "fidelity");
    require_finite_z(z, "fidelity");
    return SpectralPropagator(lat, e0).fidelity(z);
}

std::vector<Revival> revival_search(const RingLattice& lat, const FieldState& e0, double z_max, double tol) {
    require_sites(lat, e0, "revival_search");
    if (!std::isfinite(z_max) || z_max <= 0.0) {
        throw usage_error("revival_search: z_max must be finite and positive");
    }
    if (!(tol > 0.0 && tol < 1.0)) {
        throw usage_error("revival_search: tol must lie in (0, 1)");
    }
    const SpectralPropagator prop(lat, e0);

    // The fastest fidelity oscillation has angular frequency 4 gamma; this
    // scan puts hundreds of points in every period.
    const double target = 0.005 / lat.gamma();
    const auto cells = static_cast<std::size_t>(std::max(8.0, std::ceil(z_max / target)));
    std::vector<double> zs(cells + 1);
    std::vector<double> fs(cells + 1);
    for (std::size_t i = 0; i <= cells; ++i) {
        zs[i] = z_max * static_cast<double>(i) / static_cast<double>(cells);
        fs[i] = prop.fidelity(zs[i]);
    }

    std::vector<Revival> found;
    for (std::size_t i = 1; i < cells; ++i) {
        if (!(fs[i] > fs[i - 1] && fs[i] >= fs[i + 1])) {
            continue;
        }
        const double z = golden_section_max(prop, zs[i - 1], zs[i + 1]);
        const double f = prop.fidelity(z);
        if (f > 1.0 - tol && (found.empty() || std::abs(z - found.back().z) > 1e-6)) {
            found.push_back({z, f});
        }
    }
    return found;
}

}  // namespace pbphase
