#pragma once
//
// Circular waveguide arrays with nearest-neighbour coupling.
//
// The coupled-mode equations
//     i dE_n/dz = gamma (E_{n-1} + E_{n+1}),   indices mod sites,
// have generator H = gamma (V + V^dagger) where V is the cyclic shift. Four
// independent propagators are provided:
//
//   spectral  exp(-i z H) = F diag(exp(-2 i gamma z cos(2 pi j/sites))) F^dagger
//   bessel    sum_{|n| <= trunc} i^n J_n(-2 gamma z) V^n
//   folded    sum_{n=0}^{sites-1} G_n V^n, the two-sided Bessel series folded
//             onto the ring using V^sites = I
//   ode       fixed-step RK4 on the literal coupled equations
//
// sites = 2 couples each guide to the other twice (left and right neighbour
// coincide), so H = 2 gamma * swap.

#include <cstddef>
#include <string_view>
#include <utility>
#include <vector>

#include "pbphase/linalg.hpp"

namespace pbphase {

class RingLattice {
public:
    // Throws usage_error unless sites >= 2 and gamma is finite and positive.
    RingLattice(std::size_t sites, double gamma);

    std::size_t sites() const noexcept { return sites_; }
    double gamma() const noexcept { return gamma_; }

    // Eigenvalues of H in DFT order: 2 gamma cos(2 pi j / sites).
    std::vector<double> eigenvalues() const;

private:
    std::size_t sites_;
    double gamma_;
};

enum class PropagationMethod { spectral, bessel, folded, ode };

// Throws usage_error for anything but "spectral", "bessel", "folded", "ode".
PropagationMethod parse_method(std::string_view name);
std::string_view method_name(PropagationMethod m);

struct PropagationPlan {
    double z_max = 0.0;
    std::size_t samples = 2;
    PropagationMethod method = PropagationMethod::spectral;
    // RK4 step for the ode method; 0 selects min(1e-3, 0.01/gamma).
    double ode_step = 0.0;
    // Sample z points on worker threads (analytic methods only).
    bool parallel = false;

    // Uniform grid from 0 to z_max inclusive. Throws usage_error if
    // samples < 2 or z_max is negative or non-finite.
    std::vector<double> z_grid() const;
};

struct IntensityTrace {
    std::vector<double> z_values;
    std::vector<std::vector<double>> intensities;  // [sample][site]
    std::vector<FieldState> amplitudes;            // [sample]

    std::size_t samples() const noexcept { return z_values.size(); }
};

struct FoldedCoefficients {
    std::vector<Complex> g;  // coefficient of V^n, n = 0..sites-1

    // sum_n g_n V^n applied to e0.
    FieldState apply_to(const FieldState& e0) const;
};

struct Revival {
    double z;
    double fidelity;
};

Operator hamiltonian(const RingLattice& lat);

Operator propagator_spectral(const RingLattice& lat, double z);

// Default truncation for the Bessel series: ceil(2 gamma |z|) + 40.
long default_bessel_truncation(const RingLattice& lat, double z);

FieldState propagate_bessel(const RingLattice& lat, double z, const FieldState& e0, long trunc);

FoldedCoefficients folded_coefficients(const RingLattice& lat, double z);

// RK4 with fixed step <= 0.01/gamma, landing exactly on each grid point.
// z_grid must be ascending and start at 0.
IntensityTrace propagate_ode(const RingLattice& lat, const std::vector<double>& z_grid, const FieldState& e0,
                             double step);

IntensityTrace intensity_trace(const RingLattice& lat, const FieldState& e0, const PropagationPlan& plan);

// |<e0, E(z)>|^2 / (|e0|^2 |E(z)|^2), exact spectral propagation.
double fidelity(const RingLattice& lat, const FieldState& e0, double z);

// Interior local maxima of the fidelity on (0, z_max) with F > 1 - tol,
// located to within 1e-6 in z by golden-section refinement.
std::vector<Revival> revival_search(const RingLattice& lat, const FieldState& e0, double z_max, double tol);

// (V^k e)_j = e_{(j+k) mod dim}, k may be negative.
FieldState cyclic_shift(const FieldState& e, long k);

}  // namespace pbphase
