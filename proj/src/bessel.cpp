#include "pbphase/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pbphase/errors.hpp"

namespace pbphase {
namespace {

constexpr double series_threshold = 2.0;
constexpr long miller_margin = 40;
constexpr double rescale_limit = 1e250;

// J_n(x) for n >= 0, 0 <= x < 2.
double power_series(long n, double x) {
    const double half = 0.5 * x;
    double lead = 1.0;
    for (long k = 1; k <= n && lead != 0.0; ++k) {
        lead *= half / static_cast<double>(k);
    }
    if (lead == 0.0) {
        return 0.0;
    }
    const double q = half * half;
    double term = lead;
    double sum = lead;
    for (long k = 1; k < 80; ++k) {
        term *= -q / (static_cast<double>(k) * static_cast<double>(n + k));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) {
            break;
        }
    }
    return sum;
}

// Downward Miller sweep for x >= 2. Writes J_k(x) into out[k - lo] for
// k in [lo, hi]; start must exceed hi.
void miller_sweep(double x, long start, long lo, long hi, std::vector<double>& out) {
    out.assign(static_cast<std::size_t>(hi - lo + 1), 0.0);
    // Highest stored index that is still nonzero; everything above has
    // underflowed and need not be rescaled again.
    long live_top = -1;

    double above = 0.0;    // J_{k+1}
    double current = 1.0;  // J_k, arbitrary seed at k = start
    double even_sum = 0.0;
    const double two_over_x = 2.0 / x;

    for (long k = start; k >= 0; --k) {
        if (k <= hi && k >= lo) {
            out[static_cast<std::size_t>(k - lo)] = current;
            live_top = std::max(live_top, k);
        }
        if (k % 2 == 0) {
            even_sum += (k == 0 ? 1.0 : 2.0) * current;
        }
        if (k == 0) {
            break;
        }
        const double below = static_cast<double>(k) * two_over_x * current - above;
        above = current;
        current = below;
        if (std::abs(current) > rescale_limit) {
            current /= rescale_limit;
            above /= rescale_limit;
            even_sum /= rescale_limit;
            for (long i = std::max(k, lo); i <= live_top; ++i) {
                out[static_cast<std::size_t>(i - lo)] /= rescale_limit;
            }
            while (live_top >= std::max(k, lo) && out[static_cast<std::size_t>(live_top - lo)] == 0.0) {
                --live_top;
            }
        }
    }
    for (double& v : out) {
        v /= even_sum;
    }
}

long miller_start(long order, double x) {
    // A flat +40 leaves J_start(x) ~ 1e-12 at x = 100; widen with sqrt(x).
    const long widen = static_cast<long>(std::ceil(std::sqrt(40.0 * x)));
    return std::max(order, static_cast<long>(std::ceil(x))) + miller_margin + widen;
}

void require_finite_arg(double x) {
    if (!std::isfinite(x)) {
        throw usage_error("bessel_j: argument must be finite");
    }
}

}  // namespace

BesselOrder::BesselOrder(long n) : n_(n) {
    if (n > max_abs || n < -max_abs) {
        throw usage_error("BesselOrder: |n| = " + std::to_string(n) + " exceeds " + std::to_string(max_abs));
    }
}

double bessel_j(BesselOrder order, double x) {
    require_finite_arg(x);
    const long n = std::abs(order.value());
    // (-1)^n from a negative order, and again from a negative argument.
    const bool odd = (n % 2) != 0;
    const bool flip = odd && ((order.value() < 0) != (x < 0.0));
    const double ax = std::abs(x);

    double value;
    if (ax == 0.0) {
        value = (n == 0) ? 1.0 : 0.0;
    } else if (ax < series_threshold) {
        value = power_series(n, ax);
    } else {
        std::vector<double> out;
        miller_sweep(ax, miller_start(n, ax), n, n, out);
        value = out.front();
    }
    return flip ? -value : value;
}

std::vector<double> bessel_j_sequence(long max_order, double x) {
    require_finite_arg(x);
    if (max_order < 0 || max_order > BesselOrder::max_abs) {
        throw usage_error("bessel_j_sequence: max_order out of range");
    }
    const double ax = std::abs(x);
    std::vector<double> out;
    if (ax == 0.0) {
        out.assign(static_cast<std::size_t>(max_order + 1), 0.0);
        out[0] = 1.0;
    } else if (ax < series_threshold) {
        out.resize(static_cast<std::size_t>(max_order + 1));
        for (long k = 0; k <= max_order; ++k) {
            out[static_cast<std::size_t>(k)] = power_series(k, ax);
        }
    } else {
        miller_sweep(ax, miller_start(max_order, ax), 0, max_order, out);
    }
    if (x < 0.0) {
        for (std::size_t k = 1; k < out.size(); k += 2) {
            out[k] = -out[k];
        }
    }
    return out;
}

}  // namespace pbphase
