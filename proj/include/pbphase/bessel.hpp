#pragma once

#include <vector>

namespace pbphase {

// Integer Bessel order, |n| <= 10^6.
class BesselOrder {
public:
    static constexpr long max_abs = 1'000'000;

    // Throws usage_error when |n| > max_abs.
    explicit BesselOrder(long n);

    long value() const noexcept { return n_; }

private:
    long n_;
};

// J_n(x), Bessel function of the first kind of integer order.
//
// Negative orders and arguments reduce to n, x >= 0 via
// J_{-n}(x) = (-1)^n J_n(x) and J_n(-x) = (-1)^n J_n(x). For |x| < 2 the power
// series is summed directly; otherwise Miller's downward recurrence is started
// at order max(|n|, ceil|x|) + 40 and normalised with
// J_0 + 2 sum_k J_{2k} = 1. Absolute error is below 1e-13 for |x| <= 100,
// |n| <= 200. Throws usage_error for non-finite x.
double bessel_j(BesselOrder n, double x);

// J_0(x), ..., J_{max_order}(x) from a single downward sweep (same accuracy).
std::vector<double> bessel_j_sequence(long max_order, double x);

}  // namespace pbphase
