#pragma once
//
// Brute-force oracles and the invariant suite behind `pbphase selftest`.
//
// The oracles here deliberately avoid the DFT diagonalisation that the
// constructions use, so that each check compares two independent routes.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pbphase/linalg.hpp"
#include "pbphase/phase_operators.hpp"

namespace pbphase::verification {

// F N F^dagger as the literal double sum
// (1/(s+1)) sum_{n,k} |n><k| sum_m m exp(2 pi i (n-k) m/(s+1)).
Operator dft_number_conjugation_brute(HilbertDim h);

// Matrix exponential by scaling and squaring of a Taylor series. General
// purpose; used only to referee spectral exponentials.
Operator expm_taylor(const Operator& a);

// Off-diagonal ratio paper_literal / closed_form, measured over every n != k.
struct ErratumRatio {
    std::size_t dim;
    double mean_ratio;       // mean of Re(ratio)
    double max_rel_error;    // max |ratio - (s+1)| / (s+1)
};
ErratumRatio erratum_ratio(HilbertDim h);

struct CheckResult {
    std::string suite;
    std::string name;
    bool passed;
    std::string detail;
};

struct SelftestOptions {
    std::size_t max_dim = 16;
    std::uint64_t seed = 7;
};

struct SelftestReport {
    std::vector<CheckResult> checks;
    std::vector<ErratumRatio> errata;

    bool all_passed() const;
};

// Runs every invariant; prints one line per check and a per-suite summary.
// Throws usage_error if max_dim < 2.
SelftestReport run_selftest(const SelftestOptions& options, std::ostream& log);

}  // namespace pbphase::verification
