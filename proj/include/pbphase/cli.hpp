#pragma once
//
// Command-line front end:
//
//   pbphase operator <name> --dim D [--out PATH] [--format json]
//   pbphase propagate --sites S --gamma G --excite K --z-max Z --samples N
//                     --method spectral|bessel|folded|ode [--out PATH] [--parallel]
//   pbphase revivals --sites S --gamma G --excite K --z-max Z [--tol T]
//   pbphase selftest [--max-dim D] [--seed N]
//
// Exit codes: 0 success, 1 verification failure, 2 usage, 3 I/O.

#include <iosfwd>
#include <string>
#include <vector>

#include "pbphase/linalg.hpp"
#include "pbphase/waveguide.hpp"

namespace pbphase::cli {

enum ExitCode : int { ok = 0, verification_failed = 1, usage = 2, io = 3 };

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// {"dim":d,"re":[[...]],"im":[[...]]} followed by a newline.
std::string operator_to_json(const Operator& op);

// Header z,site0,...,site{n-1}; 17 significant digits; '\n' line endings.
std::string trace_to_csv(const IntensityTrace& trace);

// printf-style %.<significant>g, independent of the global locale.
std::string format_double(double v, int significant = 17);

}  // namespace pbphase::cli
