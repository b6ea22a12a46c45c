#pragma once

#include <optional>
#include <string>

#include "secgame/patching.hpp"

namespace secgame {

struct BenchReport {
    PatchResult patch;
    double opt_p = 0.0;
    double opt_f = 0.0;
    std::optional<double> opt_f_reduced;  // fractional optimum at R - theta_max, isolated only
    double patch_ms = 0.0;
    double opt_p_ms = 0.0;
    double opt_f_ms = 0.0;
    double opt_f_reduced_ms = 0.0;
};

// One patching run plus the reference optima it is judged against.
BenchReport bench_patching(const Instance& inst, int d_max, std::uint64_t seed);

// Patch trace rows followed by labelled reference rows (opt_p, opt_f, and
// opt_f_minus_theta_max when present) in the same six-column layout.
std::string bench_to_csv(const BenchReport& report);

}  // namespace secgame
