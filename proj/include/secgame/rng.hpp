#pragma once

#include <cstdint>

namespace secgame {

// SplitMix64: the 64-bit mixing generator of Steele, Lea and Flood.
//
// state is advanced by the golden-gamma constant and the output is produced
// by two xor-multiply mixing rounds.  The n-th output is a pure function of
// seed + n * 0x9E3779B97F4A7C15, so a stream can be replayed from any point,
// which is what makes generated instances and patching traces reproducible
// across platforms.  Documented derived draws:
//
//   next_unit()         (next() >> 11) * 2^-53, uniform in [0, 1)
//   next_real(lo, hi)   lo + next_unit() * (hi - lo)
//   next_int(lo, hi)    lo + next() % (hi - lo + 1)
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53 random bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double next_real(double lo, double hi) { return lo + next_unit() * (hi - lo); }

    // Uniform integer in [lo, hi].  Uses the plain modulo reduction; the bias
    // is < 2^-57 for the small ranges used here and keeps the mapping trivial
    // to reproduce in other languages.
    std::int64_t next_int(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::uint64_t state_;
};

}  // namespace secgame
