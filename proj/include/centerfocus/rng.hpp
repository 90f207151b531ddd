#pragma once

#include "centerfocus/scalar.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace centerfocus {

/// Deterministic seeded random stream (splitmix64). Streams are derived from
/// a master seed plus a purpose tag so independent consumers never share
/// state and runs are reproducible.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ^ 0x9e3779b97f4a7c15ull) {}
    Rng(std::uint64_t seed, const std::string& tag) : state_(mix(seed, tag)) {}

    std::uint64_t next_u64();
    /// uniform in [0,1)
    double next_double();
    /// uniform integer in [lo, hi] inclusive
    long next_long(long lo, long hi);

    /// Dyadic rational uniform in (-1, 1), numerator of `bits` bits.
    Rat next_dyadic(int bits = 30);

    /// Exact complex with dyadic re/im, roughly unit scale.
    QC next_qc();

    /// Exact point on the complex unit circle (rational parametrization),
    /// used for the gamma trick.
    QC next_unit_circle();

    Rng fork(const std::string& tag) { return Rng(next_u64(), tag); }

private:
    static std::uint64_t mix(std::uint64_t seed, const std::string& tag);
    std::uint64_t state_;
};

}  // namespace centerfocus
