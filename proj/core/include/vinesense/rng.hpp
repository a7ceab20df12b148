#pragma once

#include <cstdint>

#include "vinesense/geometry.hpp"

namespace vinesense {

// Deterministic splitmix64 stream. Used instead of <random> engines because
// std::normal_distribution is implementation-defined; results here are
// bit-identical across platforms and standard libraries.
struct RngStream {
    std::uint64_t state = 0;

    explicit RngStream(std::uint64_t seed) : state(seed) {}

    std::uint64_t next_u64();
    double next_unit();  // uniform in [0, 1)

    // Box-Muller, one value per call (the sine partner is discarded so the
    // stream position is a fixed two u64 draws per normal).
    double next_normal(double mean, double stddev);

    Vec3 next_unit_vector();  // uniform on the sphere, two u64 draws
};

// Stable child-stream derivation from (seed, tag, index). Streams derived with
// distinct tags or indices are statistically independent regardless of the
// order or number of draws on any of them.
std::uint64_t derive_stream(std::uint64_t seed, const char* tag, std::uint64_t index);

}  // namespace vinesense
