#pragma once

#include <cstdint>
#include <vector>

#include "vinesense/geometry.hpp"
#include "vinesense/rng.hpp"

namespace vinesense {

struct ImuSample {
    double time_s = 0.0;
    int imu_index = 0;  // 0-based, base toward tip
    Quat orientation;
};

// Per-pair alignment captured with the robot straight. offsets[i] maps IMU i's
// frame onto IMU i+1's frame at capture time; removing it from later readings
// leaves only the robot's bend between the two sensors.
struct OffsetTable {
    std::vector<Quat> offsets;  // size num_imus - 1
    double captured_at_s = 0.0;  // completion time: max sample time in the snapshot
};

// Synthetic orientation corruption. Each sensor drifts at its own constant
// rate about one fixed random axis; every reading additionally carries white
// orientation noise. Rates are drawn once per seed (the same physical sensors
// persist across trials), noise is drawn per reading.
struct DriftModel {
    double mean_rate_deg_min = 1.33;
    double rate_spread_deg_min = 1.0;
    double noise_std_deg = 2.0;
    // When set, the accumulated drift angle at elapsed t becomes one draw from
    // N(0, rate * sqrt(minutes)) instead of the deterministic ramp rate * minutes.
    bool random_walk = false;
    std::uint64_t seed = 0;
};

struct SensorDrift {
    double rate_deg_min = 0.0;
    Vec3 axis{0.0, 0.0, 1.0};
};

// Snapshot must contain exactly one sample per IMU index 0..n-1, in any order.
// Throws MalformedSnapshot on a missing or duplicate index.
OffsetTable compute_offsets(const std::vector<ImuSample>& straight_snapshot);

// r_i = inv(offsets[i]) * (inv(q_i) * q_{i+1}). When current equals the
// snapshot the result is all-identity; that identity fixes the multiplication
// order. Throws MalformedSnapshot on bad indices or a size mismatch.
std::vector<Quat> corrected_relative_rotations(const std::vector<ImuSample>& current,
                                               const OffsetTable& table);

// Deterministic per-sensor rates and drift axes. Rates ~ N(mean, spread)
// clamped at 0; axes uniform on the sphere. Sensor i's draw depends only on
// (model.seed, i), never on n.
std::vector<SensorDrift> sample_sensor_rates(const DriftModel& model, int n);

// Composes q (locally, on the right) with the drift rotation about `axis` of
// rate*elapsed/60 + N(0, noise_std) degrees, then a noise rotation about a
// random axis of |N(0, noise_std)| degrees. With noise_std == 0 the noise
// draws are skipped entirely (stream position moves only for random_walk), so
// elapsed == 0 returns q bit-identically and the deterministic-ramp drift
// angle is exactly rate*elapsed/60.
Quat apply_drift(Quat q, double rate_deg_min, Vec3 axis, double elapsed_s,
                 double noise_std_deg, RngStream& rng, bool random_walk = false);

}  // namespace vinesense
