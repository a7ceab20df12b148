#include "vinesense/calibration.hpp"

#include <algorithm>
#include <string>

#include "vinesense/errors.hpp"

namespace vinesense {

namespace {

// Returns samples ordered by imu_index after checking that indices form
// exactly {0, ..., n-1}.
std::vector<const ImuSample*> index_samples(const std::vector<ImuSample>& samples,
                                            const char* what) {
    std::size_t n = samples.size();
    std::vector<const ImuSample*> by_index(n, nullptr);
    for (const ImuSample& s : samples) {
        if (s.imu_index < 0 || static_cast<std::size_t>(s.imu_index) >= n) {
            throw MalformedSnapshot(std::string(what) + ": imu_index " +
                                    std::to_string(s.imu_index) + " outside 0.." +
                                    std::to_string(n - 1));
        }
        if (by_index[s.imu_index] != nullptr) {
            throw MalformedSnapshot(std::string(what) + ": duplicate sample for imu " +
                                    std::to_string(s.imu_index));
        }
        by_index[s.imu_index] = &s;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (by_index[i] == nullptr) {
            throw MalformedSnapshot(std::string(what) + ": missing sample for imu " +
                                    std::to_string(i) + " (expected one sample per imu 0.." +
                                    std::to_string(n - 1) + ")");
        }
    }
    return by_index;
}

}  // namespace

OffsetTable compute_offsets(const std::vector<ImuSample>& straight_snapshot) {
    if (straight_snapshot.size() < 2) {
        throw MalformedSnapshot("snapshot needs at least 2 samples, got " +
                                std::to_string(straight_snapshot.size()));
    }
    auto by_index = index_samples(straight_snapshot, "snapshot");
    OffsetTable table;
    table.offsets.reserve(by_index.size() - 1);
    table.captured_at_s = by_index[0]->time_s;
    for (std::size_t i = 0; i < by_index.size(); ++i) {
        table.captured_at_s = std::max(table.captured_at_s, by_index[i]->time_s);
        if (i + 1 < by_index.size()) {
            table.offsets.push_back(
                quat_mul(quat_inv(by_index[i]->orientation), by_index[i + 1]->orientation));
        }
    }
    return table;
}

std::vector<Quat> corrected_relative_rotations(const std::vector<ImuSample>& current,
                                               const OffsetTable& table) {
    auto by_index = index_samples(current, "current samples");
    if (by_index.size() != table.offsets.size() + 1) {
        throw MalformedSnapshot("offset table has " + std::to_string(table.offsets.size()) +
                                " pairs but " + std::to_string(by_index.size()) +
                                " samples were given");
    }
    std::vector<Quat> corrected;
    corrected.reserve(table.offsets.size());
    for (std::size_t i = 0; i + 1 < by_index.size(); ++i) {
        Quat raw = quat_mul(quat_inv(by_index[i]->orientation), by_index[i + 1]->orientation);
        corrected.push_back(quat_mul(quat_inv(table.offsets[i]), raw));
    }
    return corrected;
}

std::vector<SensorDrift> sample_sensor_rates(const DriftModel& model, int n) {
    std::vector<SensorDrift> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        RngStream rng(derive_stream(model.seed, "sensor-rate", static_cast<std::uint64_t>(i)));
        SensorDrift d;
        d.rate_deg_min =
            std::max(0.0, rng.next_normal(model.mean_rate_deg_min, model.rate_spread_deg_min));
        d.axis = rng.next_unit_vector();
        out.push_back(d);
    }
    return out;
}

Quat apply_drift(Quat q, double rate_deg_min, Vec3 axis, double elapsed_s,
                 double noise_std_deg, RngStream& rng, bool random_walk) {
    double minutes = elapsed_s / 60.0;
    double drift_deg = random_walk ? rng.next_normal(0.0, rate_deg_min * std::sqrt(minutes))
                                   : rate_deg_min * minutes;
    if (noise_std_deg > 0.0) {
        drift_deg += rng.next_normal(0.0, noise_std_deg);
    }
    Quat out = q;
    if (drift_deg != 0.0) {
        out = quat_mul(out, quat_about(axis, deg2rad(drift_deg)));
    }
    if (noise_std_deg > 0.0) {
        Vec3 noise_axis = rng.next_unit_vector();
        double noise_deg = std::fabs(rng.next_normal(0.0, noise_std_deg));
        out = quat_mul(out, quat_about(noise_axis, deg2rad(noise_deg)));
    }
    return out;
}

}  // namespace vinesense
