#include <benchmark/benchmark.h>

#include <vector>

#include "vinesense/calibration.hpp"
#include "vinesense/experiments.hpp"
#include "vinesense/geometry.hpp"
#include "vinesense/reconstruction.hpp"
#include "vinesense/rng.hpp"
#include "vinesense/simulation.hpp"
#include "vinesense/stats.hpp"

using namespace vinesense;

namespace {

std::vector<Quat> random_rotations(int n, std::uint64_t seed) {
    RngStream rng(seed);
    RobotGeometry geom;
    double limit = geom.spacing_s_cm / geom.diameter_d_cm;
    std::vector<Quat> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        out.push_back(quat_about(rng.next_unit_vector(), rng.next_unit() * limit));
    }
    return out;
}

void BM_quat_chain(benchmark::State& state) {
    std::vector<Quat> rots = random_rotations(static_cast<int>(state.range(0)), 5);
    for (auto _ : state) {
        Quat q = quat_identity();
        for (const Quat& r : rots) q = quat_mul(q, r);
        benchmark::DoNotOptimize(q);
    }
}
BENCHMARK(BM_quat_chain)->Arg(17)->Arg(170);

void BM_segment_from_rotation(benchmark::State& state) {
    RobotGeometry geom;
    Quat r = quat_about(Vec3{0, 0, 1}, 0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(segment_from_rotation(r, geom, false));
    }
}
BENCHMARK(BM_segment_from_rotation);

void BM_reconstruct_chain(benchmark::State& state) {
    RobotGeometry geom;
    std::vector<Quat> rots = random_rotations(17, 6);
    for (auto _ : state) {
        benchmark::DoNotOptimize(reconstruct(rots, geom, Pose{}, static_cast<int>(state.range(0))));
    }
}
BENCHMARK(BM_reconstruct_chain)->Arg(0)->Arg(64);

void BM_full_passive_trial(benchmark::State& state) {
    RobotGeometry geom;
    GroundTruthShape shape = make_passive_bend_shape(80.0, 45.0, 6.45, 173.4, geom);
    std::vector<ImuSample> ideal = sample_ideal_imu_frames(shape, geom);
    TrialConfig cfg;
    cfg.shape = shape;
    cfg.offset_age_s = 84.0;
    for (auto _ : state) {
        CorruptedTrial trial = corrupt_samples(ideal, cfg);
        OffsetTable table = compute_offsets(trial.snapshot);
        CenterlinePolyline poly =
            reconstruct(corrected_relative_rotations(trial.measured, table), geom, Pose{});
        benchmark::DoNotOptimize(poly);
        cfg.trial_seed++;
    }
}
BENCHMARK(BM_full_passive_trial);

void BM_ols_fit(benchmark::State& state) {
    RngStream rng(8);
    std::vector<double> xs, ys;
    for (int i = 0; i < static_cast<int>(state.range(0)); ++i) {
        xs.push_back(rng.next_unit() * 100.0);
        ys.push_back(2.0 * xs.back() + rng.next_normal(0.0, 3.0));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(ols_fit(xs, ys));
    }
}
BENCHMARK(BM_ols_fit)->Arg(300);

}  // namespace

BENCHMARK_MAIN();
