#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vinesense/calibration.hpp"
#include "vinesense/reconstruction.hpp"
#include "vinesense/simulation.hpp"
#include "vinesense/stats.hpp"

namespace vinesense {

struct ExperimentRecord {
    double independent_var = 0.0;  // degrees, 1/cm, or cm depending on the sweep
    double tip_error_pct = 0.0;    // % of robot length; orientation error in degrees
                                   // for drift-experiment records (same schema)
    std::uint64_t trial_seed = 0;
    std::string notes;  // "key=value;key=value", no commas
};

struct SweepResult {
    std::vector<ExperimentRecord> records;
    RegressionSummary regression;  // tip_error_pct regressed on independent_var
    double mean_error_pct = 0.0;
};

// 100 * |estimated - true| / robot_length.
double tip_error_percent(Vec3 estimated_tip, Vec3 true_tip, double robot_length_cm);

// Shared sweep context. drift.seed fixes the sensor population (rates and drift
// axes persist across trials); per-trial noise and offset ages derive from
// master_seed, so records are reproducible and order-independent.
struct SweepSetup {
    RobotGeometry geometry;
    DriftModel drift;
    std::uint64_t master_seed = 0;
    int arc_samples = 0;  // 0 = auto per segment
};

// Orientation error of n stationary sensors against their offset reference,
// sampled every sample_every_s for duration_s (the t = 0 reference itself is
// not a record). independent_var is minutes, tip_error_pct holds degrees; the
// regression slope is therefore deg/min.
SweepResult run_drift_experiment(int n_sensors, double duration_s, const DriftModel& model,
                                 double sample_every_s);

struct PassiveParams {
    std::vector<double> angles_deg{0, 15, 30, 45, 60, 75, 90};
    int trials_per_angle = 3;
    double pre_length_cm = 80.0;
    double bend_radius_cm = 6.45;  // d/2: zero-noise trials exactly representable
    double total_length_cm = 173.4;
    double offset_age_mean_s = 84.0;
    double offset_age_jitter_s = 5.0;
};
SweepResult run_passive_sweep(const PassiveParams& params, const SweepSetup& setup);

struct ActiveParams {
    std::vector<double> kappas_per_cm{0.0, 0.025, 0.05, 0.075, 0.1, 0.125, 0.15};
    int trials_per_kappa = 3;
    // false: hinge-chain ground truth bending at radius_scale * d/2 per span
    // (radius_scale 1 is exactly representable; 2 probes calibrated radius
    // mismatch). true: literal constant-curvature curve; its zero-noise error
    // is pure model-discretization mismatch.
    bool arc_ground_truth = false;
    double radius_scale = 2.0;
    double total_length_cm = 173.4;
    double offset_age_mean_s = 87.0;
    double offset_age_jitter_s = 5.0;
};
SweepResult run_active_sweep(const ActiveParams& params, const SweepSetup& setup);

struct LengthParams {
    std::vector<double> lengths_cm{30, 45, 60, 75, 90, 105, 120, 135, 150, 165, 175};
    int trials_per_length = 2;
    double kappa_per_cm = 0.005;  // steering curvature of the fully grown base shape
    double offset_age_mean_s = 41.0;
    double offset_age_jitter_s = 5.0;
};
SweepResult run_length_sweep(const LengthParams& params, const SweepSetup& setup);

// One recorded (or synthesized) trial, sufficient to re-run reconstruction
// under sensor decimation.
struct TrialLog {
    GroundTruthShape shape;
    RobotGeometry geometry;
    std::vector<ImuSample> snapshot;
    std::vector<ImuSample> measured;
    std::uint64_t trial_seed = 0;
    std::string label;
};

struct SpacingParams {
    std::vector<int> multiples{1, 2, 4, 8, 16};
    int base_trials = 4;
    double bend_angle_deg = 45.0;
    double pre_length_cm = 80.0;
    double total_length_cm = 173.4;
    double offset_age_mean_s = 57.0;
    double offset_age_jitter_s = 5.0;
};

// Synthetic single-bend trials (hinge-snapped passive bends) for the spacing
// reanalysis when no recorded logs are supplied.
std::vector<TrialLog> make_spacing_base_trials(const SpacingParams& params,
                                               const SweepSetup& setup);

struct SpacingResult {
    std::vector<ExperimentRecord> records;  // one per (trial, multiple)
    std::vector<double> spacings_cm;
    std::vector<double> mean_error_by_spacing_pct;  // aligned with spacings_cm
    std::vector<double> argmin_spacing_cm;          // per trial; ties take the smallest
};

// Reconstructs each trial using only IMUs {0, k, 2k, ...} for each multiple k,
// with offsets recomputed from the decimated snapshot. The error is measured
// at the last surviving IMU's true station, as a percentage of the full robot
// length. k = 1 reproduces the undecimated pipeline bit for bit.
SpacingResult run_spacing_sweep(const std::vector<TrialLog>& base_trials,
                                const std::vector<int>& spacing_multiples);

struct ConvergencePoint {
    double spacing_cm = 0.0;
    double tip_error_pct = 0.0;
};

// Noiseless constant-curvature arc reconstructed at successively finer sensor
// spacings. Stations are the marks an inextensible outer wall carrying the
// sensors would leave: centerline spacing s / (1 + kappa * d/2), under which
// the hinge model's span length matches the true span exactly and the residual
// is pure geometric discretization, shrinking roughly as s^2.
std::vector<ConvergencePoint> run_convergence_study(double kappa_per_cm, double length_cm,
                                                    const std::vector<double>& spacings_cm,
                                                    double diameter_d_cm);

}  // namespace vinesense
