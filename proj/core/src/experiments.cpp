#include "vinesense/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "vinesense/errors.hpp"
#include "vinesense/rng.hpp"

namespace vinesense {

namespace {

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

double draw_age(const SweepSetup& setup, const char* tag, std::uint64_t trial_index,
                double mean_s, double jitter_s) {
    RngStream rng(derive_stream(setup.master_seed, tag, trial_index));
    return std::max(0.0, rng.next_normal(mean_s, jitter_s));
}

struct TrialOutcome {
    double err_pct = 0.0;
    double age_s = 0.0;
};

// Full pipeline for one trial: sample ideal frames, corrupt, offset, correct,
// reconstruct, compare at the last placed IMU's true station.
TrialOutcome run_one_trial(const GroundTruthShape& shape, const SweepSetup& setup, double age_s,
                           std::uint64_t trial_seed) {
    std::vector<ImuSample> ideal = sample_ideal_imu_frames(shape, setup.geometry);
    TrialConfig tc{setup.geometry, setup.drift, age_s, shape, trial_seed};
    CorruptedTrial corrupted = corrupt_samples(ideal, tc);
    OffsetTable offsets = compute_offsets(corrupted.snapshot);
    std::vector<Quat> rotations = corrected_relative_rotations(corrupted.measured, offsets);
    Pose base = shape.at(0.0);
    CenterlinePolyline poly =
        reconstruct(rotations, setup.geometry, base, setup.arc_samples, false);
    double last_material =
        static_cast<double>(ideal.size() - 1) * setup.geometry.spacing_s_cm;
    Vec3 true_tip = shape.at(shape.centerline_at_material(last_material)).position;
    TrialOutcome out;
    out.age_s = age_s;
    out.err_pct = tip_error_percent(poly.tip.position, true_tip, shape.material_length_cm);
    return out;
}

RegressionSummary fit_records(const std::vector<ExperimentRecord>& records) {
    std::vector<double> xs;
    std::vector<double> ys;
    xs.reserve(records.size());
    ys.reserve(records.size());
    for (const ExperimentRecord& r : records) {
        xs.push_back(r.independent_var);
        ys.push_back(r.tip_error_pct);
    }
    return ols_fit(xs, ys);
}

double mean_error(const std::vector<ExperimentRecord>& records) {
    if (records.empty()) return 0.0;
    double sum = 0.0;
    for (const ExperimentRecord& r : records) sum += r.tip_error_pct;
    return sum / static_cast<double>(records.size());
}

}  // namespace

double tip_error_percent(Vec3 estimated_tip, Vec3 true_tip, double robot_length_cm) {
    if (robot_length_cm <= 0.0) {
        throw InvalidShape("robot length must be positive to express error as a percentage");
    }
    return 100.0 * norm(estimated_tip - true_tip) / robot_length_cm;
}

SweepResult run_drift_experiment(int n_sensors, double duration_s, const DriftModel& model,
                                 double sample_every_s) {
    if (n_sensors < 1 || duration_s <= 0.0 || sample_every_s <= 0.0) {
        throw InvalidShape("drift experiment needs n_sensors >= 1 and positive durations");
    }
    std::vector<SensorDrift> sensors = sample_sensor_rates(model, n_sensors);
    Quat reference = quat_identity();
    SweepResult out;
    for (int i = 0; i < n_sensors; ++i) {
        RngStream rng(derive_stream(model.seed, "drift-trace", static_cast<std::uint64_t>(i)));
        for (int k = 1; k * sample_every_s <= duration_s + 1e-9; ++k) {
            double t_s = k * sample_every_s;
            Quat drifted = apply_drift(reference, sensors[i].rate_deg_min, sensors[i].axis, t_s,
                                       model.noise_std_deg, rng, model.random_walk);
            ExperimentRecord rec;
            rec.independent_var = t_s / 60.0;
            rec.tip_error_pct = rad2deg(angle_between(reference, drifted));
            rec.trial_seed = static_cast<std::uint64_t>(i);
            rec.notes = "sensor=" + std::to_string(i) + ";t_s=" + fmt6(t_s);
            out.records.push_back(rec);
        }
    }
    out.regression = fit_records(out.records);
    out.mean_error_pct = mean_error(out.records);
    return out;
}

SweepResult run_passive_sweep(const PassiveParams& params, const SweepSetup& setup) {
    SweepResult out;
    std::uint64_t trial_index = 0;
    for (double angle : params.angles_deg) {
        GroundTruthShape shape =
            make_passive_bend_shape(params.pre_length_cm, angle, params.bend_radius_cm,
                                    params.total_length_cm, setup.geometry);
        for (int t = 0; t < params.trials_per_angle; ++t, ++trial_index) {
            std::uint64_t trial_seed = derive_stream(setup.master_seed, "passive-trial", trial_index);
            double age = draw_age(setup, "passive-age", trial_index, params.offset_age_mean_s,
                                  params.offset_age_jitter_s);
            TrialOutcome to = run_one_trial(shape, setup, age, trial_seed);
            ExperimentRecord rec;
            rec.independent_var = angle;
            rec.tip_error_pct = to.err_pct;
            rec.trial_seed = trial_seed;
            rec.notes = "age_s=" + fmt6(to.age_s);
            out.records.push_back(rec);
        }
    }
    out.regression = fit_records(out.records);
    out.mean_error_pct = mean_error(out.records);
    return out;
}

SweepResult run_active_sweep(const ActiveParams& params, const SweepSetup& setup) {
    SweepResult out;
    std::uint64_t trial_index = 0;
    for (double kappa : params.kappas_per_cm) {
        GroundTruthShape shape =
            params.arc_ground_truth
                ? make_constant_curvature_shape(kappa, params.total_length_cm)
                : make_hinge_arc_shape(kappa, params.total_length_cm, setup.geometry,
                                       params.radius_scale);
        for (int t = 0; t < params.trials_per_kappa; ++t, ++trial_index) {
            std::uint64_t trial_seed = derive_stream(setup.master_seed, "active-trial", trial_index);
            double age = draw_age(setup, "active-age", trial_index, params.offset_age_mean_s,
                                  params.offset_age_jitter_s);
            TrialOutcome to = run_one_trial(shape, setup, age, trial_seed);
            ExperimentRecord rec;
            rec.independent_var = kappa;
            rec.tip_error_pct = to.err_pct;
            rec.trial_seed = trial_seed;
            rec.notes = "age_s=" + fmt6(to.age_s);
            out.records.push_back(rec);
        }
    }
    out.regression = fit_records(out.records);
    out.mean_error_pct = mean_error(out.records);
    return out;
}

SweepResult run_length_sweep(const LengthParams& params, const SweepSetup& setup) {
    double base_length = 0.0;
    for (double l : params.lengths_cm) base_length = std::max(base_length, l);
    GroundTruthShape base_shape =
        make_hinge_arc_shape(params.kappa_per_cm, base_length, setup.geometry, 1.0);
    SweepResult out;
    std::uint64_t trial_index = 0;
    for (double length : params.lengths_cm) {
        GroundTruthShape shape = make_grown_shape(base_shape, length);
        for (int t = 0; t < params.trials_per_length; ++t, ++trial_index) {
            std::uint64_t trial_seed = derive_stream(setup.master_seed, "length-trial", trial_index);
            double age = draw_age(setup, "length-age", trial_index, params.offset_age_mean_s,
                                  params.offset_age_jitter_s);
            TrialOutcome to = run_one_trial(shape, setup, age, trial_seed);
            ExperimentRecord rec;
            rec.independent_var = length;
            rec.tip_error_pct = to.err_pct;
            rec.trial_seed = trial_seed;
            rec.notes = "age_s=" + fmt6(to.age_s) + ";imus=" +
                        std::to_string(static_cast<int>(std::floor(
                            shape.material_length_cm / setup.geometry.spacing_s_cm + 1e-9)) + 1);
            out.records.push_back(rec);
        }
    }
    out.regression = fit_records(out.records);
    out.mean_error_pct = mean_error(out.records);
    return out;
}

std::vector<TrialLog> make_spacing_base_trials(const SpacingParams& params,
                                               const SweepSetup& setup) {
    std::vector<TrialLog> out;
    out.reserve(static_cast<std::size_t>(params.base_trials));
    GroundTruthShape shape = make_passive_bend_shape(
        params.pre_length_cm, params.bend_angle_deg, setup.geometry.diameter_d_cm / 2.0,
        params.total_length_cm, setup.geometry);
    for (int t = 0; t < params.base_trials; ++t) {
        std::uint64_t trial_index = static_cast<std::uint64_t>(t);
        std::uint64_t trial_seed = derive_stream(setup.master_seed, "spacing-trial", trial_index);
        double age = draw_age(setup, "spacing-age", trial_index, params.offset_age_mean_s,
                              params.offset_age_jitter_s);
        std::vector<ImuSample> ideal = sample_ideal_imu_frames(shape, setup.geometry);
        TrialConfig tc{setup.geometry, setup.drift, age, shape, trial_seed};
        CorruptedTrial corrupted = corrupt_samples(ideal, tc);
        TrialLog log;
        log.shape = shape;
        log.geometry = setup.geometry;
        log.snapshot = std::move(corrupted.snapshot);
        log.measured = std::move(corrupted.measured);
        log.trial_seed = trial_seed;
        log.label = "bend" + fmt6(params.bend_angle_deg) + "-t" + std::to_string(t);
        out.push_back(std::move(log));
    }
    return out;
}

SpacingResult run_spacing_sweep(const std::vector<TrialLog>& base_trials,
                                const std::vector<int>& spacing_multiples) {
    SpacingResult out;
    if (base_trials.empty() || spacing_multiples.empty()) {
        return out;
    }
    for (int k : spacing_multiples) {
        if (k < 1) {
            throw ConfigError("spacing multiple must be >= 1, got " + std::to_string(k));
        }
    }
    std::vector<double> err_sum(spacing_multiples.size(), 0.0);
    for (const TrialLog& trial : base_trials) {
        int n = static_cast<int>(trial.measured.size());
        double best_err = 0.0;
        double best_spacing = -1.0;
        for (std::size_t ki = 0; ki < spacing_multiples.size(); ++ki) {
            int k = spacing_multiples[ki];
            int m = (n - 1) / k + 1;
            if (m < 2) {
                throw ConfigError("spacing multiple " + std::to_string(k) + " leaves " +
                                  std::to_string(m) + " of " + std::to_string(n) +
                                  " IMUs; need at least 2");
            }
            std::vector<ImuSample> snap_d;
            std::vector<ImuSample> meas_d;
            snap_d.reserve(static_cast<std::size_t>(m));
            meas_d.reserve(static_cast<std::size_t>(m));
            for (int j = 0; j < m; ++j) {
                ImuSample s = trial.snapshot[static_cast<std::size_t>(j) * k];
                ImuSample q = trial.measured[static_cast<std::size_t>(j) * k];
                s.imu_index = j;
                q.imu_index = j;
                snap_d.push_back(s);
                meas_d.push_back(q);
            }
            double spacing = k * trial.geometry.spacing_s_cm;
            RobotGeometry geom_k{spacing, trial.geometry.diameter_d_cm, m};
            OffsetTable offsets = compute_offsets(snap_d);
            std::vector<Quat> rotations = corrected_relative_rotations(meas_d, offsets);
            CenterlinePolyline poly = reconstruct(rotations, geom_k, trial.shape.at(0.0), 0, false);
            double last_material = static_cast<double>((m - 1) * k) * trial.geometry.spacing_s_cm;
            Vec3 true_tip =
                trial.shape.at(trial.shape.centerline_at_material(last_material)).position;
            double err =
                tip_error_percent(poly.tip.position, true_tip, trial.shape.material_length_cm);
            ExperimentRecord rec;
            rec.independent_var = spacing;
            rec.tip_error_pct = err;
            rec.trial_seed = trial.trial_seed;
            rec.notes = "trial=" + trial.label + ";k=" + std::to_string(k) +
                        ";station_cm=" + fmt6(last_material);
            out.records.push_back(rec);
            err_sum[ki] += err;
            if (best_spacing < 0.0 || err < best_err ||
                (err == best_err && spacing < best_spacing)) {
                best_err = err;
                best_spacing = spacing;
            }
        }
        out.argmin_spacing_cm.push_back(best_spacing);
    }
    for (std::size_t ki = 0; ki < spacing_multiples.size(); ++ki) {
        out.spacings_cm.push_back(spacing_multiples[ki] * base_trials.front().geometry.spacing_s_cm);
        out.mean_error_by_spacing_pct.push_back(err_sum[ki] /
                                                static_cast<double>(base_trials.size()));
    }
    return out;
}

std::vector<ConvergencePoint> run_convergence_study(double kappa_per_cm, double length_cm,
                                                    const std::vector<double>& spacings_cm,
                                                    double diameter_d_cm) {
    if (kappa_per_cm <= 0.0 || length_cm <= 0.0) {
        throw InvalidShape("convergence study needs kappa > 0 and length > 0");
    }
    GroundTruthShape shape = make_constant_curvature_shape(kappa_per_cm, length_cm);
    // Outer-wall stretch factor: sensors on an inextensible wall at +d/2 from
    // the centerline mark stations every s of wall, i.e. s/stretch of centerline.
    double stretch = 1.0 + kappa_per_cm * diameter_d_cm / 2.0;
    std::vector<ConvergencePoint> out;
    out.reserve(spacings_cm.size());
    for (double s : spacings_cm) {
        if (s <= 0.0) {
            throw InvalidShape("spacing must be positive");
        }
        double wall_total = length_cm * stretch;
        int last = static_cast<int>(std::floor(wall_total / s + 1e-9));
        if (last < 1) {
            throw InvalidShape("spacing " + std::to_string(s) + " leaves fewer than 2 stations");
        }
        std::vector<Quat> rotations;
        rotations.reserve(static_cast<std::size_t>(last));
        Quat prev = shape.at(0.0).orientation;
        for (int i = 1; i <= last; ++i) {
            Quat cur = shape.at(i * s / stretch).orientation;
            rotations.push_back(quat_mul(quat_inv(prev), cur));
            prev = cur;
        }
        RobotGeometry geom{s, diameter_d_cm, last + 1};
        CenterlinePolyline poly = reconstruct(rotations, geom, shape.at(0.0), 0, true);
        Vec3 true_tip = shape.at(last * s / stretch).position;
        out.push_back(ConvergencePoint{
            s, tip_error_percent(poly.tip.position, true_tip, length_cm)});
    }
    return out;
}

}  // namespace vinesense
