// Acceptance gate: one line per criterion, exit code = number of failures.
// Every threshold is written out literally at its check site.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "vinesense/calibration.hpp"
#include "vinesense/errors.hpp"
#include "vinesense/experiments.hpp"
#include "vinesense/geometry.hpp"
#include "vinesense/io/commands.hpp"
#include "vinesense/io/config.hpp"
#include "vinesense/io/csv.hpp"
#include "vinesense/reconstruction.hpp"
#include "vinesense/rng.hpp"
#include "vinesense/simulation.hpp"
#include "vinesense/stats.hpp"

using namespace vinesense;
namespace fs = std::filesystem;

namespace {

struct CheckFail : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& detail) {
    if (!ok) throw CheckFail(detail);
}

std::string g(double v) {
    char b[48];
    std::snprintf(b, sizeof b, "%.6g", v);
    return b;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

DriftModel zero_model() {
    DriftModel m;
    m.mean_rate_deg_min = 0.0;
    m.rate_spread_deg_min = 0.0;
    m.noise_std_deg = 0.0;
    return m;
}

// ---- independent statistics oracle (no shared code with the library) ----

double t_density(double x, int dof) {
    double v = static_cast<double>(dof);
    double log_c = std::lgamma((v + 1.0) / 2.0) - std::lgamma(v / 2.0) -
                   0.5 * std::log(v * 3.14159265358979323846);
    return std::exp(log_c - (v + 1.0) / 2.0 * std::log1p(x * x / v));
}

double oracle_two_sided_p(double t, int dof) {
    double a = -std::fabs(t), b = std::fabs(t);
    const int n = 40000;
    double h = (b - a) / n;
    double acc = t_density(a, dof) + t_density(b, dof);
    for (int i = 1; i < n; ++i) {
        acc += (i % 2 == 1 ? 4.0 : 2.0) * t_density(a + i * h, dof);
    }
    return std::max(0.0, 1.0 - acc * h / 3.0);
}

struct OracleFit {
    double slope = 0.0;
    double p = 1.0;
};

OracleFit oracle_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
    long double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = xs.size();
    for (std::size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += static_cast<long double>(xs[i]) * xs[i];
        sxy += static_cast<long double>(xs[i]) * ys[i];
    }
    long double nn = static_cast<long double>(n);
    long double det = nn * sxx - sx * sx;
    long double slope = (nn * sxy - sx * sy) / det;
    long double intercept = (sxx * sy - sx * sxy) / det;
    long double ssr = 0, sxx_c = 0;
    long double xbar = sx / nn;
    for (std::size_t i = 0; i < n; ++i) {
        long double r = ys[i] - (slope * xs[i] + intercept);
        ssr += r * r;
        sxx_c += (xs[i] - xbar) * (xs[i] - xbar);
    }
    OracleFit out;
    out.slope = static_cast<double>(slope);
    if (ssr <= 0) {
        out.p = 0.0;
        return out;
    }
    long double se = std::sqrt(ssr / static_cast<long double>(n - 2) / sxx_c);
    double t = static_cast<double>(slope / se);
    out.p = oracle_two_sided_p(t, static_cast<int>(n) - 2);
    return out;
}

// ---- criteria ----

std::string c1_round_trip() {
    auto t0 = std::chrono::steady_clock::now();
    RobotGeometry geom;
    double limit = geom.spacing_s_cm / geom.diameter_d_cm;
    double worst = 0.0;
    for (std::uint64_t trial = 0; trial < 1000; ++trial) {
        RngStream rng(derive_stream(99, "roundtrip", trial));
        int n = 1 + static_cast<int>(rng.next_u64() % 17);
        std::vector<HingeBend> bends;
        bends.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            bends.push_back(HingeBend{rng.next_unit() * limit, rng.next_unit_vector()});
        }
        GroundTruthShape shape = make_hinge_chain_shape(bends, geom);
        std::vector<ImuSample> ideal = sample_ideal_imu_frames(shape, geom);
        TrialConfig tc;
        tc.geometry = geom;
        tc.drift = zero_model();
        tc.shape = shape;
        tc.trial_seed = trial;
        CorruptedTrial corrupted = corrupt_samples(ideal, tc);
        OffsetTable table = compute_offsets(corrupted.snapshot);
        CenterlinePolyline poly =
            reconstruct(corrected_relative_rotations(corrupted.measured, table), geom, Pose{});
        double last_material =
            static_cast<double>(ideal.size() - 1) * geom.spacing_s_cm;
        Vec3 truth = shape.at(shape.centerline_at_material(last_material)).position;
        worst = std::max(worst, tip_error_percent(poly.tip.position, truth,
                                                  shape.material_length_cm));
    }
    double secs = seconds_since(t0);
    require(worst < 1e-6, "worst tip error " + g(worst) + "% of length, limit 1e-6%");
    require(secs < 10.0, "runtime " + g(secs) + " s, limit 10 s");
    return "worst " + g(worst) + "% of length over 1000 shapes in " + g(secs) + " s";
}

std::string c2_segment_values() {
    RobotGeometry geom;
    SegmentShape seg = segment_from_rotation(quat_about(Vec3{0, 0, 1}, deg2rad(30.0)), geom, true);
    require(std::fabs(seg.L_arc_outer - 6.754424205218055) <= 1e-9,
            "outer arc " + g(seg.L_arc_outer));
    require(std::fabs(seg.L_arc - 3.3772121026090276) <= 1e-9, "centerline arc " + g(seg.L_arc));
    require(std::fabs(seg.L_straight - 1.7227878973909726) <= 1e-9,
            "straight " + g(seg.L_straight));

    SegmentShape zero = segment_from_rotation(quat_identity(), geom, true);
    require(zero.theta == 0.0 && std::fabs(zero.L_straight - 5.1) <= 1e-9 && zero.L_arc == 0.0,
            "zero-angle case: straight " + g(zero.L_straight));

    double limit = geom.spacing_s_cm / geom.diameter_d_cm;
    SegmentShape edge = segment_from_rotation(quat_about(Vec3{0, 0, 1}, limit), geom, true);
    require(!edge.clamped && std::fabs(edge.L_straight) <= 1e-9 &&
                std::fabs(edge.L_arc_outer - geom.spacing_s_cm) <= 1e-9,
            "boundary case: straight " + g(edge.L_straight));
    bool threw = false;
    try {
        segment_from_rotation(quat_about(Vec3{0, 0, 1}, limit + 1e-4), geom, true);
    } catch (const BendExceedsSegment&) {
        threw = true;
    }
    SegmentShape lenient =
        segment_from_rotation(quat_about(Vec3{0, 0, 1}, limit + 1e-4), geom, false);
    require(threw && lenient.clamped && std::fabs(lenient.theta - limit) <= 1e-12,
            "over-limit handling");
    return "30 deg -> " + g(seg.L_arc_outer) + " / " + g(seg.L_arc) + " / " + g(seg.L_straight) +
           " cm, boundaries exact";
}

std::string c3_drift_fit() {
    DriftModel clean;
    clean.mean_rate_deg_min = 1.33;
    clean.rate_spread_deg_min = 0.0;
    clean.noise_std_deg = 0.0;
    clean.seed = 7;
    SweepResult exact = run_drift_experiment(15, 600.0, clean, 30.0);
    require(std::fabs(exact.regression.slope - 1.33) <= 1e-6,
            "clean slope " + g(exact.regression.slope));
    require(exact.regression.r_squared >= 1.0 - 1e-9,
            "clean R^2 " + g(exact.regression.r_squared));

    double slope_sum = 0.0, r2_sum = 0.0;
    for (std::uint64_t i = 1; i <= 100; ++i) {
        DriftModel noisy;
        noisy.mean_rate_deg_min = 1.33;
        noisy.rate_spread_deg_min = 1.0;
        noisy.noise_std_deg = 0.5;
        noisy.seed = derive_stream(i, "drift-model", 0);
        SweepResult r = run_drift_experiment(15, 600.0, noisy, 30.0);
        slope_sum += r.regression.slope;
        r2_sum += r.regression.r_squared;
    }
    double mean_slope = slope_sum / 100.0, mean_r2 = r2_sum / 100.0;
    require(std::fabs(mean_slope - 1.33) <= 0.1 * 1.33,
            "pooled slope mean " + g(mean_slope) + ", want within 10% of 1.33");
    require(mean_r2 < 0.9, "pooled R^2 mean " + g(mean_r2) + ", want < 0.9");
    return "clean slope " + g(exact.regression.slope) + " R^2 " + g(exact.regression.r_squared) +
           "; noisy mean slope " + g(mean_slope) + " R^2 " + g(mean_r2) + " over 100 seeds";
}

std::string c4_offset_age() {
    RobotGeometry geom;
    DriftModel model;
    model.mean_rate_deg_min = 1.33;
    model.rate_spread_deg_min = 0.0;
    model.noise_std_deg = 0.0;
    model.seed = 3;
    GroundTruthShape shape = make_constant_curvature_shape(0.0, 173.4);
    std::vector<ImuSample> ideal = sample_ideal_imu_frames(shape, geom);
    TrialConfig tc;
    tc.geometry = geom;
    tc.drift = model;
    tc.offset_age_s = 90.0;
    tc.shape = shape;
    CorruptedTrial trial = corrupt_samples(ideal, tc);
    double worst_dev = 0.0;
    for (std::size_t i = 0; i < ideal.size(); ++i) {
        double err_deg =
            rad2deg(angle_between(trial.measured[i].orientation, ideal[i].orientation));
        worst_dev = std::max(worst_dev, std::fabs(err_deg - 1.995));
    }
    require(worst_dev <= 1e-3,
            "per-sensor error deviates from 1.995 deg by " + g(worst_dev) + " deg");
    return "90 s at 1.33 deg/min -> 1.995 deg per sensor (worst deviation " + g(worst_dev) +
           " deg)";
}

std::string c5_convergence() {
    std::vector<ConvergencePoint> pts =
        run_convergence_study(0.02, 173.4, {20.4, 10.2, 5.1, 2.55}, 12.9);
    require(pts.size() == 4, "expected 4 spacings");
    std::string errs, ratios;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        errs += (i ? "/" : "") + g(pts[i].tip_error_pct);
        if (i == 0) continue;
        require(pts[i].tip_error_pct < pts[i - 1].tip_error_pct,
                "error did not decrease at spacing " + g(pts[i].spacing_cm));
        double ratio = pts[i - 1].tip_error_pct / pts[i].tip_error_pct;
        ratios += (i > 1 ? "/" : "") + g(ratio);
        require(ratio >= 1.8, "halving ratio " + g(ratio) + " at spacing " + g(pts[i].spacing_cm) +
                                  ", want >= 1.8");
    }
    return "errors " + errs + "% with halving ratios " + ratios;
}

std::string c6_experiment_bands() {
    auto t0 = std::chrono::steady_clock::now();
    io::RunConfig cfg = io::load_config(VINESENSE_DEFAULT_CONFIG);
    SweepSetup setup = io::to_sweep_setup(cfg);

    SweepResult passive = run_passive_sweep(cfg.passive, setup);
    require(passive.mean_error_pct >= 5.0 && passive.mean_error_pct <= 20.0,
            "passive mean " + g(passive.mean_error_pct) + "%, want in [5, 20]");

    SweepResult active = run_active_sweep(cfg.active, setup);
    require(active.mean_error_pct > passive.mean_error_pct,
            "active mean " + g(active.mean_error_pct) + "% not above passive " +
                g(passive.mean_error_pct) + "%");

    std::vector<double> xs, ys;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        io::RunConfig c = cfg;
        c.master_seed = seed;
        SweepResult r = run_length_sweep(c.length, io::to_sweep_setup(c));
        for (const ExperimentRecord& rec : r.records) {
            xs.push_back(rec.independent_var);
            ys.push_back(rec.tip_error_pct);
        }
    }
    RegressionSummary pooled = ols_fit(xs, ys);
    require(pooled.slope > 0.0, "pooled length slope " + g(pooled.slope) + ", want > 0");

    double secs = seconds_since(t0);
    require(secs < 120.0, "runtime " + g(secs) + " s, limit 120 s");
    return "passive " + g(passive.mean_error_pct) + "%, active " + g(active.mean_error_pct) +
           "%, length slope " + g(pooled.slope) + " %/cm pooled over 100 seeds, " + g(secs) + " s";
}

std::string c7_spacing() {
    io::RunConfig cfg = io::load_config(VINESENSE_DEFAULT_CONFIG);
    SweepSetup setup = io::to_sweep_setup(cfg);
    SpacingParams params = cfg.spacing;
    params.base_trials = 100;
    std::vector<TrialLog> trials = make_spacing_base_trials(params, setup);
    SpacingResult r = run_spacing_sweep(trials, params.multiples);
    double densest = *std::min_element(r.spacings_cm.begin(), r.spacings_cm.end());
    int coarser = 0;
    for (double a : r.argmin_spacing_cm) {
        if (a > densest + 1e-9) ++coarser;
    }
    double frac = static_cast<double>(coarser) / static_cast<double>(r.argmin_spacing_cm.size());
    require(frac >= 0.5, "only " + g(100.0 * frac) + "% of trials prefer a coarser spacing");
    return g(100.0 * frac) + "% of 100 trials have arg-min spacing above the densest " +
           g(densest) + " cm";
}

std::string c8_stats_oracle() {
    double worst_slope = 0.0, worst_p = 0.0;
    for (std::uint64_t ds = 0; ds < 50; ++ds) {
        RngStream rng(derive_stream(7, "stats", ds));
        std::size_t n = 5 + rng.next_u64() % 60;
        double a = rng.next_normal(0.0, 2.0);
        double b = rng.next_normal(0.0, 8.0);
        double sigma = 0.2 + rng.next_unit() * 4.0;
        std::vector<double> xs, ys;
        for (std::size_t i = 0; i < n; ++i) {
            double x = rng.next_unit() * 50.0;
            xs.push_back(x);
            ys.push_back(a * x + b + rng.next_normal(0.0, sigma));
        }
        RegressionSummary fit = ols_fit(xs, ys);
        OracleFit want = oracle_fit(xs, ys);
        worst_slope = std::max(worst_slope, std::fabs(fit.slope - want.slope));
        worst_p = std::max(worst_p, std::fabs(fit.p_value - want.p));
    }
    require(worst_slope <= 1e-9, "slope deviates from the oracle by " + g(worst_slope));
    require(worst_p <= 1e-6, "p-value deviates from the oracle by " + g(worst_p));

    std::vector<double> lin_x{1, 2, 3, 4, 5}, lin_y{1, 3, 5, 7, 9};
    RegressionSummary perfect = ols_fit(lin_x, lin_y);
    require(perfect.p_value == 0.0 && std::fabs(perfect.r_squared - 1.0) <= 1e-12,
            "perfect line: p " + g(perfect.p_value) + " R^2 " + g(perfect.r_squared));
    std::vector<double> const_y{4, 4, 4, 4, 4};
    RegressionSummary flat = ols_fit(lin_x, const_y);
    require(flat.slope == 0.0 && flat.r_squared == 0.0 && flat.p_value == 1.0,
            "constant y: slope " + g(flat.slope));
    return "50 datasets: slope within " + g(worst_slope) + ", p within " + g(worst_p) +
           "; degenerate cases exact";
}

std::string c9_determinism() {
    fs::path base = VINESENSE_ACCEPTANCE_OUT;
    fs::remove_all(base);
    fs::create_directories(base);
    io::CommandOptions opts;
    opts.no_timestamp = true;
    const char* kinds[] = {"drift", "passive", "active", "length", "spacing"};
    const char* suffixes[] = {"_records.csv", "_summary.json", ".svg"};
    for (const char* kind : kinds) {
        fs::path dir_a = base / (std::string(kind) + "_a");
        fs::path dir_b = base / (std::string(kind) + "_b");
        std::ostringstream out, err;
        int rc_a = io::cmd_sweep(kind, VINESENSE_DEFAULT_CONFIG, dir_a.string(), opts, out, err);
        int rc_b = io::cmd_sweep(kind, VINESENSE_DEFAULT_CONFIG, dir_b.string(), opts, out, err);
        require(rc_a == 0 && rc_b == 0,
                std::string(kind) + " sweep failed: " + err.str());
        for (const char* suffix : suffixes) {
            std::string name = std::string(kind) + suffix;
            std::string a = io::read_file((dir_a / name).string());
            std::string b = io::read_file((dir_b / name).string());
            require(!a.empty() && a == b, name + " differs between reruns");
        }
    }
    return "5 sweep kinds x {records.csv, summary.json, svg} byte-identical on rerun";
}

}  // namespace

int main() {
    struct Criterion {
        int index;
        const char* name;
        std::function<std::string()> body;
    };
    const Criterion criteria[] = {
        {1, "zero-corruption round trip on representable shapes", c1_round_trip},
        {2, "segment decomposition hand values and boundaries", c2_segment_values},
        {3, "drift sweep slope recovery, clean and noisy", c3_drift_fit},
        {4, "orientation error after a 90 s offset age", c4_offset_age},
        {5, "discretization error halves at least 1.8x per spacing halving", c5_convergence},
        {6, "default-config error bands: passive, active, length trend", c6_experiment_bands},
        {7, "densest spacing is not the most accurate", c7_spacing},
        {8, "regression statistics against a brute-force oracle", c8_stats_oracle},
        {9, "byte-identical sweep reruns without timestamps", c9_determinism},
    };
    int failures = 0;
    for (const Criterion& c : criteria) {
        try {
            std::string detail = c.body();
            std::printf("[PASS] %d: %s (%s)\n", c.index, c.name, detail.c_str());
        } catch (const std::exception& e) {
            std::printf("[FAIL] %d: %s (%s)\n", c.index, c.name, e.what());
            ++failures;
        }
        std::fflush(stdout);
    }
    std::printf("%d/9 criteria passed\n", 9 - failures);
    return failures;
}
