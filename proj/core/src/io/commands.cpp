#include "vinesense/io/commands.hpp"

#include <ctime>
#include <filesystem>
#include <map>
#include <ostream>

#include <json.hpp>

#include "vinesense/calibration.hpp"
#include "vinesense/errors.hpp"
#include "vinesense/experiments.hpp"
#include "vinesense/io/config.hpp"
#include "vinesense/io/csv.hpp"
#include "vinesense/io/svg.hpp"
#include "vinesense/stats.hpp"

namespace vinesense::io {

namespace {

std::string iso8601_utc_now() {
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string stamp_comment(const CommandOptions& opts) {
    if (opts.no_timestamp) return {};
    return "# generated " + iso8601_utc_now() + "\n";
}

RunConfig load_or_default(const std::string& config_path, const CommandOptions& opts) {
    RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
    if (opts.has_seed) cfg.master_seed = opts.seed;
    if (opts.arc_samples > 0) cfg.arc_samples = opts.arc_samples;
    return cfg;
}

// First non-comment, non-blank line.
std::string sniff_header(const std::string& text) {
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        std::string line = text.substr(pos, eol - pos);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty() && line[0] != '#') return line;
        pos = eol + 1;
    }
    return {};
}

PlotData scatter_with_fit(const std::vector<ExperimentRecord>& records,
                          const std::string& series_name) {
    PlotData data;
    PlotSeries series;
    series.name = series_name;
    for (const ExperimentRecord& rec : records) {
        series.points.emplace_back(rec.independent_var, rec.tip_error_pct);
    }
    data.series.push_back(std::move(series));
    if (records.size() >= 2) {
        try {
            std::vector<double> xs, ys;
            for (const ExperimentRecord& rec : records) {
                xs.push_back(rec.independent_var);
                ys.push_back(rec.tip_error_pct);
            }
            RegressionSummary fit = ols_fit(xs, ys);
            data.has_fit = true;
            data.fit_slope = fit.slope;
            data.fit_intercept = fit.intercept;
        } catch (const DegenerateRegression&) {
            // single-x scatter; plot the points alone
        }
    }
    return data;
}

PlotData drift_traces(const std::vector<ExperimentRecord>& records) {
    // trial_seed carries the sensor index; file order is already time order.
    std::map<std::uint64_t, PlotSeries> by_sensor;
    for (const ExperimentRecord& rec : records) {
        PlotSeries& series = by_sensor[rec.trial_seed];
        if (series.name.empty()) series.name = "sensor " + std::to_string(rec.trial_seed);
        series.points.emplace_back(rec.independent_var, rec.tip_error_pct);
    }
    PlotData data;
    for (auto& [index, series] : by_sensor) data.series.push_back(std::move(series));
    return data;
}

PlotSeries centerline_series(const ParsedCenterline& parsed, const std::string& name) {
    PlotSeries series;
    series.name = name;
    for (const Vec3& p : parsed.points) series.points.emplace_back(p.x, p.y);
    return series;
}

nlohmann::json regression_json(const SweepResult& result) {
    nlohmann::json j;
    j["mean_error_pct"] = result.mean_error_pct;
    j["slope"] = result.regression.slope;
    j["intercept"] = result.regression.intercept;
    j["r_squared"] = result.regression.r_squared;
    j["p_value"] = result.regression.p_value;
    j["n"] = result.regression.n;
    return j;
}

int fail(std::ostream& err, const std::string& context, const std::string& what) {
    err << "error: " << (context.empty() ? "" : context + ": ") << what << "\n";
    return 1;
}

}  // namespace

int cmd_offsets(const std::string& log_csv, const std::string& out_csv,
                const CommandOptions& opts, std::ostream& out, std::ostream& err) {
    try {
        std::vector<ImuSample> latest = latest_samples(parse_imu_log_csv(read_file(log_csv)));
        OffsetTable table = compute_offsets(latest);
        write_file(out_csv, stamp_comment(opts) + offsets_csv(table));
        out << "wrote " << out_csv << " (" << table.offsets.size() << " pairs, captured at "
            << fmt_g12(table.captured_at_s) << " s)\n";
        return 0;
    } catch (const std::exception& e) {
        return fail(err, log_csv, e.what());
    }
}

int cmd_reconstruct(const std::string& log_csv, const std::string& offsets_csv_path,
                    const std::string& out_dir, const RobotGeometry& geometry,
                    const CommandOptions& opts, std::ostream& out, std::ostream& err) {
    std::vector<ImuSample> latest;
    OffsetTable table;
    try {
        latest = latest_samples(parse_imu_log_csv(read_file(log_csv)));
    } catch (const std::exception& e) {
        return fail(err, log_csv, e.what());
    }
    try {
        table = parse_offsets_csv(read_file(offsets_csv_path));
    } catch (const std::exception& e) {
        return fail(err, offsets_csv_path, e.what());
    }
    try {
        std::vector<Quat> corrected = corrected_relative_rotations(latest, table);
        CenterlinePolyline poly =
            reconstruct(corrected, geometry, Pose{}, opts.arc_samples, opts.strict);
        for (const ClampEvent& ev : poly.clamped_segments) {
            err << "warning: segment " << ev.segment_index << " bend "
                << fmt_g12(rad2deg(ev.theta_measured)) << " deg clamped to "
                << fmt_g12(rad2deg(ev.theta_limit)) << " deg\n";
        }

        std::filesystem::create_directories(out_dir);
        std::string csv_path = out_dir + "/centerline.csv";
        write_file(csv_path, stamp_comment(opts) + centerline_csv(poly));

        PlotSpec spec;
        spec.kind = PlotKind::CenterlineOverlay;
        spec.title = "Reconstructed centerline";
        spec.x_label = "x (cm)";
        spec.y_label = "y (cm)";
        PlotData data;
        ParsedCenterline parsed;
        parsed.points = poly.points;
        data.series.push_back(centerline_series(parsed, "reconstructed"));
        std::string svg_path = out_dir + "/centerline.svg";
        write_file(svg_path, render_svg(spec, data));

        out << "wrote " << csv_path << " and " << svg_path << " (" << poly.points.size()
            << " points, tip " << fmt_g12(poly.tip.position.x) << ","
            << fmt_g12(poly.tip.position.y) << "," << fmt_g12(poly.tip.position.z) << " cm)\n";
        return 0;
    } catch (const std::exception& e) {
        return fail(err, "", e.what());
    }
}

int cmd_sweep(const std::string& kind, const std::string& config_path,
              const std::string& out_dir, const CommandOptions& opts, std::ostream& out,
              std::ostream& err) {
    try {
        RunConfig cfg = load_or_default(config_path, opts);
        SweepSetup setup = to_sweep_setup(cfg);

        std::vector<ExperimentRecord> records;
        nlohmann::json summary;
        summary["kind"] = kind;
        summary["master_seed"] = cfg.master_seed;
        if (!opts.no_timestamp) summary["generated_at"] = iso8601_utc_now();

        PlotSpec spec;
        spec.kind = PlotKind::ErrorScatterWithFit;
        spec.y_label = "tip error (% of length)";
        PlotData plot;

        if (kind == "drift") {
            SweepResult result =
                run_drift_experiment(cfg.drift_experiment.n_sensors, cfg.drift_experiment.duration_s,
                                     seeded_drift_model(cfg), cfg.drift_experiment.sample_every_s);
            records = result.records;
            summary.update(regression_json(result));
            summary.erase("mean_error_pct");  // error column holds degrees here, not %
            summary["mean_drift_deg"] = result.mean_error_pct;
            spec.kind = PlotKind::DriftTraces;
            spec.title = "Stationary orientation drift";
            spec.x_label = "time (min)";
            spec.y_label = "drift (deg)";
            plot = drift_traces(records);
        } else if (kind == "passive") {
            SweepResult result = run_passive_sweep(cfg.passive, setup);
            records = result.records;
            summary.update(regression_json(result));
            spec.title = "Tip error vs bend angle";
            spec.x_label = "bend angle (deg)";
            plot = scatter_with_fit(records, "trials");
        } else if (kind == "active") {
            SweepResult result = run_active_sweep(cfg.active, setup);
            records = result.records;
            summary.update(regression_json(result));
            spec.title = "Tip error vs steering curvature";
            spec.x_label = "curvature (1/cm)";
            plot = scatter_with_fit(records, "trials");
        } else if (kind == "length") {
            SweepResult result = run_length_sweep(cfg.length, setup);
            records = result.records;
            summary.update(regression_json(result));
            spec.title = "Tip error vs grown length";
            spec.x_label = "length (cm)";
            plot = scatter_with_fit(records, "trials");
        } else if (kind == "spacing") {
            std::vector<TrialLog> trials = make_spacing_base_trials(cfg.spacing, setup);
            SpacingResult result = run_spacing_sweep(trials, cfg.spacing.multiples);
            records = result.records;
            summary["spacings_cm"] = result.spacings_cm;
            summary["mean_error_by_spacing_pct"] = result.mean_error_by_spacing_pct;
            summary["argmin_spacing_cm"] = result.argmin_spacing_cm;
            summary["n_trials"] = result.argmin_spacing_cm.size();
            spec.title = "Tip error vs sensor spacing";
            spec.x_label = "spacing (cm)";
            plot = scatter_with_fit(records, "trial x spacing");
            plot.has_fit = false;  // spacing response is non-monotonic; a line misleads
        } else {
            return fail(err, kind,
                        "unknown sweep kind (expected drift, passive, active, length or spacing)");
        }

        std::filesystem::create_directories(out_dir);
        std::string records_path = out_dir + "/" + kind + "_records.csv";
        write_file(records_path, stamp_comment(opts) + records_csv(records));
        std::string summary_path = out_dir + "/" + kind + "_summary.json";
        write_file(summary_path, summary.dump(2) + "\n");
        std::string svg_path = out_dir + "/" + kind + ".svg";
        write_file(svg_path, render_svg(spec, plot));

        out << "wrote " << records_path << " (" << records.size() << " records), " << summary_path
            << ", " << svg_path << "\n";
        return 0;
    } catch (const std::exception& e) {
        return fail(err, config_path, e.what());
    }
}

int cmd_plot(const std::vector<std::string>& inputs, const std::string& out_svg,
             const std::string& title, const CommandOptions& opts, std::ostream& out,
             std::ostream& err) {
    (void)opts;
    if (inputs.empty()) return fail(err, "", "no input files");
    try {
        std::string first = read_file(inputs[0]);
        std::string header = sniff_header(first);

        PlotSpec spec;
        PlotData data;
        if (header == "trial,independent_var,tip_error_pct,seed,notes") {
            if (inputs.size() != 1) {
                return fail(err, inputs[0], "a records scatter takes exactly one input file");
            }
            spec.kind = PlotKind::ErrorScatterWithFit;
            spec.title = title.empty() ? "Tip error" : title;
            spec.x_label = "independent variable";
            spec.y_label = "tip error (% of length)";
            data = scatter_with_fit(parse_records_csv(first), "records");
        } else if (header == "point_index,x_cm,y_cm,z_cm,is_imu") {
            if (inputs.size() > 2) {
                return fail(err, inputs[0], "a centerline overlay takes at most two input files");
            }
            spec.kind = PlotKind::CenterlineOverlay;
            spec.title = title.empty() ? "Centerline overlay" : title;
            spec.x_label = "x (cm)";
            spec.y_label = "y (cm)";
            data.series.push_back(
                centerline_series(parse_centerline_csv(first), std::filesystem::path(inputs[0]).stem().string()));
            if (inputs.size() == 2) {
                data.series.push_back(
                    centerline_series(parse_centerline_csv(read_file(inputs[1])),
                                      std::filesystem::path(inputs[1]).stem().string()));
            }
        } else {
            return fail(err, inputs[0], "unrecognized CSV header: " + header);
        }

        write_file(out_svg, render_svg(spec, data));
        out << "wrote " << out_svg << "\n";
        return 0;
    } catch (const std::exception& e) {
        return fail(err, inputs[0], e.what());
    }
}

}  // namespace vinesense::io
