#include "vinesense/io/csv.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "vinesense/errors.hpp"
#include "vinesense/io/config.hpp"
#include "vinesense/io/svg.hpp"
#include "vinesense/rng.hpp"

using namespace vinesense;

namespace {

std::vector<ImuSample> random_log(std::uint64_t seed, int n) {
    RngStream rng(seed);
    std::vector<ImuSample> out;
    for (int i = 0; i < n; ++i) {
        ImuSample s;
        s.time_s = 0.25 * i;
        s.imu_index = i;
        s.orientation = quat_about(rng.next_unit_vector(), rng.next_unit() * 3.0);
        out.push_back(s);
    }
    return out;
}

}  // namespace

TEST_CASE("IMU logs survive a write/parse round trip") {
    std::vector<ImuSample> log = random_log(9, 18);
    std::string text = io::imu_log_csv(log);
    std::vector<ImuSample> back = io::parse_imu_log_csv(text);
    REQUIRE(back.size() == log.size());
    for (std::size_t i = 0; i < log.size(); ++i) {
        CHECK(back[i].imu_index == log[i].imu_index);
        CHECK(back[i].time_s == doctest::Approx(log[i].time_s).epsilon(1e-12));
        CHECK(angle_between(back[i].orientation, log[i].orientation) < 5e-11);
    }
    // Writing the parsed log again is textually idempotent.
    CHECK(io::imu_log_csv(back) == text);
}

TEST_CASE("parsers skip blanks and comments and report 1-based line numbers") {
    std::string text =
        "time_s,imu_index,qw,qx,qy,qz\n"
        "\n"
        "# a comment\n"
        "0.0,0,1,0,0,0\n"
        "0.0,1,not_a_number,0,0,0\n";
    try {
        io::parse_imu_log_csv(text);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 5);
    }
    CHECK_THROWS_AS(io::parse_imu_log_csv("bogus,header\n1,2\n"), ParseError);
    CHECK_THROWS_AS(io::parse_imu_log_csv(""), ParseError);
    // Wrong field count on a data row.
    CHECK_THROWS_AS(io::parse_imu_log_csv("time_s,imu_index,qw,qx,qy,qz\n0.0,0,1,0\n"),
                    ParseError);
}

TEST_CASE("latest_samples keeps the last row per sensor in file order") {
    std::vector<ImuSample> log;
    for (int pass = 0; pass < 3; ++pass) {
        for (int i = 0; i < 4; ++i) {
            ImuSample s;
            s.time_s = pass * 1.0;
            s.imu_index = i;
            s.orientation = quat_about(Vec3{0, 0, 1}, 0.1 * pass);
            log.push_back(s);
        }
    }
    std::vector<ImuSample> latest = io::latest_samples(log);
    REQUIRE(latest.size() == 4);
    for (const ImuSample& s : latest) {
        CHECK(s.time_s == 2.0);
    }
}

TEST_CASE("offset tables carry their capture time through the file") {
    std::vector<ImuSample> snap = random_log(10, 6);
    for (auto& s : snap) s.time_s = 3.5;
    OffsetTable table = compute_offsets(snap);
    std::string text = io::offsets_csv(table);
    OffsetTable back = io::parse_offsets_csv(text);
    CHECK(back.captured_at_s == doctest::Approx(3.5).epsilon(1e-12));
    REQUIRE(back.offsets.size() == table.offsets.size());
    for (std::size_t i = 0; i < table.offsets.size(); ++i) {
        CHECK(angle_between(back.offsets[i], table.offsets[i]) < 5e-11);
    }
    CHECK(io::offsets_csv(back) == text);
}

TEST_CASE("centerlines round trip with their tip pose and IMU flags") {
    CenterlinePolyline poly;
    poly.points = {Vec3{0, 0, 0}, Vec3{5, 0.5, 0}, Vec3{10.2, 1, 0}, Vec3{15, 1.5, 0.25}};
    poly.imu_indices = {0, 2, 3};
    poly.tip = Pose{Vec3{15, 1.5, 0.25}, quat_about(Vec3{0, 1, 0}, 0.4)};
    std::string text = io::centerline_csv(poly);
    io::ParsedCenterline back = io::parse_centerline_csv(text);
    REQUIRE(back.points.size() == 4);
    CHECK(back.is_imu == std::vector<bool>{true, false, true, true});
    REQUIRE(back.has_tip);
    CHECK(norm(back.tip.position - poly.tip.position) < 1e-10);
    CHECK(angle_between(back.tip.orientation, poly.tip.orientation) < 5e-11);
}

TEST_CASE("experiment records keep 64-bit seeds and free-form notes") {
    std::vector<ExperimentRecord> recs;
    ExperimentRecord r;
    r.independent_var = 45.0;
    r.tip_error_pct = 6.125;
    r.trial_seed = 18446744073709551615ull;  // UINT64_MAX survives the text form
    r.notes = "age_s=83.2;imus=18";
    recs.push_back(r);
    r.independent_var = 90.0;
    r.trial_seed = 1;
    r.notes = "";
    recs.push_back(r);
    std::string text = io::records_csv(recs);
    std::vector<ExperimentRecord> back = io::parse_records_csv(text);
    REQUIRE(back.size() == 2);
    CHECK(back[0].trial_seed == 18446744073709551615ull);
    CHECK(back[0].notes == "age_s=83.2;imus=18");
    CHECK(back[1].notes.empty());
    CHECK(back[0].tip_error_pct == doctest::Approx(6.125).epsilon(1e-12));
    CHECK(io::records_csv(back) == text);
}

TEST_CASE("an empty config document yields the documented defaults") {
    io::RunConfig cfg = io::parse_config("{}");
    CHECK(cfg.master_seed == 20260823u);
    CHECK(cfg.geometry.spacing_s_cm == doctest::Approx(10.2));
    CHECK(cfg.geometry.diameter_d_cm == doctest::Approx(12.9));
    CHECK(cfg.geometry.num_imus == 18);
    CHECK(cfg.drift.mean_rate_deg_min == doctest::Approx(1.33));
    CHECK(cfg.passive.angles_deg.size() == 7);
    CHECK(cfg.spacing.multiples == std::vector<int>{1, 2, 4, 8, 16});
}

TEST_CASE("config parsing rejects unknown keys and invalid values") {
    CHECK_THROWS_AS(io::parse_config("{\"geometry\": {\"spacing\": 10}}"), ConfigError);
    CHECK_THROWS_AS(io::parse_config("{\"metry\": {}}"), ConfigError);
    CHECK_THROWS_AS(io::parse_config("{\"geometry\": {\"spacing_cm\": -1}}"), ConfigError);
    CHECK_THROWS_AS(io::parse_config("{\"drift\": {\"noise_std_deg\": -0.5}}"), ConfigError);
    CHECK_THROWS_AS(io::parse_config("{\"active\": {\"shape\": \"banana\"}}"), ConfigError);
    CHECK_THROWS_AS(io::parse_config("{\"passive\": {\"trials_per_angle\": 0}}"), ConfigError);
    CHECK_THROWS_AS(io::parse_config("not json"), ConfigError);
}

TEST_CASE("the drift seed derives from the master seed") {
    io::RunConfig a = io::parse_config("{\"master_seed\": 100}");
    io::RunConfig b = io::parse_config("{\"master_seed\": 101}");
    CHECK(io::seeded_drift_model(a).seed != io::seeded_drift_model(b).seed);
    CHECK(io::seeded_drift_model(a).seed == io::to_sweep_setup(a).drift.seed);
}

TEST_CASE("the active ground-truth shape parses from its name") {
    io::RunConfig arc = io::parse_config("{\"active\": {\"shape\": \"arc\"}}");
    CHECK(arc.active.arc_ground_truth);
    io::RunConfig hinge = io::parse_config("{\"active\": {\"shape\": \"hinge_mismatch\"}}");
    CHECK_FALSE(hinge.active.arc_ground_truth);
}

TEST_CASE("plots render deterministically") {
    io::PlotSpec spec;
    spec.title = "tip error vs bend <angle>";  // markup must be escaped
    spec.x_label = "bend angle (deg)";
    spec.y_label = "tip error (% length)";
    io::PlotData data;
    io::PlotSeries s;
    s.name = "trials";
    s.points = {{0, 0.5}, {45, 6.2}, {90, 7.9}};
    data.series.push_back(s);
    data.has_fit = true;
    data.fit_slope = 0.08;
    data.fit_intercept = 0.6;
    std::string a = io::render_svg(spec, data);
    std::string b = io::render_svg(spec, data);
    CHECK(a == b);
    CHECK(a.find("<svg") != std::string::npos);
    CHECK(a.find("</svg>") != std::string::npos);
    CHECK(a.find("&lt;angle&gt;") != std::string::npos);
    CHECK(a.find("<angle>") == std::string::npos);
}

TEST_CASE("plot payloads must match the plot kind") {
    io::PlotSpec spec;
    spec.kind = io::PlotKind::CenterlineOverlay;
    io::PlotData data;
    for (int i = 0; i < 3; ++i) {
        io::PlotSeries s;
        s.name = "series";
        s.points = {{0, 0}, {1, 1}};
        data.series.push_back(s);
    }
    CHECK_THROWS_AS(io::render_svg(spec, data), PlotDataMismatch);

    io::PlotData with_fit;
    with_fit.series.push_back(io::PlotSeries{"truth", {{0, 0}, {1, 1}}});
    with_fit.has_fit = true;
    CHECK_THROWS_AS(io::render_svg(spec, with_fit), PlotDataMismatch);
}

TEST_CASE("empty and degenerate plot data still render") {
    io::PlotSpec spec;
    io::PlotData empty;
    std::string svg = io::render_svg(spec, empty);
    CHECK(svg.find("</svg>") != std::string::npos);

    io::PlotData one_point;
    one_point.series.push_back(io::PlotSeries{"p", {{3.0, 3.0}}});
    CHECK(io::render_svg(spec, one_point).find("</svg>") != std::string::npos);
}

TEST_CASE("files written to disk read back verbatim") {
    std::string path = "vinesense_io_test_scratch.csv";
    std::string payload = "# comment\na,b\n1,2\n";
    io::write_file(path, payload);
    CHECK(io::read_file(path) == payload);
    CHECK_THROWS_AS(io::read_file("definitely/not/a/real/path.csv"), std::runtime_error);
    std::remove(path.c_str());
}
