#pragma once

#include <string>
#include <vector>

#include "vinesense/calibration.hpp"
#include "vinesense/experiments.hpp"
#include "vinesense/geometry.hpp"
#include "vinesense/reconstruction.hpp"

// CSV schemas. Writers emit pure CSV (callers may prepend `#` comment lines);
// readers skip blank lines and `#` comments except where a schema assigns them
// meaning. All floats are written with 12 significant digits, enough to
// round-trip unit quaternions within every tolerance used in this library.

namespace vinesense::io {

std::string fmt_g12(double v);

// `time_s,imu_index,qw,qx,qy,qz`
std::string imu_log_csv(const std::vector<ImuSample>& samples);
std::vector<ImuSample> parse_imu_log_csv(const std::string& text);

// Collapses a multi-timestep log to one sample per imu_index, keeping the last
// row in file order for each index.
std::vector<ImuSample> latest_samples(const std::vector<ImuSample>& log);

// `pair_index,qw,qx,qy,qz` preceded by `# captured_at=<seconds>`
std::string offsets_csv(const OffsetTable& table);
OffsetTable parse_offsets_csv(const std::string& text);

// `point_index,x_cm,y_cm,z_cm,is_imu` with the tip pose appended as a comment
// row `# tip,x,y,z,qw,qx,qy,qz`.
std::string centerline_csv(const CenterlinePolyline& poly);

struct ParsedCenterline {
    std::vector<Vec3> points;
    std::vector<bool> is_imu;
    Pose tip;
    bool has_tip = false;
};
ParsedCenterline parse_centerline_csv(const std::string& text);

// `trial,independent_var,tip_error_pct,seed,notes`
std::string records_csv(const std::vector<ExperimentRecord>& records);
std::vector<ExperimentRecord> parse_records_csv(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace vinesense::io
