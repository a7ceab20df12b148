#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "vinesense/reconstruction.hpp"

// Command implementations behind the CLI, taking streams so tests can capture
// them. Each returns a process exit code: 0 on success (clamped segments during
// reconstruction are warnings on `err`, not failures), 1 on any input or
// config error, reported as one line on `err`.

namespace vinesense::io {

struct CommandOptions {
    bool strict = false;        // reconstruct: error out on over-limit bends instead of clamping
    bool no_timestamp = false;  // omit generated-at comments for byte-stable output
    int arc_samples = 0;        // polyline points per bent segment; 0 = resolution by angle
    bool has_seed = false;
    std::uint64_t seed = 0;  // overrides the config's master_seed when has_seed
};

// Latest sample per sensor from an orientation log -> mounting-offset table.
int cmd_offsets(const std::string& log_csv, const std::string& out_csv,
                const CommandOptions& opts, std::ostream& out, std::ostream& err);

// Orientation log + offset table -> out_dir/centerline.csv and centerline.svg
// (x-y projection). Uses the latest sample per sensor.
int cmd_reconstruct(const std::string& log_csv, const std::string& offsets_csv,
                    const std::string& out_dir, const RobotGeometry& geometry,
                    const CommandOptions& opts, std::ostream& out, std::ostream& err);

// kind: drift | passive | active | length | spacing. Empty config_path runs the
// built-in defaults. Writes <kind>_records.csv, <kind>_summary.json (keys
// sorted) and <kind>.svg into out_dir.
int cmd_sweep(const std::string& kind, const std::string& config_path,
              const std::string& out_dir, const CommandOptions& opts, std::ostream& out,
              std::ostream& err);

// One records CSV -> scatter with its own least-squares line; one or two
// centerline CSVs -> x-y overlay. The file's header row decides which.
int cmd_plot(const std::vector<std::string>& inputs, const std::string& out_svg,
             const std::string& title, const CommandOptions& opts, std::ostream& out,
             std::ostream& err);

}  // namespace vinesense::io
