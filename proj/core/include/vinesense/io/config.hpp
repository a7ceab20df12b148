#pragma once

#include <cstdint>
#include <string>

#include "vinesense/calibration.hpp"
#include "vinesense/experiments.hpp"
#include "vinesense/reconstruction.hpp"

namespace vinesense::io {

struct DriftExperimentParams {
    int n_sensors = 15;
    double duration_s = 600.0;
    double sample_every_s = 30.0;
};

// Whole-run configuration, parsed from a JSON document. Every field has a
// default; unknown keys and invariant-violating values are rejected with a
// ConfigError naming the offending key. The drift model's seed is not
// configured directly: it derives from master_seed so that one seed reproduces
// an entire run.
struct RunConfig {
    std::uint64_t master_seed = 20260823;
    int arc_samples = 0;
    RobotGeometry geometry;
    DriftModel drift;  // seed filled by to_sweep_setup
    DriftExperimentParams drift_experiment;
    PassiveParams passive;
    ActiveParams active;
    LengthParams length;
    SpacingParams spacing;
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

SweepSetup to_sweep_setup(const RunConfig& cfg);

// The drift model with its sweep seed filled in; also used by `sweep drift`.
DriftModel seeded_drift_model(const RunConfig& cfg);

}  // namespace vinesense::io
