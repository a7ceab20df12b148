#pragma once

#include <stdexcept>
#include <string>

namespace vinesense {

// Shared error taxonomy. Every condition is a data- or caller-visible state;
// internal logic errors are asserts, not exceptions.

// Straight-configuration snapshot (or a current sample set) with a missing or
// duplicated IMU index, or a size that does not match the offset table.
struct MalformedSnapshot : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Strict-mode reconstruction encountered a relative rotation whose bend angle
// cannot fit in one inter-IMU span (flanking straights would be negative).
struct BendExceedsSegment : std::runtime_error {
    double theta;          // measured bend angle, radians
    double limit;          // representable maximum s/d, radians
    int segment_index;     // -1 when raised outside a chained reconstruction

    BendExceedsSegment(double theta_, double limit_, int segment_index_)
        : std::runtime_error(
              "bend angle " + std::to_string(theta_) + " rad exceeds the representable limit " +
              std::to_string(limit_) + " rad" +
              (segment_index_ >= 0 ? " at segment " + std::to_string(segment_index_) : std::string{})),
          theta(theta_),
          limit(limit_),
          segment_index(segment_index_) {}
};

// Ground-truth generator parameters that do not form a valid curve.
struct InvalidShape : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Regression input whose x values carry no variance.
struct DegenerateRegression : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// CSV or JSON input rejected; line is 1-based, 0 when not line-addressable.
struct ParseError : std::runtime_error {
    int line;

    ParseError(int line_, const std::string& message)
        : std::runtime_error("line " + std::to_string(line_) + ": " + message), line(line_) {}
};

// Config document with unknown keys or field values violating module invariants.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Plot payload inconsistent with the requested plot kind.
struct PlotDataMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace vinesense
