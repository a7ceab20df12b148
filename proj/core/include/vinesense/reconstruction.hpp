#pragma once

#include <vector>

#include "vinesense/geometry.hpp"

namespace vinesense {

struct RobotGeometry {
    double spacing_s_cm = 10.2;   // straight inter-IMU spacing
    double diameter_d_cm = 12.9;  // inflated body diameter
    int num_imus = 18;
};

// Straight/arc/straight decomposition of one inter-IMU span. The span bends as
// a single circular arc of angle theta at centerline radius d/2, located midway
// between the two sensors and flanked by equal straights:
//   L_arc_outer = theta * d        (outer-wall arc length)
//   L_arc       = theta * d / 2    (centerline arc length)
//   L_straight  = (s - L_arc_outer) / 2
// Unclamped segments satisfy 2 * L_straight + L_arc_outer == s exactly.
struct SegmentShape {
    double theta = 0.0;           // radians
    Vec3 bend_axis{0.0, 0.0, 1.0};  // in the frame of the span's base IMU
    double L_arc = 0.0;           // cm
    double L_arc_outer = 0.0;     // cm
    double L_straight = 0.0;      // cm
    bool clamped = false;         // theta was reduced to s/d to keep L_straight >= 0
};

struct ClampEvent {
    int segment_index = -1;
    double theta_measured = 0.0;  // radians, before clamping
    double theta_limit = 0.0;     // s/d
};

struct CenterlinePolyline {
    std::vector<Vec3> points;      // world frame, first point is the base
    std::vector<int> imu_indices;  // points[] index of each IMU, strictly increasing
    Pose tip;                      // pose at the last IMU
    std::vector<ClampEvent> clamped_segments;  // empty when nothing clamped
};

struct SegmentPath {
    Pose end;
    std::vector<Vec3> points;  // segment start excluded, segment end included
};

// Absolute-length slack (cm) for the L_straight >= 0 boundary: values within
// this of zero are rounding residue of theta == s/d, not model violations.
inline constexpr double kLengthTol = 1e-9;

// |axis . tangent| above this marks a rotation as pure twist (straight
// centerline). Shared by reconstruction and the synthetic-shape generators so
// round trips agree near the threshold.
inline constexpr double kTwistAxisCos = 0.999;

// Decomposes a corrected relative rotation. In strict mode a bend beyond s/d
// (beyond rounding slack) throws BendExceedsSegment; lenient mode clamps theta
// to s/d and flags the segment.
SegmentShape segment_from_rotation(Quat r, const RobotGeometry& geom, bool strict);

// Walks one segment from `start`: straight L_straight along the body tangent
// (+x of the orientation), the arc bending about the rotated bend axis, then
// straight L_straight along the new tangent. End orientation composes the full
// relative rotation reconstructed from (bend_axis, theta). A rotation axis
// nearly parallel to the tangent (|axis.x| > 0.999) is pure twist: the span
// stays straight with the rotation applied to the frame only.
// arc_samples >= 1 is the number of chords approximating the arc in `points`.
SegmentPath advance_pose(const Pose& start, const SegmentShape& seg, int arc_samples);

// Chains all spans from the base pose. rotations.size() spans place
// rotations.size() + 1 IMUs; geom.num_imus only bounds that count.
// arc_samples == 0 picks max(2, ceil(theta / 0.05)) per segment.
// Strict-mode bend violations are rethrown with the segment index attached.
CenterlinePolyline reconstruct(const std::vector<Quat>& rotations, const RobotGeometry& geom,
                               const Pose& base, int arc_samples = 0, bool strict = false);

}  // namespace vinesense
