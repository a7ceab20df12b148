#include "vinesense/reconstruction.hpp"

#include <cmath>
#include <string>

#include "vinesense/errors.hpp"

namespace vinesense {

namespace {

int auto_arc_samples(double theta) {
    return std::max(2, static_cast<int>(std::ceil(theta / 0.05)));
}

}  // namespace

SegmentShape segment_from_rotation(Quat r, const RobotGeometry& geom, bool strict) {
    AxisAngle aa = quat_to_axis_angle(r);
    double limit = geom.spacing_s_cm / geom.diameter_d_cm;
    SegmentShape seg;
    seg.theta = aa.angle;
    seg.bend_axis = aa.axis;
    double ls = (geom.spacing_s_cm - seg.theta * geom.diameter_d_cm) / 2.0;
    if (ls < -kLengthTol) {
        if (strict) {
            throw BendExceedsSegment(seg.theta, limit, -1);
        }
        seg.theta = limit;
        ls = 0.0;
        seg.clamped = true;
    } else if (ls < 0.0) {
        ls = 0.0;  // rounding residue of theta == s/d
    }
    seg.L_straight = ls;
    // s - 2*L_straight rather than theta*d keeps the material identity
    // 2*L_straight + L_arc_outer == s exact; it differs from theta*d by at
    // most one ulp of s.
    seg.L_arc_outer = geom.spacing_s_cm - 2.0 * ls;
    seg.L_arc = 0.5 * seg.L_arc_outer;
    return seg;
}

SegmentPath advance_pose(const Pose& start, const SegmentShape& seg, int arc_samples) {
    SegmentPath out;
    Vec3 t = rotate(start.orientation, Vec3{1.0, 0.0, 0.0});
    Quat r = axis_angle_to_quat(AxisAngle{seg.bend_axis, seg.theta});
    Quat end_q = quat_mul(start.orientation, r);

    bool twist = std::fabs(seg.bend_axis.x) > kTwistAxisCos;
    if (seg.theta <= kThetaEps || twist) {
        // Straight span (or pure twist: no lateral deflection, frame rotates).
        Vec3 end_p = start.position + (2.0 * seg.L_straight + seg.L_arc_outer) * t;
        out.points.push_back(end_p);
        out.end = Pose{end_p, end_q};
        return out;
    }

    Vec3 axis_w = rotate(start.orientation, seg.bend_axis);
    Vec3 u = normalized(cross(axis_w, t));  // in-plane normal the arc curves toward
    double rho = seg.L_arc / seg.theta;     // d/2 of the geometry that built seg

    Vec3 p1 = start.position + seg.L_straight * t;
    if (seg.L_straight > 0.0) {
        out.points.push_back(p1);
    }
    Vec3 arc_end = p1;
    for (int j = 1; j <= arc_samples; ++j) {
        double phi = seg.theta * static_cast<double>(j) / static_cast<double>(arc_samples);
        arc_end = p1 + (rho * std::sin(phi)) * t + (rho * (1.0 - std::cos(phi))) * u;
        out.points.push_back(arc_end);
    }
    Vec3 end_p = arc_end;
    if (seg.L_straight > 0.0) {
        Vec3 t2 = rotate(end_q, Vec3{1.0, 0.0, 0.0});
        end_p = arc_end + seg.L_straight * t2;
        out.points.push_back(end_p);
    }
    out.end = Pose{end_p, end_q};
    return out;
}

CenterlinePolyline reconstruct(const std::vector<Quat>& rotations, const RobotGeometry& geom,
                               const Pose& base, int arc_samples, bool strict) {
    if (rotations.size() + 1 > static_cast<std::size_t>(geom.num_imus)) {
        throw MalformedSnapshot(std::to_string(rotations.size()) +
                                " relative rotations need " + std::to_string(rotations.size() + 1) +
                                " IMUs but the geometry has " + std::to_string(geom.num_imus));
    }
    CenterlinePolyline poly;
    poly.points.push_back(base.position);
    poly.imu_indices.push_back(0);
    Pose cur = base;
    double limit = geom.spacing_s_cm / geom.diameter_d_cm;
    for (std::size_t i = 0; i < rotations.size(); ++i) {
        SegmentShape seg;
        try {
            seg = segment_from_rotation(rotations[i], geom, strict);
        } catch (const BendExceedsSegment& e) {
            throw BendExceedsSegment(e.theta, e.limit, static_cast<int>(i));
        }
        if (seg.clamped) {
            poly.clamped_segments.push_back(
                ClampEvent{static_cast<int>(i), quat_to_axis_angle(rotations[i]).angle, limit});
        }
        int n = arc_samples > 0 ? arc_samples : auto_arc_samples(seg.theta);
        SegmentPath sp = advance_pose(cur, seg, n);
        for (const Vec3& p : sp.points) {
            poly.points.push_back(p);
        }
        poly.imu_indices.push_back(static_cast<int>(poly.points.size()) - 1);
        cur = sp.end;
    }
    poly.tip = cur;
    return poly;
}

}  // namespace vinesense
