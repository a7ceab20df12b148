#pragma once

#include <cmath>

// Quaternion convention, fixed for the whole library:
//   Hamilton (right-handed) components (w, x, y, z). quat_mul(a, b) composes
//   locally: the result applies a first, then b expressed in the frame already
//   rotated by a. Rotation matrices satisfy R(quat_mul(a, b)) = R(a) * R(b),
//   so rotate(quat_mul(a, b), v) == rotate(a, rotate(b, v)).
// Units: centimeters for positions, radians for angles. Degrees appear only at
// CLI boundaries and in drift-rate parameters whose names say so.

namespace vinesense {

inline constexpr double kPi = 3.14159265358979323846;

// Rotation angles at or below this are treated as identity: the axis is not
// numerically recoverable and callers get the (0,0,1) placeholder instead.
inline constexpr double kThetaEps = 1e-9;

constexpr double deg2rad(double deg) { return deg * (kPi / 180.0); }
constexpr double rad2deg(double rad) { return rad * (180.0 / kPi); }

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }
inline Vec3 operator-(Vec3 v) { return {-v.x, -v.y, -v.z}; }

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm2(Vec3 v) { return dot(v, v); }
inline double norm(Vec3 v) { return std::sqrt(norm2(v)); }

// Zero input returns zero; callers that require a direction must check.
Vec3 normalized(Vec3 v);

// Unit quaternion. Every constructor normalizes and fixes the overall sign so
// that q and -q (the same rotation) store identical bits: the first nonzero
// component among (w, x, y, z) is made positive. In particular w >= 0 always.
struct Quat {
    double w = 1.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Quat() = default;
    Quat(double w_, double x_, double y_, double z_);
};

struct AxisAngle {
    Vec3 axis{0.0, 0.0, 1.0};
    double angle = 0.0;  // radians, in [0, pi]
};

struct Pose {
    Vec3 position;
    Quat orientation;  // body frame relative to world; body +x is the tangent
};

Quat quat_identity();
Quat quat_mul(Quat a, Quat b);
Quat quat_inv(Quat q);

// angle in [0, pi]; for angle <= kThetaEps the axis is the (0,0,1) placeholder
// and must not be used geometrically.
AxisAngle quat_to_axis_angle(Quat q);
Quat axis_angle_to_quat(AxisAngle aa);

// Convenience factory; axis is normalized internally (must be nonzero).
Quat quat_about(Vec3 axis, double angle_rad);

// Rotation angle of quat_mul(quat_inv(a), b), in [0, pi]. Symmetric.
double angle_between(Quat a, Quat b);

Vec3 rotate(Quat q, Vec3 v);

}  // namespace vinesense
