#include "vinesense/geometry.hpp"

namespace vinesense {

Vec3 normalized(Vec3 v) {
    double n = norm(v);
    if (n == 0.0) return v;
    return (1.0 / n) * v;
}

Quat::Quat(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {
    double n2 = w * w + x * x + y * y + z * z;
    if (n2 == 0.0) {
        // Zero-norm input is a programming error; stay defined in release builds.
        w = 1.0;
        x = y = z = 0.0;
        return;
    }
    // Skipping the division when already unit keeps identity composition and
    // sign flips bit-stable; the tolerance keeps |norm - 1| well under 1e-9.
    if (std::fabs(n2 - 1.0) > 1e-12) {
        double inv = 1.0 / std::sqrt(n2);
        w *= inv;
        x *= inv;
        y *= inv;
        z *= inv;
    }
    double lead = (w != 0.0) ? w : (x != 0.0) ? x : (y != 0.0) ? y : z;
    if (lead < 0.0) {
        w = -w;
        x = -x;
        y = -y;
        z = -z;
    }
    // Adding +0.0 turns -0.0 into +0.0 (and nothing else), so canonical quats
    // are bitwise unique and never print as "-0".
    w += 0.0;
    x += 0.0;
    y += 0.0;
    z += 0.0;
}

Quat quat_identity() { return Quat{}; }

Quat quat_mul(Quat a, Quat b) {
    return Quat(a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
                a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
                a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
                a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w);
}

Quat quat_inv(Quat q) { return Quat(q.w, -q.x, -q.y, -q.z); }

AxisAngle quat_to_axis_angle(Quat q) {
    double vn = std::sqrt(q.x * q.x + q.y * q.y + q.z * q.z);
    double angle = 2.0 * std::atan2(vn, q.w);  // w >= 0 canonical, so angle in [0, pi]
    if (angle <= kThetaEps || vn == 0.0) {
        return AxisAngle{Vec3{0.0, 0.0, 1.0}, angle};
    }
    double inv = 1.0 / vn;
    return AxisAngle{Vec3{q.x * inv, q.y * inv, q.z * inv}, angle};
}

Quat axis_angle_to_quat(AxisAngle aa) {
    double h = 0.5 * aa.angle;
    double s = std::sin(h);
    return Quat(std::cos(h), s * aa.axis.x, s * aa.axis.y, s * aa.axis.z);
}

Quat quat_about(Vec3 axis, double angle_rad) {
    return axis_angle_to_quat(AxisAngle{normalized(axis), angle_rad});
}

double angle_between(Quat a, Quat b) {
    return quat_to_axis_angle(quat_mul(quat_inv(a), b)).angle;
}

Vec3 rotate(Quat q, Vec3 v) {
    Vec3 u{q.x, q.y, q.z};
    Vec3 t = 2.0 * cross(u, v);
    return v + q.w * t + cross(u, t);
}

}  // namespace vinesense
