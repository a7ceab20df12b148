#include "vinesense/geometry.hpp"

#include <doctest.h>

#include <cmath>
#include <cstring>

#include "vinesense/rng.hpp"

using namespace vinesense;

namespace {

bool same_bits(Quat a, Quat b) { return std::memcmp(&a, &b, sizeof(Quat)) == 0; }

// Independent rotation oracle: Rodrigues' formula on an explicit 3x3 matrix.
struct Mat3 {
    double m[3][3];
};

Mat3 rodrigues(Vec3 axis, double angle) {
    Vec3 k = normalized(axis);
    double c = std::cos(angle), s = std::sin(angle), v = 1.0 - c;
    Mat3 r;
    r.m[0][0] = c + k.x * k.x * v;
    r.m[0][1] = k.x * k.y * v - k.z * s;
    r.m[0][2] = k.x * k.z * v + k.y * s;
    r.m[1][0] = k.y * k.x * v + k.z * s;
    r.m[1][1] = c + k.y * k.y * v;
    r.m[1][2] = k.y * k.z * v - k.x * s;
    r.m[2][0] = k.z * k.x * v - k.y * s;
    r.m[2][1] = k.z * k.y * v + k.x * s;
    r.m[2][2] = c + k.z * k.z * v;
    return r;
}

Vec3 apply(const Mat3& r, Vec3 p) {
    return {r.m[0][0] * p.x + r.m[0][1] * p.y + r.m[0][2] * p.z,
            r.m[1][0] * p.x + r.m[1][1] * p.y + r.m[1][2] * p.z,
            r.m[2][0] * p.x + r.m[2][1] * p.y + r.m[2][2] * p.z};
}

Quat random_quat(RngStream& rng) {
    return quat_about(rng.next_unit_vector(), rng.next_unit() * 2.0 * kPi);
}

}  // namespace

TEST_CASE("rotate matches the Rodrigues matrix oracle") {
    RngStream rng(11);
    for (int i = 0; i < 500; ++i) {
        Vec3 axis = rng.next_unit_vector();
        double angle = (rng.next_unit() - 0.5) * 2.0 * kPi;
        Vec3 p{rng.next_normal(0, 3), rng.next_normal(0, 3), rng.next_normal(0, 3)};
        Vec3 got = rotate(quat_about(axis, angle), p);
        Vec3 want = apply(rodrigues(axis, angle), p);
        CHECK(norm(got - want) < 1e-12 * (1.0 + norm(p)));
    }
}

TEST_CASE("quat_mul composes rotations with R(ab) = R(a) R(b)") {
    RngStream rng(12);
    for (int i = 0; i < 500; ++i) {
        Quat a = random_quat(rng);
        Quat b = random_quat(rng);
        Vec3 p{rng.next_normal(0, 1), rng.next_normal(0, 1), rng.next_normal(0, 1)};
        Vec3 lhs = rotate(quat_mul(a, b), p);
        Vec3 rhs = rotate(a, rotate(b, p));
        CHECK(norm(lhs - rhs) < 1e-12);
    }
    // Two quarter turns about z make a half turn.
    Quat z90 = quat_about(Vec3{0, 0, 1}, kPi / 2.0);
    Quat z180 = quat_mul(z90, z90);
    CHECK(angle_between(z180, quat_about(Vec3{0, 0, 1}, kPi)) < 1e-12);
}

TEST_CASE("quat_mul is associative") {
    RngStream rng(13);
    for (int i = 0; i < 200; ++i) {
        Quat a = random_quat(rng), b = random_quat(rng), c = random_quat(rng);
        Quat lhs = quat_mul(quat_mul(a, b), c);
        Quat rhs = quat_mul(a, quat_mul(b, c));
        CHECK(angle_between(lhs, rhs) < 1e-12);
    }
}

TEST_CASE("the cyclic permutation rotation has all components 1/2") {
    // Rotating 120 degrees about (1,1,1) cycles the coordinate axes.
    Quat q = quat_about(Vec3{1, 1, 1}, 2.0 * kPi / 3.0);
    CHECK(q.w == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(q.x == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(q.y == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(q.z == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(norm(rotate(q, Vec3{1, 0, 0}) - Vec3{0, 1, 0}) < 1e-12);
    CHECK(norm(rotate(q, Vec3{0, 1, 0}) - Vec3{0, 0, 1}) < 1e-12);
}

TEST_CASE("constructor fixes sign so q and -q store identical bits") {
    CHECK(same_bits(Quat(0.5, 0.5, 0.5, 0.5), Quat(-0.5, -0.5, -0.5, -0.5)));
    // w == 0: the first nonzero component decides, and becomes positive.
    CHECK(same_bits(Quat(0.0, -1.0, 0.0, 0.0), Quat(0.0, 1.0, 0.0, 0.0)));
    CHECK(Quat(0.0, -1.0, 0.0, 0.0).x == 1.0);
    CHECK(same_bits(Quat(0.0, 0.0, -0.6, 0.8), Quat(0.0, 0.0, 0.6, -0.8)));
    RngStream rng(14);
    for (int i = 0; i < 200; ++i) {
        Quat q = random_quat(rng);
        CHECK(same_bits(q, Quat(-q.w, -q.x, -q.y, -q.z)));
        CHECK(q.w >= 0.0);
    }
}

TEST_CASE("constructing from already-unit components is bit-stable") {
    RngStream rng(15);
    for (int i = 0; i < 200; ++i) {
        Quat q = random_quat(rng);
        CHECK(same_bits(q, Quat(q.w, q.x, q.y, q.z)));
    }
    // Non-unit input is normalized.
    CHECK(same_bits(Quat(2.0, 0.0, 0.0, 0.0), quat_identity()));
    Quat h = Quat(3.0, 3.0, 3.0, 3.0);
    CHECK(h.w == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("axis-angle round trip over the open interval") {
    RngStream rng(16);
    for (int i = 0; i < 1000; ++i) {
        Vec3 axis = rng.next_unit_vector();
        double angle = 1e-3 + rng.next_unit() * (kPi - 2e-3);
        AxisAngle back = quat_to_axis_angle(axis_angle_to_quat(AxisAngle{axis, angle}));
        CHECK(back.angle == doctest::Approx(angle).epsilon(1e-12));
        CHECK(dot(back.axis, axis) > 1.0 - 1e-9);
    }
}

TEST_CASE("identity and tiny angles report the placeholder axis") {
    AxisAngle aa = quat_to_axis_angle(quat_identity());
    CHECK(aa.angle == 0.0);
    CHECK(aa.axis.z == 1.0);
    AxisAngle tiny = quat_to_axis_angle(quat_about(Vec3{0, 1, 0}, kThetaEps / 10.0));
    CHECK(tiny.angle <= kThetaEps);
    CHECK(tiny.axis.z == 1.0);
}

TEST_CASE("inverse undoes a rotation") {
    RngStream rng(17);
    for (int i = 0; i < 200; ++i) {
        Quat q = random_quat(rng);
        CHECK(angle_between(quat_mul(q, quat_inv(q)), quat_identity()) < 1e-12);
        Vec3 p{1, 2, 3};
        CHECK(norm(rotate(quat_inv(q), rotate(q, p)) - p) < 1e-12);
    }
}

TEST_CASE("angle_between is symmetric and measures relative rotation") {
    RngStream rng(18);
    for (int i = 0; i < 200; ++i) {
        Quat a = random_quat(rng);
        double step = rng.next_unit() * kPi * 0.99;
        Quat b = quat_mul(a, quat_about(rng.next_unit_vector(), step));
        CHECK(angle_between(a, b) == doctest::Approx(step).epsilon(1e-10));
        CHECK(angle_between(a, b) == doctest::Approx(angle_between(b, a)).epsilon(1e-14));
    }
    CHECK(angle_between(quat_identity(), quat_identity()) == 0.0);
}

TEST_CASE("normalized of the zero vector is zero") {
    Vec3 z = normalized(Vec3{0, 0, 0});
    CHECK(z.x == 0.0);
    CHECK(z.y == 0.0);
    CHECK(z.z == 0.0);
    Vec3 u = normalized(Vec3{0, 3, 4});
    CHECK(norm(u) == doctest::Approx(1.0).epsilon(1e-15));
}
