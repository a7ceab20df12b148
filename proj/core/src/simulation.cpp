#include "vinesense/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "vinesense/errors.hpp"

namespace vinesense {

namespace {

constexpr double kGeomTol = 1e-9;

Pose eval_piece(const Pose& start, const PathPiece& piece, double dist) {
    Vec3 t = rotate(start.orientation, Vec3{1.0, 0.0, 0.0});
    if (piece.turn_rad == 0.0) {
        return Pose{start.position + dist * t, start.orientation};
    }
    double phi = piece.turn_rad * dist / piece.len_cm;
    Quat q = quat_mul(start.orientation, axis_angle_to_quat(AxisAngle{piece.axis, phi}));
    // Same twist convention as reconstruction: a turn about (almost) the
    // tangent leaves the centerline straight and only spins the frame.
    if (std::fabs(piece.axis.x) > kTwistAxisCos) {
        return Pose{start.position + dist * t, q};
    }
    double rho = piece.len_cm / piece.turn_rad;
    Vec3 axis_w = rotate(start.orientation, piece.axis);
    Vec3 u = normalized(cross(axis_w, t));
    Vec3 pos = start.position + (rho * std::sin(phi)) * t + (rho * (1.0 - std::cos(phi))) * u;
    return Pose{pos, q};
}

void append_span_pieces(std::vector<PathPiece>& pieces, double theta, Vec3 axis,
                        const RobotGeometry& geom, double radius_scale) {
    double s = geom.spacing_s_cm;
    double d = geom.diameter_d_cm;
    if (theta <= 0.0) {
        pieces.push_back(PathPiece{s, s, 0.0, Vec3{0.0, 0.0, 1.0}});
        return;
    }
    double ls = (s - theta * d) / 2.0;
    if (ls < -kGeomTol) {
        throw InvalidShape("span bend angle " + std::to_string(theta) +
                           " rad exceeds the representable limit s/d");
    }
    ls = std::max(0.0, ls);
    if (std::fabs(axis.x) > kTwistAxisCos) {
        // Twist span: the rotation spins the frame but the centerline runs
        // straight through the full spacing, as in reconstruction.
        pieces.push_back(PathPiece{s, s, theta, axis});
        return;
    }
    if (ls > 0.0) {
        pieces.push_back(PathPiece{ls, ls, 0.0, Vec3{0.0, 0.0, 1.0}});
    }
    pieces.push_back(PathPiece{theta * radius_scale * d / 2.0, theta * d, theta, axis});
    if (ls > 0.0) {
        pieces.push_back(PathPiece{ls, ls, 0.0, Vec3{0.0, 0.0, 1.0}});
    }
}

}  // namespace

Pose GroundTruthShape::at(double arc_len_cm) const {
    double remaining = std::clamp(arc_len_cm, 0.0, total_length_cm);
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (remaining <= pieces[i].len_cm || i + 1 == pieces.size()) {
            return eval_piece(piece_starts[i], pieces[i], std::min(remaining, pieces[i].len_cm));
        }
        remaining -= pieces[i].len_cm;
    }
    return piece_starts.empty() ? Pose{} : piece_starts.back();
}

double GroundTruthShape::centerline_at_material(double material_cm) const {
    double remaining = std::clamp(material_cm, 0.0, material_length_cm);
    double len = 0.0;
    for (const PathPiece& piece : pieces) {
        if (piece.material_cm > 0.0 && remaining <= piece.material_cm) {
            return len + piece.len_cm * (remaining / piece.material_cm);
        }
        remaining -= piece.material_cm;
        len += piece.len_cm;
    }
    return total_length_cm;
}

GroundTruthShape make_shape(Pose base, std::vector<PathPiece> pieces, std::string description) {
    GroundTruthShape shape;
    shape.description = std::move(description);
    shape.pieces.reserve(pieces.size());
    for (PathPiece& p : pieces) {
        if (p.len_cm <= 0.0 && p.material_cm <= 0.0) {
            continue;
        }
        if (p.len_cm < 0.0 || p.material_cm < 0.0) {
            throw InvalidShape("negative piece length in shape construction");
        }
        shape.pieces.push_back(p);
    }
    shape.piece_starts.reserve(shape.pieces.size() + 1);
    shape.piece_starts.push_back(base);
    Pose cur = base;
    for (const PathPiece& p : shape.pieces) {
        shape.total_length_cm += p.len_cm;
        shape.material_length_cm += p.material_cm;
        cur = eval_piece(cur, p, p.len_cm);
        shape.piece_starts.push_back(cur);
    }
    return shape;
}

GroundTruthShape make_hinge_chain_shape(const std::vector<HingeBend>& bends,
                                        const RobotGeometry& geom, double radius_scale,
                                        double trailing_straight_cm) {
    std::vector<PathPiece> pieces;
    pieces.reserve(bends.size() * 3 + 1);
    for (const HingeBend& b : bends) {
        if (b.theta < 0.0) {
            throw InvalidShape("negative span bend angle");
        }
        append_span_pieces(pieces, b.theta, b.axis, geom, radius_scale);
    }
    if (trailing_straight_cm > 0.0) {
        pieces.push_back(
            PathPiece{trailing_straight_cm, trailing_straight_cm, 0.0, Vec3{0.0, 0.0, 1.0}});
    }
    return make_shape(Pose{}, std::move(pieces),
                      "hinge chain of " + std::to_string(bends.size()) + " spans");
}

GroundTruthShape make_passive_bend_shape(double pre_length_cm, double bend_angle_deg,
                                         double bend_radius_cm, double total_length_cm,
                                         const RobotGeometry& geom) {
    if (bend_angle_deg < 0.0 || bend_angle_deg > 90.0) {
        throw InvalidShape("bend angle " + std::to_string(bend_angle_deg) +
                           " deg outside [0, 90]");
    }
    if (pre_length_cm < 0.0 || total_length_cm <= 0.0) {
        throw InvalidShape("negative pre-bend length or non-positive total length");
    }
    double beta = deg2rad(bend_angle_deg);
    std::string desc = "passive bend " + std::to_string(bend_angle_deg) + " deg";
    if (beta == 0.0) {
        return make_shape(Pose{},
                          {PathPiece{total_length_cm, total_length_cm, 0.0, Vec3{0.0, 0.0, 1.0}}},
                          desc + " (straight)");
    }
    if (bend_radius_cm <= 0.0) {
        throw InvalidShape("bend radius must be positive for a nonzero bend angle");
    }

    bool representable = std::fabs(bend_radius_cm - geom.diameter_d_cm / 2.0) <= 1e-9;
    if (!representable) {
        double arc_len = bend_radius_cm * beta;
        double post = total_length_cm - pre_length_cm - arc_len;
        if (post < -kGeomTol) {
            throw InvalidShape("pre-bend length plus arc exceeds total length");
        }
        std::vector<PathPiece> pieces;
        pieces.push_back(PathPiece{pre_length_cm, pre_length_cm, 0.0, Vec3{0.0, 0.0, 1.0}});
        pieces.push_back(PathPiece{arc_len, arc_len, beta, Vec3{0.0, 0.0, 1.0}});
        pieces.push_back(PathPiece{std::max(0.0, post), std::max(0.0, post), 0.0,
                                   Vec3{0.0, 0.0, 1.0}});
        return make_shape(Pose{}, std::move(pieces), desc + " (literal curve)");
    }

    // Hinge-snapped realization: distribute the turn over consecutive spans
    // starting at the first IMU station at or past pre_length, each span
    // bending at most s/d at its midpoint.
    double s = geom.spacing_s_cm;
    double theta_max = s / geom.diameter_d_cm;
    int n_spans = static_cast<int>(std::floor(total_length_cm / s + kGeomTol));
    double rem = total_length_cm - n_spans * s;
    int j0 = static_cast<int>(std::ceil(pre_length_cm / s - kGeomTol));
    if (j0 >= n_spans) {
        throw InvalidShape("pre-bend length leaves no span for the bend");
    }
    std::vector<HingeBend> bends(static_cast<std::size_t>(n_spans));
    for (auto& b : bends) {
        b.axis = Vec3{0.0, 0.0, 1.0};
    }
    double remaining = beta;
    for (int j = j0; remaining > 1e-15; ++j) {
        if (j >= n_spans) {
            throw InvalidShape("bend of " + std::to_string(bend_angle_deg) +
                               " deg does not fit between pre-bend length and robot end");
        }
        double theta = std::min(remaining, theta_max);
        bends[static_cast<std::size_t>(j)].theta = theta;
        remaining -= theta;
    }
    GroundTruthShape shape = make_hinge_chain_shape(bends, geom, 1.0, std::max(0.0, rem));
    shape.description = desc + " (hinge-snapped)";
    return shape;
}

GroundTruthShape make_constant_curvature_shape(double kappa_per_cm, double length_cm) {
    if (kappa_per_cm < 0.0 || length_cm <= 0.0) {
        throw InvalidShape("curvature must be >= 0 and length > 0");
    }
    Pose base{Vec3{0.0, 0.0, 0.0}, quat_about(Vec3{0.0, 0.0, 1.0}, kPi / 2.0)};  // facing +y
    std::string desc = "constant curvature " + std::to_string(kappa_per_cm) + " /cm";
    if (kappa_per_cm == 0.0) {
        return make_shape(base, {PathPiece{length_cm, length_cm, 0.0, Vec3{0.0, 0.0, 1.0}}},
                          desc + " (straight)");
    }
    // Bending toward +x needs the turn about -z.
    return make_shape(
        base, {PathPiece{length_cm, length_cm, kappa_per_cm * length_cm, Vec3{0.0, 0.0, -1.0}}},
        desc);
}

GroundTruthShape make_hinge_arc_shape(double kappa_per_cm, double length_cm,
                                      const RobotGeometry& geom, double radius_scale) {
    if (kappa_per_cm < 0.0 || length_cm <= 0.0) {
        throw InvalidShape("curvature must be >= 0 and length > 0");
    }
    double s = geom.spacing_s_cm;
    // Outer-wall material bound at the bend radius radius_scale * d/2: the
    // wall sits d/2 above the arc, so a span of wall s allows at most
    // 2s / ((radius_scale + 1) d) of turn. radius_scale 1 recovers s/d.
    double theta_cap = 2.0 * s / ((radius_scale + 1.0) * geom.diameter_d_cm);
    double theta = std::min(kappa_per_cm * s, theta_cap);
    int n_spans = static_cast<int>(std::floor(length_cm / s + kGeomTol));
    double rem = length_cm - n_spans * s;
    std::vector<HingeBend> bends(static_cast<std::size_t>(n_spans),
                                 HingeBend{theta, Vec3{0.0, 0.0, 1.0}});
    GroundTruthShape shape = make_hinge_chain_shape(bends, geom, radius_scale, std::max(0.0, rem));
    shape.description = "hinge arc kappa " + std::to_string(kappa_per_cm) + " /cm, radius scale " +
                        std::to_string(radius_scale);
    return shape;
}

GroundTruthShape make_grown_shape(const GroundTruthShape& base_shape, double grown_length_cm) {
    if (grown_length_cm <= 0.0 ||
        grown_length_cm > base_shape.material_length_cm + kGeomTol) {
        throw InvalidShape("grown length " + std::to_string(grown_length_cm) +
                           " outside (0, " + std::to_string(base_shape.material_length_cm) + "]");
    }
    double material = std::min(grown_length_cm, base_shape.material_length_cm);
    std::vector<PathPiece> clipped;
    double acc = 0.0;
    for (const PathPiece& p : base_shape.pieces) {
        if (material - acc >= p.material_cm - 1e-12) {
            clipped.push_back(p);
            acc += p.material_cm;
            continue;
        }
        double f = (material - acc) / p.material_cm;
        if (f > 0.0) {
            clipped.push_back(PathPiece{p.len_cm * f, p.material_cm * f, p.turn_rad * f, p.axis});
        }
        acc = material;
        break;
    }
    Pose base =
        base_shape.piece_starts.empty() ? Pose{} : base_shape.piece_starts.front();
    GroundTruthShape shape = make_shape(base, std::move(clipped),
                                        base_shape.description + " grown to " +
                                            std::to_string(grown_length_cm) + " cm");
    return shape;
}

std::vector<ImuSample> sample_ideal_imu_frames(const GroundTruthShape& shape,
                                               const RobotGeometry& geom) {
    double s = geom.spacing_s_cm;
    int fit = static_cast<int>(std::floor(shape.material_length_cm / s + kGeomTol)) + 1;
    int count = std::min(geom.num_imus, fit);
    std::vector<ImuSample> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        double len = shape.centerline_at_material(i * s);
        Pose pose = shape.at(len);
        out.push_back(ImuSample{0.0, i, pose.orientation});
    }
    return out;
}

CorruptedTrial corrupt_samples(const std::vector<ImuSample>& ideal, const TrialConfig& cfg) {
    std::vector<SensorDrift> sensors =
        sample_sensor_rates(cfg.drift, static_cast<int>(ideal.size()));
    Quat base_q = cfg.shape.at(0.0).orientation;
    std::uint64_t trial_base = derive_stream(cfg.drift.seed, "trial", cfg.trial_seed);
    CorruptedTrial out;
    out.snapshot.reserve(ideal.size());
    out.measured.reserve(ideal.size());
    for (std::size_t i = 0; i < ideal.size(); ++i) {
        const SensorDrift& sd = sensors[i];
        RngStream snap_rng(derive_stream(trial_base, "snap", i));
        out.snapshot.push_back(ImuSample{
            0.0, static_cast<int>(i),
            apply_drift(base_q, sd.rate_deg_min, sd.axis, 0.0, cfg.drift.noise_std_deg, snap_rng,
                        cfg.drift.random_walk)});
        RngStream meas_rng(derive_stream(trial_base, "meas", i));
        out.measured.push_back(ImuSample{
            cfg.offset_age_s + ideal[i].time_s, ideal[i].imu_index,
            apply_drift(ideal[i].orientation, sd.rate_deg_min, sd.axis, cfg.offset_age_s,
                        cfg.drift.noise_std_deg, meas_rng, cfg.drift.random_walk)});
    }
    return out;
}

}  // namespace vinesense
