#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vinesense/calibration.hpp"
#include "vinesense/geometry.hpp"
#include "vinesense/reconstruction.hpp"

namespace vinesense {

// One constant-curvature (or straight) stretch of ground-truth centerline.
// len_cm is centerline arc length (the evaluator's domain); material_cm is the
// robot-wall length the piece accounts for. The two differ only inside
// hinge-span arcs, where the sensors ride the outer wall (material theta * d)
// while the centerline arc measures theta * radius.
struct PathPiece {
    double len_cm = 0.0;
    double material_cm = 0.0;
    double turn_rad = 0.0;     // 0 -> straight piece
    Vec3 axis{0.0, 0.0, 1.0};  // bend axis in the frame at piece start
};

// Parametric ground-truth centerline. Evaluated by centerline arc length at
// unit speed; frames are parallel-transported (twist-free) with body +x the
// tangent, so the pose at any station is exactly what an ideal IMU would read.
struct GroundTruthShape {
    std::vector<PathPiece> pieces;
    std::vector<Pose> piece_starts;   // size pieces.size() + 1; last entry is the end pose
    double total_length_cm = 0.0;     // centerline length
    double material_length_cm = 0.0;  // robot length; equals total_length_cm for pure curves
    std::string description;

    // Clamped to [0, total_length_cm].
    Pose at(double arc_len_cm) const;

    // Centerline arc length of the point `material_cm` of robot wall from the
    // base. Identity for pure curves; linear within each piece.
    double centerline_at_material(double material_cm) const;
};

// Precomputes piece-start poses and lengths; zero-extent pieces are dropped.
GroundTruthShape make_shape(Pose base, std::vector<PathPiece> pieces, std::string description);

// One bend of a hinge-span chain: the span turns by theta about `axis` (unit,
// expressed in the span-base frame, expected perpendicular to the tangent).
struct HingeBend {
    double theta = 0.0;
    Vec3 axis{0.0, 0.0, 1.0};
};

// Chain of inter-IMU spans, each straight/arc/straight with the arc midway:
// exactly the geometry the reconstruction model assumes when radius_scale is
// 1. Each span carries material spacing_s_cm, so IMU stations land on span
// boundaries. radius_scale sigma bends the centerline arc at radius
// sigma * d/2 (same theta, same straights, same material): a synthetic
// model-mismatch probe, not a physical claim. theta must be in [0, s/d].
// Base: origin facing +x. An optional trailing straight extends the robot.
GroundTruthShape make_hinge_chain_shape(const std::vector<HingeBend>& bends,
                                        const RobotGeometry& geom, double radius_scale = 1.0,
                                        double trailing_straight_cm = 0.0);

// Plank-bend protocol: straight pre_length, one arc turning bend_angle_deg at
// bend_radius_cm, straight remainder, total robot length total_length_cm.
// Base: origin facing +x, bending toward +y.
// When bend_radius_cm == d/2 (within 1e-9) the prescribed bend is snapped to
// the hinge-representable realization instead of the literal curve: the turn
// is distributed over consecutive spans starting at the first IMU station at
// or past pre_length, each span bending at most s/d at its midpoint. The
// literal single-arc curve places the bend at an arbitrary material offset and
// is not exactly representable even at radius d/2; snapping keeps zero-noise
// trials exact so sensor error and model error stay separable. Any other
// radius builds the literal geometric curve.
GroundTruthShape make_passive_bend_shape(double pre_length_cm, double bend_angle_deg,
                                         double bend_radius_cm, double total_length_cm,
                                         const RobotGeometry& geom = RobotGeometry{});

// Planar arc of constant curvature (straight when kappa == 0).
// Base: origin facing +y, bending toward +x, so kappa = 0.01 over a quarter
// circle ends at (100, 100, 0).
GroundTruthShape make_constant_curvature_shape(double kappa_per_cm, double length_cm);

// Constant commanded curvature realized by hinge spans: every span bends by
// min(kappa * s, s/d) at radius radius_scale * d/2. radius_scale == 1 is
// exactly model-representable; other scales probe calibrated radius mismatch.
GroundTruthShape make_hinge_arc_shape(double kappa_per_cm, double length_cm,
                                      const RobotGeometry& geom, double radius_scale = 1.0);

// Truncation of base_shape to grown_length_cm of robot (material) length.
GroundTruthShape make_grown_shape(const GroundTruthShape& base_shape, double grown_length_cm);

struct TrialConfig {
    RobotGeometry geometry;
    DriftModel drift;
    double offset_age_s = 0.0;  // time between offsetting and measurement
    GroundTruthShape shape;
    std::uint64_t trial_seed = 0;
};

// IMU i sits at material arc length i * spacing_s_cm; the number placed is
// min(num_imus, floor(material_length / spacing_s) + 1). Orientations are the
// shape frames at those stations; all times are 0.
std::vector<ImuSample> sample_ideal_imu_frames(const GroundTruthShape& shape,
                                               const RobotGeometry& geom);

struct CorruptedTrial {
    std::vector<ImuSample> snapshot;  // straight configuration, noise only (drift elapsed 0)
    std::vector<ImuSample> measured;  // trial shape, drifted over offset_age_s plus noise
};

// Applies the drift model to one trial. Sensor rates and axes come from
// model.seed alone (the same physical sensors persist across trials); noise
// realizations are derived per (model.seed, trial_seed, sensor, purpose), so
// results are independent of evaluation order. The snapshot uses the shape's
// base orientation for every sensor (robot held straight at offset time).
CorruptedTrial corrupt_samples(const std::vector<ImuSample>& ideal, const TrialConfig& cfg);

}  // namespace vinesense
