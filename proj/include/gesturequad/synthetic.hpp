#pragma once

// Synthetic stick-figure and hand generators. They produce canonical frames
// for every gesture in the vocabulary; the default body bounds are derived
// from them and the replay fixtures are scripted with them.

#include "gesturequad/types.hpp"

#include <random>

namespace gq::synth {

/// Articulation of one arm. abduction_deg rotates the upper arm from hanging
/// straight down toward the outside of the body (90 = horizontal, 180 =
/// straight overhead). elbow_bend_deg rotates the forearm further in the
/// same sense (positive bends the forearm up for a horizontal arm).
struct ArmPose {
    double abduction_deg = 10.0;
    double elbow_bend_deg = 0.0;
};

struct SkeletonPose {
    ArmPose left;
    ArmPose right;
};

/// Limb proportions in normalized image units, egocentric frame (the user's
/// left shoulder has the smaller x).
struct SkeletonGeometry {
    double center_x = 0.5;
    double shoulder_y = 0.32;
    double shoulder_half_width = 0.10;
    double hip_y = 0.62;
    double hip_half_width = 0.05;
    double knee_y = 0.80;
    double ankle_y = 0.97;
    double upper_arm = 0.15;
    double forearm = 0.14;
    double visibility = 0.99;
};

/// Canonical articulation for a body gesture; Neutral gives the rest pose
/// (arms hanging slightly away from the torso).
SkeletonPose canonical_pose(GestureName body_gesture);

BodyFrame make_body_frame(const SkeletonPose& pose, TimestampMs t = 0,
                          const SkeletonGeometry& geom = {});

inline BodyFrame canonical_body_frame(GestureName body_gesture, TimestampMs t = 0) {
    return make_body_frame(canonical_pose(body_gesture), t);
}

/// Displace every landmark's x and y by independent uniform noise in
/// [-amplitude, amplitude].
template <typename Frame, typename Rng>
Frame perturb(const Frame& frame, double amplitude, Rng& rng) {
    std::uniform_real_distribution<double> noise(-amplitude, amplitude);
    Frame out = frame;
    for (auto& lm : out.landmarks) {
        lm.x += noise(rng);
        lm.y += noise(rng);
    }
    return out;
}

enum class FingerShape : std::uint8_t { Extended, Folded };

/// Hand description: wrist position, palm direction (wrist -> middle MCP,
/// degrees with 0 = up and +90 = toward +x), and per-finger shape. Extended
/// fingers point along finger_dir_deg (same convention).
struct HandPose {
    double wrist_x = 0.5;
    double wrist_y = 0.6;
    double palm_dir_deg = 0.0;
    double finger_dir_deg = 0.0;
    FingerShape thumb = FingerShape::Folded;
    FingerShape index = FingerShape::Folded;
    FingerShape middle = FingerShape::Folded;
    FingerShape ring = FingerShape::Folded;
    FingerShape pinky = FingerShape::Folded;
    double scale = 1.0;
};

/// Canonical hand shape for a hand gesture; Neutral gives a two-finger
/// "V" that matches no predicate.
HandPose canonical_hand_pose(GestureName hand_gesture);

HandFrame make_hand_frame(const HandPose& pose, Handedness handedness = Handedness::Right,
                          TimestampMs t = 0);

inline HandFrame canonical_hand_frame(GestureName hand_gesture, TimestampMs t = 0) {
    return make_hand_frame(canonical_hand_pose(hand_gesture), Handedness::Right, t);
}

}  // namespace gq::synth
