#include "gesturequad/synthetic.hpp"

#include <cmath>
#include <numbers>

namespace gq::synth {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

struct Vec {
    double x;
    double y;
};

Vec operator+(Vec a, Vec b) { return {a.x + b.x, a.y + b.y}; }
Vec operator*(double s, Vec a) { return {s * a.x, s * a.y}; }

void put(BodyFrame& f, BodyLandmark idx, Vec p, double vis) {
    Landmark& lm = f.at(idx);
    lm.x = p.x;
    lm.y = p.y;
    lm.z = 0.0;
    lm.visibility = vis;
}

// sin/cos with exact zeros at multiples of 90 degrees, so axis-aligned limbs
// stay exactly axis-aligned.
double sin_deg(double deg) {
    const double v = std::sin(deg * kDeg);
    return std::abs(v) < 1e-12 ? 0.0 : v;
}

double cos_deg(double deg) {
    const double v = std::cos(deg * kDeg);
    return std::abs(v) < 1e-12 ? 0.0 : v;
}

/// Unit vector rotated phi degrees from straight down toward `outward_sign` x.
Vec arm_direction(double phi_deg, double outward_sign) {
    return {outward_sign * sin_deg(phi_deg), cos_deg(phi_deg)};
}

}  // namespace

SkeletonPose canonical_pose(GestureName g) {
    const ArmPose rest{10.0, 0.0};
    const ArmPose out{90.0, 0.0};
    const ArmPose bent{90.0, 90.0};
    switch (g) {
        case GestureName::HandsOnHips: return {{45.0, -90.0}, {45.0, -90.0}};
        case GestureName::HandsOnHead: return {{135.0, 90.0}, {135.0, 90.0}};
        case GestureName::LeftArmBent: return {bent, rest};
        case GestureName::RightArmBent: return {rest, bent};
        case GestureName::LeftArmOut: return {out, rest};
        case GestureName::RightArmOut: return {rest, out};
        case GestureName::TPose: return {out, out};
        case GestureName::ArmsElevated: return {{160.0, 0.0}, {160.0, 0.0}};
        case GestureName::BothArmsBent: return {bent, bent};
        default: return {rest, rest};
    }
}

BodyFrame make_body_frame(const SkeletonPose& pose, TimestampMs t, const SkeletonGeometry& g) {
    using L = BodyLandmark;
    BodyFrame f;
    f.timestamp_ms = t;
    f.mirrored = false;
    const double v = g.visibility;
    const double cx = g.center_x;
    const double head_y = g.shoulder_y - 0.12;

    put(f, L::Nose, {cx, head_y}, v);
    put(f, L::LeftEyeInner, {cx - 0.012, head_y - 0.015}, v);
    put(f, L::LeftEye, {cx - 0.020, head_y - 0.016}, v);
    put(f, L::LeftEyeOuter, {cx - 0.028, head_y - 0.015}, v);
    put(f, L::RightEyeInner, {cx + 0.012, head_y - 0.015}, v);
    put(f, L::RightEye, {cx + 0.020, head_y - 0.016}, v);
    put(f, L::RightEyeOuter, {cx + 0.028, head_y - 0.015}, v);
    put(f, L::LeftEar, {cx - 0.042, head_y - 0.005}, v);
    put(f, L::RightEar, {cx + 0.042, head_y - 0.005}, v);
    put(f, L::MouthLeft, {cx - 0.015, head_y + 0.022}, v);
    put(f, L::MouthRight, {cx + 0.015, head_y + 0.022}, v);

    struct Side {
        double sign;  // outward direction in x
        const ArmPose* arm;
        L shoulder, elbow, wrist, pinky, index, thumb, hip, knee, ankle, heel, foot;
    };
    const Side sides[2] = {
        {-1.0, &pose.left, L::LeftShoulder, L::LeftElbow, L::LeftWrist, L::LeftPinky, L::LeftIndex,
         L::LeftThumb, L::LeftHip, L::LeftKnee, L::LeftAnkle, L::LeftHeel, L::LeftFootIndex},
        {+1.0, &pose.right, L::RightShoulder, L::RightElbow, L::RightWrist, L::RightPinky,
         L::RightIndex, L::RightThumb, L::RightHip, L::RightKnee, L::RightAnkle, L::RightHeel,
         L::RightFootIndex},
    };
    for (const auto& s : sides) {
        const Vec shoulder{cx + s.sign * g.shoulder_half_width, g.shoulder_y};
        const Vec upper = arm_direction(s.arm->abduction_deg, s.sign);
        const Vec fore = arm_direction(s.arm->abduction_deg + s.arm->elbow_bend_deg, s.sign);
        const Vec elbow = shoulder + g.upper_arm * upper;
        const Vec wrist = elbow + g.forearm * fore;
        const Vec across{-fore.y * s.sign, fore.x * s.sign};
        put(f, s.shoulder, shoulder, v);
        put(f, s.elbow, elbow, v);
        put(f, s.wrist, wrist, v);
        put(f, s.pinky, wrist + 0.035 * fore + (-0.012) * across, v);
        put(f, s.index, wrist + 0.040 * fore + 0.008 * across, v);
        put(f, s.thumb, wrist + 0.025 * fore + 0.020 * across, v);

        const Vec hip{cx + s.sign * g.hip_half_width, g.hip_y};
        const Vec knee{hip.x, g.knee_y};
        const Vec ankle{hip.x, g.ankle_y};
        put(f, s.hip, hip, v);
        put(f, s.knee, knee, v);
        put(f, s.ankle, ankle, v);
        put(f, s.heel, ankle + Vec{0.0, 0.012}, v);
        put(f, s.foot, ankle + Vec{s.sign * 0.02, 0.02}, v);
    }
    return f;
}

HandPose canonical_hand_pose(GestureName g) {
    using S = FingerShape;
    HandPose p;
    switch (g) {
        case GestureName::PointUp:
            p.index = S::Extended;
            break;
        case GestureName::PalmOut:
            p.thumb = p.index = p.middle = p.ring = p.pinky = S::Extended;
            break;
        case GestureName::PointLeft:
            p.palm_dir_deg = p.finger_dir_deg = -90.0;
            p.index = S::Extended;
            break;
        case GestureName::PointRight:
            p.palm_dir_deg = p.finger_dir_deg = 90.0;
            p.index = S::Extended;
            break;
        case GestureName::SidewaysLeft:
            p.palm_dir_deg = p.finger_dir_deg = -90.0;
            p.index = p.middle = p.ring = p.pinky = S::Extended;
            break;
        case GestureName::SidewaysRight:
            p.palm_dir_deg = p.finger_dir_deg = 90.0;
            p.index = p.middle = p.ring = p.pinky = S::Extended;
            break;
        case GestureName::FistLeft:
            p.palm_dir_deg = -90.0;
            break;
        case GestureName::FistRight:
            p.palm_dir_deg = 90.0;
            break;
        case GestureName::Fist:
            break;
        default:
            // "V" sign: index and middle up.
            p.index = p.middle = S::Extended;
            break;
    }
    return p;
}

HandFrame make_hand_frame(const HandPose& pose, Handedness handedness, TimestampMs t) {
    HandFrame f;
    f.timestamp_ms = t;
    f.handedness = handedness;
    f.mirrored = false;

    const double s = pose.scale;
    const Vec wrist{pose.wrist_x, pose.wrist_y};
    // up-relative angle convention: 0 = -y, +90 = +x
    const Vec u{sin_deg(pose.palm_dir_deg), -cos_deg(pose.palm_dir_deg)};
    const Vec d{sin_deg(pose.finger_dir_deg), -cos_deg(pose.finger_dir_deg)};
    // Thumb side of the palm. For a right hand held up with the palm facing
    // away from the user, the thumb is toward -x.
    const double side = handedness == Handedness::Right ? 1.0 : -1.0;
    const Vec p{side * u.y, -side * u.x};

    auto set = [&](std::uint8_t idx, Vec v) {
        Landmark& lm = f.landmarks[idx];
        lm.x = v.x;
        lm.y = v.y;
        lm.z = 0.0;
        lm.visibility = 1.0;
    };
    set(kWrist, wrist);

    struct Layout {
        Finger finger;
        double along;
        double across;
        FingerShape shape;
    };
    const Layout fingers[4] = {
        {Finger::Index, 0.090, 0.025, pose.index},
        {Finger::Middle, 0.095, 0.000, pose.middle},
        {Finger::Ring, 0.090, -0.022, pose.ring},
        {Finger::Pinky, 0.080, -0.042, pose.pinky},
    };
    for (const auto& l : fingers) {
        const auto j = finger_joints(l.finger);
        const Vec mcp = wrist + s * (l.along * u + l.across * p);
        set(j.base, mcp);
        if (l.shape == FingerShape::Extended) {
            const Vec pip = mcp + (0.040 * s) * d;
            const Vec dip = pip + (0.028 * s) * d;
            set(j.middle, pip);
            set(j.distal, dip);
            set(j.tip, dip + (0.024 * s) * d);
        } else {
            // Curled: PIP pokes out past the knuckle, the tip folds back
            // toward the palm center.
            const Vec pip = mcp + (0.030 * s) * u;
            const Vec dip = mcp + (0.010 * s) * u + (-0.015 * s) * u;
            set(j.middle, pip);
            set(j.distal, dip);
            set(j.tip, mcp + (-0.035 * s) * u);
        }
    }

    const auto th = finger_joints(Finger::Thumb);
    const Vec cmc = wrist + s * (0.025 * u + 0.030 * p);
    set(th.base, cmc);
    if (pose.thumb == FingerShape::Extended) {
        const Vec dir = 0.6 * u + 0.8 * p;
        const Vec mcp = cmc + (0.030 * s) * dir;
        const Vec ip = mcp + (0.028 * s) * dir;
        set(th.middle, mcp);
        set(th.distal, ip);
        set(th.tip, ip + (0.024 * s) * dir);
    } else {
        // Tucked across the palm.
        const Vec mcp = cmc + s * (0.025 * u + 0.015 * p);
        const Vec ip = mcp + s * (0.020 * u + 0.000 * p);
        set(th.middle, mcp);
        set(th.distal, ip);
        set(th.tip, wrist + s * (0.040 * u + 0.005 * p));
    }
    return f;
}

}  // namespace gq::synth
