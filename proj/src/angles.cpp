#include "gesturequad/angles.hpp"

#include "gesturequad/error.hpp"

#include <cmath>
#include <numbers>

namespace gq {

std::string_view to_string(JointAngle a) {
    switch (a) {
        case JointAngle::LeftShoulder: return "left_shoulder";
        case JointAngle::RightShoulder: return "right_shoulder";
        case JointAngle::LeftElbow: return "left_elbow";
        case JointAngle::RightElbow: return "right_elbow";
        case JointAngle::LeftHip: return "left_hip";
        case JointAngle::RightHip: return "right_hip";
        case JointAngle::LeftKnee: return "left_knee";
        case JointAngle::RightKnee: return "right_knee";
    }
    return "left_shoulder";
}

std::optional<JointAngle> parse_joint_angle(std::string_view s) {
    for (auto a : kAllJointAngles) {
        if (to_string(a) == s) {
            return a;
        }
    }
    return std::nullopt;
}

AngleOperands angle_operands(JointAngle a) {
    using L = BodyLandmark;
    switch (a) {
        case JointAngle::LeftShoulder: return {L::LeftShoulder, L::LeftElbow, L::LeftHip};
        case JointAngle::RightShoulder: return {L::RightShoulder, L::RightElbow, L::RightHip};
        case JointAngle::LeftElbow: return {L::LeftElbow, L::LeftShoulder, L::LeftWrist};
        case JointAngle::RightElbow: return {L::RightElbow, L::RightShoulder, L::RightWrist};
        case JointAngle::LeftHip: return {L::LeftHip, L::LeftShoulder, L::LeftKnee};
        case JointAngle::RightHip: return {L::RightHip, L::RightShoulder, L::RightKnee};
        case JointAngle::LeftKnee: return {L::LeftKnee, L::LeftHip, L::LeftAnkle};
        case JointAngle::RightKnee: return {L::RightKnee, L::RightHip, L::RightAnkle};
    }
    return {L::LeftShoulder, L::LeftElbow, L::LeftHip};
}

double normalize_degrees(double deg) {
    double r = std::fmod(deg, 360.0);
    if (r < 0.0) {
        r += 360.0;
    }
    // fmod of a tiny negative plus 360 can round up to exactly 360.
    if (r >= 360.0) {
        r = 0.0;
    }
    return r;
}

double joint_angle(Point2 vertex, Point2 p1, Point2 p2) {
    const double ax = p1.x - vertex.x;
    const double ay = p1.y - vertex.y;
    const double bx = p2.x - vertex.x;
    const double by = p2.y - vertex.y;
    if ((ax == 0.0 && ay == 0.0) || (bx == 0.0 && by == 0.0)) {
        throw Error(ErrorCode::DegenerateVector, "joint_angle: zero-length arm vector");
    }
    const double cross = ax * by - ay * bx;
    const double dot = ax * bx + ay * by;
    return normalize_degrees(std::atan2(cross, dot) * 180.0 / std::numbers::pi);
}

AngleVector compute_angles(const BodyFrame& frame, double vis_threshold) {
    AngleVector out;
    for (auto a : kAllJointAngles) {
        const auto ops = angle_operands(a);
        const Landmark& v = frame.at(ops.vertex);
        const Landmark& p1 = frame.at(ops.from);
        const Landmark& p2 = frame.at(ops.to);
        if (v.visibility < vis_threshold || p1.visibility < vis_threshold ||
            p2.visibility < vis_threshold) {
            continue;
        }
        try {
            out.set(a, joint_angle(xy(v), xy(p1), xy(p2)));
        } catch (const Error&) {
            // degenerate: leave unavailable
        }
    }
    return out;
}

}  // namespace gq
