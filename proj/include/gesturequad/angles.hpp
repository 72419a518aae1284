#pragma once

#include "gesturequad/types.hpp"

#include <array>
#include <optional>
#include <string_view>

namespace gq {

enum class JointAngle : std::uint8_t {
    LeftShoulder,
    RightShoulder,
    LeftElbow,
    RightElbow,
    LeftHip,
    RightHip,
    LeftKnee,
    RightKnee,
};

inline constexpr std::size_t kJointAngleCount = 8;

inline constexpr std::array<JointAngle, kJointAngleCount> kAllJointAngles{
    JointAngle::LeftShoulder, JointAngle::RightShoulder, JointAngle::LeftElbow,
    JointAngle::RightElbow,   JointAngle::LeftHip,       JointAngle::RightHip,
    JointAngle::LeftKnee,     JointAngle::RightKnee};

std::string_view to_string(JointAngle a);
std::optional<JointAngle> parse_joint_angle(std::string_view s);

/// The three landmarks an angle is measured on: the vertex and the two arm
/// endpoints, measured from `from` to `to`.
struct AngleOperands {
    BodyLandmark vertex;
    BodyLandmark from;
    BodyLandmark to;
};

AngleOperands angle_operands(JointAngle a);

/// Eight joint angles in degrees, [0, 360). Unavailable entries hold nullopt.
class AngleVector {
public:
    std::optional<double> get(JointAngle a) const { return values_[index(a)]; }
    void set(JointAngle a, std::optional<double> deg) { values_[index(a)] = deg; }
    bool available(JointAngle a) const { return values_[index(a)].has_value(); }

    bool operator==(const AngleVector&) const = default;

private:
    static std::size_t index(JointAngle a) { return static_cast<std::size_t>(a); }

    std::array<std::optional<double>, kJointAngleCount> values_{};
};

/// Wrap any finite angle into [0, 360).
double normalize_degrees(double deg);

/// Counterclockwise angle (in the plane exactly as given) from vertex->p1 to
/// vertex->p2, in [0, 360). Throws DegenerateVector on a zero-length arm.
double joint_angle(Point2 vertex, Point2 p1, Point2 p2);

inline constexpr double kDefaultVisibilityThreshold = 0.5;

/// Per-side shoulder/elbow/hip/knee angles. An angle is unavailable when any
/// operand's visibility is below vis_threshold or an arm is degenerate.
/// z is ignored.
AngleVector compute_angles(const BodyFrame& frame,
                           double vis_threshold = kDefaultVisibilityThreshold);

}  // namespace gq
