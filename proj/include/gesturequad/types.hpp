#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace gq {

using TimestampMs = std::int64_t;

/// Normalized image-space keypoint. x grows rightward, y grows downward.
struct Landmark {
    double x = 0.0;
    double y = 0.0;
    std::optional<double> z;
    double visibility = 1.0;

    bool operator==(const Landmark&) const = default;
};

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Point2&) const = default;
};

inline Point2 xy(const Landmark& lm) { return {lm.x, lm.y}; }

/// Body landmark indices. This table is a protocol constant: producers must
/// send the 33 points in exactly this order (the MediaPipe Pose topology).
enum class BodyLandmark : std::uint8_t {
    Nose = 0,
    LeftEyeInner = 1,
    LeftEye = 2,
    LeftEyeOuter = 3,
    RightEyeInner = 4,
    RightEye = 5,
    RightEyeOuter = 6,
    LeftEar = 7,
    RightEar = 8,
    MouthLeft = 9,
    MouthRight = 10,
    LeftShoulder = 11,
    RightShoulder = 12,
    LeftElbow = 13,
    RightElbow = 14,
    LeftWrist = 15,
    RightWrist = 16,
    LeftPinky = 17,
    RightPinky = 18,
    LeftIndex = 19,
    RightIndex = 20,
    LeftThumb = 21,
    RightThumb = 22,
    LeftHip = 23,
    RightHip = 24,
    LeftKnee = 25,
    RightKnee = 26,
    LeftAnkle = 27,
    RightAnkle = 28,
    LeftHeel = 29,
    RightHeel = 30,
    LeftFootIndex = 31,
    RightFootIndex = 32,
};

inline constexpr std::size_t kBodyLandmarkCount = 33;
inline constexpr std::size_t kHandLandmarkCount = 21;

/// Index of the landmark that carries the opposite side's name (identity for
/// midline points such as the nose).
BodyLandmark mirror_partner(BodyLandmark lm);

struct BodyFrame {
    TimestampMs timestamp_ms = 0;
    std::array<Landmark, kBodyLandmarkCount> landmarks{};
    bool mirrored = false;

    const Landmark& at(BodyLandmark idx) const { return landmarks[static_cast<std::size_t>(idx)]; }
    Landmark& at(BodyLandmark idx) { return landmarks[static_cast<std::size_t>(idx)]; }

    const Landmark& nose() const { return at(BodyLandmark::Nose); }
    const Landmark& left_shoulder() const { return at(BodyLandmark::LeftShoulder); }
    const Landmark& right_shoulder() const { return at(BodyLandmark::RightShoulder); }
    const Landmark& left_elbow() const { return at(BodyLandmark::LeftElbow); }
    const Landmark& right_elbow() const { return at(BodyLandmark::RightElbow); }
    const Landmark& left_wrist() const { return at(BodyLandmark::LeftWrist); }
    const Landmark& right_wrist() const { return at(BodyLandmark::RightWrist); }
    const Landmark& left_hip() const { return at(BodyLandmark::LeftHip); }
    const Landmark& right_hip() const { return at(BodyLandmark::RightHip); }
    const Landmark& left_knee() const { return at(BodyLandmark::LeftKnee); }
    const Landmark& right_knee() const { return at(BodyLandmark::RightKnee); }
    const Landmark& left_ankle() const { return at(BodyLandmark::LeftAnkle); }
    const Landmark& right_ankle() const { return at(BodyLandmark::RightAnkle); }

    bool operator==(const BodyFrame&) const = default;
};

enum class Handedness : std::uint8_t { Left, Right };

enum class Finger : std::uint8_t { Thumb, Index, Middle, Ring, Pinky };

inline constexpr std::array<Finger, 5> kAllFingers{Finger::Thumb, Finger::Index, Finger::Middle,
                                                   Finger::Ring, Finger::Pinky};

/// Per-finger joints, base to tip. For the thumb these are CMC, MCP, IP, TIP;
/// for the other fingers MCP, PIP, DIP, TIP.
struct FingerJoints {
    std::uint8_t base;
    std::uint8_t middle;  // PIP (thumb: MCP)
    std::uint8_t distal;  // DIP (thumb: IP)
    std::uint8_t tip;
};

inline constexpr std::uint8_t kWrist = 0;

/// Hand landmark topology (MediaPipe Hands order).
constexpr FingerJoints finger_joints(Finger f) {
    switch (f) {
        case Finger::Thumb: return {1, 2, 3, 4};
        case Finger::Index: return {5, 6, 7, 8};
        case Finger::Middle: return {9, 10, 11, 12};
        case Finger::Ring: return {13, 14, 15, 16};
        case Finger::Pinky: return {17, 18, 19, 20};
    }
    return {0, 0, 0, 0};
}

struct HandFrame {
    TimestampMs timestamp_ms = 0;
    std::array<Landmark, kHandLandmarkCount> landmarks{};
    Handedness handedness = Handedness::Right;
    bool mirrored = false;

    const Landmark& wrist() const { return landmarks[kWrist]; }
    const Landmark& mcp(Finger f) const { return landmarks[finger_joints(f).base]; }
    const Landmark& pip(Finger f) const { return landmarks[finger_joints(f).middle]; }
    const Landmark& dip(Finger f) const { return landmarks[finger_joints(f).distal]; }
    const Landmark& tip(Finger f) const { return landmarks[finger_joints(f).tip]; }
    // Thumb-specific names for the same slots.
    const Landmark& thumb_cmc() const { return landmarks[1]; }
    const Landmark& thumb_mcp() const { return landmarks[2]; }
    const Landmark& thumb_ip() const { return landmarks[3]; }
    const Landmark& thumb_tip() const { return landmarks[4]; }

    bool operator==(const HandFrame&) const = default;
};

enum class GestureKind : std::uint8_t { Body, Hand };

enum class GestureName : std::uint8_t {
    Neutral,
    // body vocabulary
    HandsOnHips,
    HandsOnHead,
    LeftArmBent,
    RightArmBent,
    LeftArmOut,
    RightArmOut,
    TPose,
    ArmsElevated,
    BothArmsBent,
    // hand vocabulary
    PointUp,
    PalmOut,
    PointLeft,
    PointRight,
    SidewaysLeft,
    SidewaysRight,
    FistLeft,
    FistRight,
    Fist,
};

inline constexpr std::array<GestureName, 9> kBodyGestures{
    GestureName::HandsOnHips, GestureName::HandsOnHead, GestureName::LeftArmBent,
    GestureName::RightArmBent, GestureName::LeftArmOut, GestureName::RightArmOut,
    GestureName::TPose, GestureName::ArmsElevated, GestureName::BothArmsBent};

inline constexpr std::array<GestureName, 9> kHandGestures{
    GestureName::PointUp, GestureName::PalmOut, GestureName::PointLeft,
    GestureName::PointRight, GestureName::SidewaysLeft, GestureName::SidewaysRight,
    GestureName::FistLeft, GestureName::FistRight, GestureName::Fist};

/// Kind the name belongs to; nullopt for Neutral, which is valid for both.
std::optional<GestureKind> vocabulary_of(GestureName name);

struct Gesture {
    GestureKind kind = GestureKind::Body;
    GestureName name = GestureName::Neutral;

    /// Throws InvalidArgument when name is outside kind's vocabulary.
    static Gesture make(GestureKind kind, GestureName name);
    static Gesture neutral(GestureKind kind) { return {kind, GestureName::Neutral}; }

    bool is_neutral() const { return name == GestureName::Neutral; }
    bool operator==(const Gesture&) const = default;
};

enum class RobotCommand : std::uint8_t {
    GoForward,
    GoBackward,
    RotateCCW,
    RotateCW,
    StrafeLeft,
    StrafeRight,
    LayDown,
    StandUp,
    TurnAround,
};

inline constexpr std::array<RobotCommand, 9> kAllCommands{
    RobotCommand::GoForward, RobotCommand::GoBackward, RobotCommand::RotateCCW,
    RobotCommand::RotateCW,  RobotCommand::StrafeLeft, RobotCommand::StrafeRight,
    RobotCommand::LayDown,   RobotCommand::StandUp,    RobotCommand::TurnAround};

/// Action table: each row pairs one hand and one body gesture with an action.
std::optional<RobotCommand> map_gesture_to_command(Gesture g);

/// Inverse lookup within one kind.
GestureName gesture_for_command(GestureKind kind, RobotCommand cmd);

std::string_view to_string(GestureKind kind);
std::string_view to_string(GestureName name);
std::string_view to_string(RobotCommand cmd);
std::string_view to_string(Handedness h);

std::optional<GestureKind> parse_gesture_kind(std::string_view s);
std::optional<GestureName> parse_gesture_name(std::string_view s);
std::optional<RobotCommand> parse_robot_command(std::string_view s);
std::optional<Handedness> parse_handedness(std::string_view s);

/// Reflect a mirrored frame into the canonical egocentric frame: x -> 1 - x,
/// left/right names swapped, mirrored cleared. Identity on canonical frames.
BodyFrame unmirror(const BodyFrame& frame);
HandFrame unmirror(const HandFrame& frame);

/// Inverse of unmirror; used by fixtures to simulate a reflected capture.
BodyFrame mirror(const BodyFrame& frame);
HandFrame mirror(const HandFrame& frame);

}  // namespace gq
