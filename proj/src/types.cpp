#include "gesturequad/types.hpp"

#include "gesturequad/error.hpp"

#include <string>
#include <utility>

namespace gq {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::DegenerateVector: return "DegenerateVector";
        case ErrorCode::MissingKeypoint: return "MissingKeypoint";
        case ErrorCode::IllegalTransition: return "IllegalTransition";
        case ErrorCode::InvalidPosture: return "InvalidPosture";
        case ErrorCode::ClockRegression: return "ClockRegression";
        case ErrorCode::OrderViolation: return "OrderViolation";
        case ErrorCode::CorruptRecord: return "CorruptRecord";
        case ErrorCode::ProtocolViolation: return "ProtocolViolation";
        case ErrorCode::Busy: return "Busy";
        case ErrorCode::OutOfRangeAnswer: return "OutOfRangeAnswer";
        case ErrorCode::WrongItemCount: return "WrongItemCount";
        case ErrorCode::InsufficientData: return "InsufficientData";
        case ErrorCode::EmptyDataset: return "EmptyDataset";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

BodyLandmark mirror_partner(BodyLandmark lm) {
    const auto i = static_cast<std::uint8_t>(lm);
    if (i == 0) {
        return lm;
    }
    // Eyes occupy 1-3 / 4-6; every other pair from 7 upward alternates L, R.
    if (i <= 3) {
        return static_cast<BodyLandmark>(i + 3);
    }
    if (i <= 6) {
        return static_cast<BodyLandmark>(i - 3);
    }
    return static_cast<BodyLandmark>(i % 2 == 1 ? i + 1 : i - 1);
}

std::optional<GestureKind> vocabulary_of(GestureName name) {
    switch (name) {
        case GestureName::Neutral: return std::nullopt;
        case GestureName::HandsOnHips:
        case GestureName::HandsOnHead:
        case GestureName::LeftArmBent:
        case GestureName::RightArmBent:
        case GestureName::LeftArmOut:
        case GestureName::RightArmOut:
        case GestureName::TPose:
        case GestureName::ArmsElevated:
        case GestureName::BothArmsBent: return GestureKind::Body;
        default: return GestureKind::Hand;
    }
}

Gesture Gesture::make(GestureKind kind, GestureName name) {
    const auto vocab = vocabulary_of(name);
    if (vocab && *vocab != kind) {
        throw Error(ErrorCode::InvalidArgument, std::string("gesture ") + std::string(to_string(name)) +
                                                    " is not a " + std::string(to_string(kind)) +
                                                    " gesture");
    }
    return Gesture{kind, name};
}

namespace {

struct ActionRow {
    RobotCommand action;
    GestureName hand;
    GestureName body;
};

constexpr std::array<ActionRow, 9> kActionTable{{
    {RobotCommand::GoForward, GestureName::PointUp, GestureName::HandsOnHips},
    {RobotCommand::GoBackward, GestureName::PalmOut, GestureName::HandsOnHead},
    {RobotCommand::RotateCCW, GestureName::PointLeft, GestureName::LeftArmBent},
    {RobotCommand::RotateCW, GestureName::PointRight, GestureName::RightArmBent},
    {RobotCommand::StrafeLeft, GestureName::SidewaysLeft, GestureName::LeftArmOut},
    {RobotCommand::StrafeRight, GestureName::SidewaysRight, GestureName::RightArmOut},
    {RobotCommand::LayDown, GestureName::FistLeft, GestureName::TPose},
    {RobotCommand::StandUp, GestureName::FistRight, GestureName::ArmsElevated},
    {RobotCommand::TurnAround, GestureName::Fist, GestureName::BothArmsBent},
}};

}  // namespace

std::optional<RobotCommand> map_gesture_to_command(Gesture g) {
    if (g.is_neutral()) {
        return std::nullopt;
    }
    for (const auto& row : kActionTable) {
        const GestureName name = g.kind == GestureKind::Hand ? row.hand : row.body;
        if (name == g.name) {
            return row.action;
        }
    }
    return std::nullopt;
}

GestureName gesture_for_command(GestureKind kind, RobotCommand cmd) {
    for (const auto& row : kActionTable) {
        if (row.action == cmd) {
            return kind == GestureKind::Hand ? row.hand : row.body;
        }
    }
    return GestureName::Neutral;
}

std::string_view to_string(GestureKind kind) {
    return kind == GestureKind::Body ? "body" : "hand";
}

std::string_view to_string(GestureName name) {
    switch (name) {
        case GestureName::Neutral: return "Neutral";
        case GestureName::HandsOnHips: return "HandsOnHips";
        case GestureName::HandsOnHead: return "HandsOnHead";
        case GestureName::LeftArmBent: return "LeftArmBent";
        case GestureName::RightArmBent: return "RightArmBent";
        case GestureName::LeftArmOut: return "LeftArmOut";
        case GestureName::RightArmOut: return "RightArmOut";
        case GestureName::TPose: return "TPose";
        case GestureName::ArmsElevated: return "ArmsElevated";
        case GestureName::BothArmsBent: return "BothArmsBent";
        case GestureName::PointUp: return "PointUp";
        case GestureName::PalmOut: return "PalmOut";
        case GestureName::PointLeft: return "PointLeft";
        case GestureName::PointRight: return "PointRight";
        case GestureName::SidewaysLeft: return "SidewaysLeft";
        case GestureName::SidewaysRight: return "SidewaysRight";
        case GestureName::FistLeft: return "FistLeft";
        case GestureName::FistRight: return "FistRight";
        case GestureName::Fist: return "Fist";
    }
    return "Neutral";
}

std::string_view to_string(RobotCommand cmd) {
    switch (cmd) {
        case RobotCommand::GoForward: return "GoForward";
        case RobotCommand::GoBackward: return "GoBackward";
        case RobotCommand::RotateCCW: return "RotateCCW";
        case RobotCommand::RotateCW: return "RotateCW";
        case RobotCommand::StrafeLeft: return "StrafeLeft";
        case RobotCommand::StrafeRight: return "StrafeRight";
        case RobotCommand::LayDown: return "LayDown";
        case RobotCommand::StandUp: return "StandUp";
        case RobotCommand::TurnAround: return "TurnAround";
    }
    return "GoForward";
}

std::string_view to_string(Handedness h) {
    return h == Handedness::Left ? "left" : "right";
}

std::optional<GestureKind> parse_gesture_kind(std::string_view s) {
    if (s == "body") return GestureKind::Body;
    if (s == "hand") return GestureKind::Hand;
    return std::nullopt;
}

std::optional<GestureName> parse_gesture_name(std::string_view s) {
    for (auto i = 0; i <= static_cast<int>(GestureName::Fist); ++i) {
        const auto name = static_cast<GestureName>(i);
        if (to_string(name) == s) {
            return name;
        }
    }
    return std::nullopt;
}

std::optional<RobotCommand> parse_robot_command(std::string_view s) {
    for (auto cmd : kAllCommands) {
        if (to_string(cmd) == s) {
            return cmd;
        }
    }
    return std::nullopt;
}

std::optional<Handedness> parse_handedness(std::string_view s) {
    if (s == "left") return Handedness::Left;
    if (s == "right") return Handedness::Right;
    return std::nullopt;
}

namespace {

BodyFrame reflect(const BodyFrame& frame) {
    BodyFrame out = frame;
    for (std::size_t i = 0; i < kBodyLandmarkCount; ++i) {
        const auto partner = static_cast<std::size_t>(mirror_partner(static_cast<BodyLandmark>(i)));
        out.landmarks[partner] = frame.landmarks[i];
        out.landmarks[partner].x = 1.0 - frame.landmarks[i].x;
    }
    return out;
}

HandFrame reflect(const HandFrame& frame) {
    HandFrame out = frame;
    for (auto& lm : out.landmarks) {
        lm.x = 1.0 - lm.x;
    }
    out.handedness = frame.handedness == Handedness::Left ? Handedness::Right : Handedness::Left;
    return out;
}

}  // namespace

BodyFrame unmirror(const BodyFrame& frame) {
    if (!frame.mirrored) {
        return frame;
    }
    BodyFrame out = reflect(frame);
    out.mirrored = false;
    return out;
}

HandFrame unmirror(const HandFrame& frame) {
    if (!frame.mirrored) {
        return frame;
    }
    HandFrame out = reflect(frame);
    out.mirrored = false;
    return out;
}

BodyFrame mirror(const BodyFrame& frame) {
    if (frame.mirrored) {
        return frame;
    }
    BodyFrame out = reflect(frame);
    out.mirrored = true;
    return out;
}

HandFrame mirror(const HandFrame& frame) {
    if (frame.mirrored) {
        return frame;
    }
    HandFrame out = reflect(frame);
    out.mirrored = true;
    return out;
}

}  // namespace gq
