#pragma once

#include "gesturequad/course.hpp"
#include "gesturequad/pipeline.hpp"
#include "gesturequad/sim.hpp"
#include "gesturequad/types.hpp"

#include <string>
#include <variant>

namespace gq {

struct GestureEvent {
    TimestampMs timestamp_ms = 0;
    Gesture gesture;

    bool operator==(const GestureEvent&) const = default;
};

struct RobotStateEvent {
    TimestampMs timestamp_ms = 0;
    RobotState state;

    bool operator==(const RobotStateEvent&) const = default;
};

struct CourseStatusEvent {
    TimestampMs timestamp_ms = 0;
    CourseStatus status;

    bool operator==(const CourseStatusEvent&) const = default;
};

using SessionEvent =
    std::variant<BodyFrame, HandFrame, GestureEvent, CommandEvent, RobotStateEvent, CourseStatusEvent>;

TimestampMs timestamp_of(const SessionEvent& e);

struct SessionHeader {
    std::string session_id;
    GestureKind mode = GestureKind::Body;
    std::string config_hash;
    std::string created_at;

    bool operator==(const SessionHeader&) const = default;
};

/// Latest view of a live session as pushed to observers.
struct Snapshot {
    TimestampMs timestamp_ms = 0;
    RobotState robot;
    Gesture gesture;
    Phase phase = Phase::Idle;
    TimestampMs cooldown_ms = 0;
    CourseStatus course;

    bool operator==(const Snapshot&) const = default;
};

}  // namespace gq
