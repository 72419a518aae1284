#pragma once

#include "gesturequad/types.hpp"

#include <optional>
#include <string_view>

namespace gq {

/// Robot body footprint (length, width, height) in meters.
inline constexpr double kRobotLength = 0.588;
inline constexpr double kRobotWidth = 0.22;
inline constexpr double kRobotHeight = 0.29;

enum class Posture : std::uint8_t { Standing, Lying };

std::string_view to_string(Posture p);
std::optional<Posture> parse_posture(std::string_view s);

struct Pose2 {
    double x = 0.0;
    double y = 0.0;
    double heading_deg = 0.0;

    bool operator==(const Pose2&) const = default;
};

struct MotionProfile {
    double step_distance = 0.5;
    double strafe_distance = 0.3;
    double rotate_angle_deg = 30.0;
    double motion_duration_s = 1.5;
    double posture_duration_s = 1.0;
    bool auto_face_user = false;
    /// World point the robot turns to face when auto_face_user is set.
    Point2 user_anchor{-1.0, 0.0};

    bool operator==(const MotionProfile&) const = default;
};

/// Throws InvalidConfig on non-positive magnitudes or a rotate angle
/// outside (0, 180].
void validate(const MotionProfile& profile);

struct Arena {
    double min_x = -2.0;
    double max_x = 8.0;
    double min_y = -3.0;
    double max_y = 3.0;

    bool operator==(const Arena&) const = default;
};

/// An in-flight motion: linear interpolation from `from` to `to` over
/// duration_ms. `facing` marks the automatic turn toward the user that
/// follows a command when auto_face_user is enabled.
struct Motion {
    RobotCommand command = RobotCommand::GoForward;
    double progress = 0.0;
    Pose2 from;
    Pose2 to;
    double heading_delta_deg = 0.0;
    std::int64_t elapsed_ms = 0;
    std::int64_t duration_ms = 0;
    bool facing = false;
    std::optional<Posture> posture_after;

    bool operator==(const Motion&) const = default;
};

struct RobotState {
    double x = 0.0;
    double y = 0.0;
    double heading_deg = 0.0;
    Posture posture = Posture::Standing;
    std::optional<Motion> motion;

    Pose2 pose() const { return {x, y, heading_deg}; }
    bool idle() const { return !motion.has_value(); }
    bool operator==(const RobotState&) const = default;
};

/// Terminal state of executing `cmd` from an idle state. Throws
/// InvalidPosture when the posture forbids the command (locomotion while
/// lying, LayDown while lying, StandUp while standing) and
/// IllegalTransition when a motion is already running.
RobotState apply(const RobotState& state, RobotCommand cmd, const MotionProfile& profile,
                 const Arena& arena = {});

/// Start `cmd` as a timed motion toward apply()'s terminal pose. Same errors
/// as apply().
RobotState begin(const RobotState& state, RobotCommand cmd, const MotionProfile& profile,
                 const Arena& arena = {});

struct TickResult {
    RobotState state;
    /// The command finished (including any automatic facing turn) during
    /// this tick; the pipeline should be told the motion is complete.
    bool completed = false;
    /// Part of dt left unused because a motion segment ended inside the
    /// tick. Callers that need event-exact timing feed it back into tick().
    std::int64_t leftover_ms = 0;
};

/// Advance the running motion by dt_ms. Idle states are returned unchanged.
TickResult tick(const RobotState& state, std::int64_t dt_ms, const MotionProfile& profile);

/// Duration in ms that `cmd` takes under `profile` (without facing turn).
std::int64_t command_duration_ms(RobotCommand cmd, const MotionProfile& profile);

}  // namespace gq
