#pragma once

#include "gesturequad/gesture_config.hpp"
#include "gesturequad/types.hpp"

#include <optional>
#include <string_view>

namespace gq {

enum class Phase : std::uint8_t { Idle, Executing, Cooldown };

std::string_view to_string(Phase p);

struct CommandEvent {
    TimestampMs timestamp_ms = 0;
    RobotCommand command = RobotCommand::GoForward;
    Gesture source_gesture;

    bool operator==(const CommandEvent&) const = default;
};

/// Debounce + cooldown state. Plain value; every transition is a pure
/// function of (state, input, timestamp).
struct PipelineState {
    Phase phase = Phase::Idle;
    Gesture stable_gesture = Gesture::neutral(GestureKind::Body);
    int stable_count = 0;
    std::optional<TimestampMs> cooldown_deadline_ms;
    GestureKind mode = GestureKind::Body;
    std::optional<TimestampMs> last_seen_ms;

    static PipelineState initial(GestureKind mode) {
        PipelineState s;
        s.mode = mode;
        s.stable_gesture = Gesture::neutral(mode);
        return s;
    }

    bool operator==(const PipelineState&) const = default;
};

struct StepResult {
    PipelineState state;
    std::optional<CommandEvent> event;
};

/// Feed one classified gesture.
///
/// Idle: K identical consecutive non-Neutral gestures of the session's kind
/// dispatch the mapped command and enter Executing; any change, Neutral, or
/// a gesture of the other kind resets the counter. Executing drops input.
/// Cooldown drops input until now_ms reaches the deadline, after which the
/// pipeline is Idle with cleared counters and the same frame is evaluated
/// as an Idle frame.
///
/// Throws ClockRegression when now_ms precedes a timestamp already seen.
StepResult step(const PipelineState& state, const PipelineParams& params, Gesture gesture,
                TimestampMs now_ms);

/// The robot finished its motion: enter Cooldown with deadline
/// now_ms + cooldown_ms. Throws IllegalTransition unless Executing.
PipelineState motion_complete(const PipelineState& state, const PipelineParams& params,
                              TimestampMs now_ms);

/// Remaining cooldown at now_ms (0 outside Cooldown).
TimestampMs cooldown_remaining(const PipelineState& state, TimestampMs now_ms);

}  // namespace gq
