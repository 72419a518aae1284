#include "gesturequad/pipeline.hpp"

#include "gesturequad/error.hpp"

#include <algorithm>
#include <string>

namespace gq {

std::string_view to_string(Phase p) {
    switch (p) {
        case Phase::Idle: return "Idle";
        case Phase::Executing: return "Executing";
        case Phase::Cooldown: return "Cooldown";
    }
    return "Idle";
}

namespace {

void check_clock(const PipelineState& s, TimestampMs now_ms) {
    if (s.last_seen_ms && now_ms < *s.last_seen_ms) {
        throw Error(ErrorCode::ClockRegression, "pipeline time went backwards: " +
                                                    std::to_string(now_ms) + " < " +
                                                    std::to_string(*s.last_seen_ms));
    }
}

void reset_counter(PipelineState& s) {
    s.stable_gesture = Gesture::neutral(s.mode);
    s.stable_count = 0;
}

}  // namespace

StepResult step(const PipelineState& state, const PipelineParams& params, Gesture gesture,
                TimestampMs now_ms) {
    check_clock(state, now_ms);
    StepResult r{state, std::nullopt};
    PipelineState& s = r.state;
    s.last_seen_ms = now_ms;

    if (s.phase == Phase::Executing) {
        return r;
    }
    if (s.phase == Phase::Cooldown) {
        if (now_ms < *s.cooldown_deadline_ms) {
            return r;
        }
        s.phase = Phase::Idle;
        s.cooldown_deadline_ms.reset();
        reset_counter(s);
    }

    if (gesture.is_neutral() || gesture.kind != s.mode) {
        reset_counter(s);
        return r;
    }
    if (gesture == s.stable_gesture) {
        ++s.stable_count;
    } else {
        s.stable_gesture = gesture;
        s.stable_count = 1;
    }
    if (s.stable_count >= params.stability_frames) {
        const auto cmd = map_gesture_to_command(gesture);
        r.event = CommandEvent{now_ms, *cmd, gesture};
        s.phase = Phase::Executing;
        reset_counter(s);
    }
    return r;
}

PipelineState motion_complete(const PipelineState& state, const PipelineParams& params,
                              TimestampMs now_ms) {
    if (state.phase != Phase::Executing) {
        throw Error(ErrorCode::IllegalTransition,
                    "motion_complete in phase " + std::string(to_string(state.phase)));
    }
    check_clock(state, now_ms);
    PipelineState s = state;
    s.last_seen_ms = now_ms;
    s.phase = Phase::Cooldown;
    s.cooldown_deadline_ms = now_ms + params.cooldown_ms;
    return s;
}

TimestampMs cooldown_remaining(const PipelineState& state, TimestampMs now_ms) {
    if (state.phase != Phase::Cooldown || !state.cooldown_deadline_ms) {
        return 0;
    }
    return std::max<TimestampMs>(0, *state.cooldown_deadline_ms - now_ms);
}

}  // namespace gq
