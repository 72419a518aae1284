#include "gesturequad/engine.hpp"

#include "gesturequad/body_classifier.hpp"
#include "gesturequad/error.hpp"
#include "gesturequad/hand_classifier.hpp"
#include "gesturequad/stats.hpp"

#include <sstream>

namespace gq {

std::string format_summary(const RunSummary& s) {
    std::ostringstream out;
    out << "session:   " << (s.session_id.empty() ? "-" : s.session_id) << "\n"
        << "mode:      " << to_string(s.mode) << "\n"
        << "completed: " << (s.completed ? "true" : "false") << "\n"
        << "elapsed:   " << format_mss(static_cast<double>(s.elapsed_ms) / 1000.0) << " ("
        << s.elapsed_ms << " ms)\n"
        << "commands:  " << s.command_count << "\n";
    for (const auto& [name, n] : s.dispatch_counts) {
        out << "  " << to_string(name) << " -> "
            << to_string(*map_gesture_to_command(Gesture{*vocabulary_of(name), name})) << ": "
            << n << "\n";
    }
    return out.str();
}

SessionEngine::SessionEngine(GestureKind mode, GestureConfig config, Course course, Sink sink)
    : mode_(mode),
      config_(std::move(config)),
      course_(std::move(course)),
      sink_(std::move(sink)),
      robot_(course_.start),
      pipeline_(PipelineState::initial(mode)),
      last_gesture_(Gesture::neutral(mode)) {
    validate(config_);
    validate(course_);
}

void SessionEngine::set_config(GestureConfig config) {
    validate(config);
    config_ = std::move(config);
}

void SessionEngine::emit(const SessionEvent& e) {
    if (sink_) {
        sink_(e);
    }
}

void SessionEngine::check_order(TimestampMs t) {
    if (last_t_ && t <= *last_t_) {
        throw Error(ErrorCode::OrderViolation, "frame at " + std::to_string(t) +
                                                   " ms does not follow " +
                                                   std::to_string(*last_t_) + " ms");
    }
}

void SessionEngine::advance_to(TimestampMs t) {
    TimestampMs now = last_t_.value_or(t);
    while (!robot_.idle() && now < t) {
        const TickResult r = tick(robot_, t - now, course_.profile);
        now = t - r.leftover_ms;
        robot_ = r.state;
        if (r.completed) {
            pipeline_ = motion_complete(pipeline_, config_.pipeline, now);
            emit(RobotStateEvent{now, robot_});
            update_course(now);
        }
    }
}

void SessionEngine::update_course(TimestampMs t) {
    if (!course_start_) {
        return;
    }
    const CourseStatus next = course_step(course_, status_, robot_, t - *course_start_);
    const bool changed = next.next_waypoint_index != status_.next_waypoint_index ||
                         next.completed != status_.completed;
    status_ = next;
    if (changed) {
        emit(CourseStatusEvent{t, status_});
    }
}

void SessionEngine::after_frame(TimestampMs t, Gesture g) {
    last_gesture_ = g;
    emit(GestureEvent{t, g});

    StepResult r = step(pipeline_, config_.pipeline, g, t);
    pipeline_ = r.state;
    if (r.event) {
        const CommandEvent& cmd = *r.event;
        commands_.push_back(cmd);
        emit(cmd);
        if (!course_start_) {
            course_start_ = t;
        }
        try {
            robot_ = begin(robot_, cmd.command, course_.profile, course_.arena);
            emit(RobotStateEvent{t, robot_});
        } catch (const Error& e) {
            if (e.code() != ErrorCode::InvalidPosture) {
                throw;
            }
            // The command was consumed but the robot cannot perform it; the
            // cooldown still applies so the user gets consistent pacing.
            if (diag_) {
                diag_("warning[InvalidPosture]: " + std::string(e.what()));
            }
            pipeline_ = motion_complete(pipeline_, config_.pipeline, t);
        }
    }
    update_course(t);
}

void SessionEngine::submit(const BodyFrame& frame) {
    const TimestampMs t = frame.timestamp_ms;
    check_order(t);
    advance_to(t);
    last_t_ = t;
    emit(frame);
    after_frame(t, classify_body_frame(unmirror(frame), config_));
}

void SessionEngine::submit(const HandFrame& frame) {
    const TimestampMs t = frame.timestamp_ms;
    check_order(t);
    advance_to(t);
    last_t_ = t;
    emit(frame);
    after_frame(t, classify_hand(unmirror(frame), config_));
}

void SessionEngine::submit(const std::variant<BodyFrame, HandFrame>& frame) {
    std::visit([this](const auto& f) { submit(f); }, frame);
}

Snapshot SessionEngine::snapshot() const {
    Snapshot s;
    s.timestamp_ms = last_t_.value_or(0);
    s.robot = robot_;
    s.gesture = last_gesture_;
    s.phase = pipeline_.phase;
    s.cooldown_ms = cooldown_remaining(pipeline_, s.timestamp_ms);
    s.course = status_;
    return s;
}

RunSummary SessionEngine::summary() const {
    RunSummary s;
    s.session_id = session_id_;
    s.mode = mode_;
    s.completed = status_.completed;
    s.elapsed_ms = status_.elapsed_ms;
    s.command_count = commands_.size();
    for (const auto& c : commands_) {
        ++s.dispatch_counts[c.source_gesture.name];
    }
    return s;
}

}  // namespace gq
