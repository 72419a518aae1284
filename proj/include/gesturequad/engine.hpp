#pragma once

#include "gesturequad/course.hpp"
#include "gesturequad/events.hpp"
#include "gesturequad/gesture_config.hpp"
#include "gesturequad/pipeline.hpp"
#include "gesturequad/sim.hpp"

#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace gq {

struct RunSummary {
    std::string session_id;
    GestureKind mode = GestureKind::Body;
    bool completed = false;
    std::int64_t elapsed_ms = 0;
    std::size_t command_count = 0;
    std::map<GestureName, std::size_t> dispatch_counts;
};

/// Multi-line human readable summary. Depends only on logical time.
std::string format_summary(const RunSummary& s);

/// The single ordered event loop: frame in, events out.
///
/// For each frame the engine first advances the simulated robot to the frame
/// time (a motion that ends in between completes at its exact time and
/// starts the cooldown there), then emits the raw frame, the classified
/// gesture, any dispatched command and the resulting robot/course events.
/// Not thread safe; callers serialize access.
class SessionEngine {
public:
    using Sink = std::function<void(const SessionEvent&)>;
    using Diagnostic = std::function<void(const std::string&)>;

    SessionEngine(GestureKind mode, GestureConfig config, Course course, Sink sink = {});

    /// Throws OrderViolation unless frame timestamps strictly increase.
    void submit(const BodyFrame& frame);
    void submit(const HandFrame& frame);
    void submit(const std::variant<BodyFrame, HandFrame>& frame);

    /// Takes effect from the next frame. Throws InvalidConfig.
    void set_config(GestureConfig config);
    void set_diagnostic(Diagnostic d) { diag_ = std::move(d); }
    void set_session_id(std::string id) { session_id_ = std::move(id); }

    GestureKind mode() const { return mode_; }
    const GestureConfig& config() const { return config_; }
    const Course& course() const { return course_; }
    const RobotState& robot() const { return robot_; }
    const PipelineState& pipeline() const { return pipeline_; }
    const CourseStatus& course_status() const { return status_; }
    const std::vector<CommandEvent>& commands() const { return commands_; }

    Snapshot snapshot() const;
    RunSummary summary() const;

private:
    void advance_to(TimestampMs t);
    void after_frame(TimestampMs t, Gesture g);
    void check_order(TimestampMs t);
    void update_course(TimestampMs t);
    void emit(const SessionEvent& e);

    GestureKind mode_;
    GestureConfig config_;
    Course course_;
    Sink sink_;
    Diagnostic diag_;
    std::string session_id_;

    RobotState robot_;
    PipelineState pipeline_;
    CourseStatus status_;
    std::optional<TimestampMs> last_t_;
    std::optional<TimestampMs> course_start_;
    Gesture last_gesture_;
    std::vector<CommandEvent> commands_;
};

}  // namespace gq
