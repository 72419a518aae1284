#pragma once

#include "gesturequad/course.hpp"
#include "gesturequad/engine.hpp"
#include "gesturequad/events.hpp"

#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gq {

/// Writes a session file: the header line, then one event per line.
class SessionRecorder {
public:
    /// Writes the header immediately. The stream must outlive the recorder.
    SessionRecorder(std::ostream& out, const SessionHeader& header);
    /// Opens (truncates) `path`. Throws Io.
    SessionRecorder(const std::filesystem::path& path, const SessionHeader& header);
    ~SessionRecorder();

    SessionRecorder(const SessionRecorder&) = delete;
    SessionRecorder& operator=(const SessionRecorder&) = delete;

    /// Throws OrderViolation if the event is older than the last one.
    void record(const SessionEvent& e);
    /// Flushes; further records throw Io.
    void close();

    std::size_t count() const { return count_; }

private:
    std::ofstream file_;
    std::ostream* out_;
    std::optional<TimestampMs> last_t_;
    std::size_t count_ = 0;
    bool closed_ = false;
};

struct SessionRecord {
    SessionHeader header;
    std::vector<SessionEvent> events;
};

/// Throws CorruptRecord naming the 1-based line of the first bad record.
SessionRecord parse_session(std::string_view text);
SessionRecord read_session(const std::filesystem::path& path);
std::string write_session(const SessionRecord& record);

enum class ReplaySpeed { Realtime, Max };

struct ReplayResult {
    std::vector<SessionEvent> events;
    /// Encoded command events, one per line.
    std::string command_log;
    RunSummary summary;
};

/// Feed the recorded frames back through a fresh engine. Only frames are
/// replayed; derived events are regenerated. Realtime paces frames by their
/// recorded timestamps; Max ignores wall time. Both produce the same
/// logical-time output.
ReplayResult replay(const SessionRecord& record, const GestureConfig& config,
                    const Course& course, ReplaySpeed speed = ReplaySpeed::Max,
                    const SessionEngine::Sink& sink = {});

/// Lines of the command log for a list of events.
std::string command_log(const std::vector<SessionEvent>& events);

struct ScriptOptions {
    GestureKind mode = GestureKind::Body;
    TimestampMs frame_period_ms = 50;
    /// Neutral frames before the first gesture.
    int lead_in_frames = 10;
    /// Neutral tail after the last motion ends.
    TimestampMs tail_ms = 1000;
    /// Emit frames as a mirroring camera would.
    bool mirrored = true;
    std::string session_id = "scripted";
    std::string created_at = "1970-01-01T00:00:00Z";
};

/// Synthesize the landmark stream a user would produce to issue `plan` as
/// fast as the pipeline accepts it: each gesture is shown from the frame
/// after the previous dispatch, so it is dropped until the cooldown ends
/// and then held for the stability window. The frames are run through an
/// engine and every resulting event is recorded.
SessionRecord scripted_session(const Course& course, const std::vector<RobotCommand>& plan,
                               const GestureConfig& config, const ScriptOptions& options = {});

}  // namespace gq
