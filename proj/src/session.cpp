#include "gesturequad/session.hpp"

#include "gesturequad/error.hpp"
#include "gesturequad/synthetic.hpp"
#include "gesturequad/wire.hpp"

#include <chrono>
#include <sstream>
#include <thread>

namespace gq {

SessionRecorder::SessionRecorder(std::ostream& out, const SessionHeader& header) : out_(&out) {
    *out_ << wire::encode(header) << '\n';
}

SessionRecorder::SessionRecorder(const std::filesystem::path& path, const SessionHeader& header)
    : file_(path, std::ios::binary | std::ios::trunc), out_(&file_) {
    if (!file_) {
        throw Error(ErrorCode::Io, "cannot write session '" + path.string() + "'");
    }
    *out_ << wire::encode(header) << '\n';
}

SessionRecorder::~SessionRecorder() {
    try {
        close();
    } catch (...) {
    }
}

void SessionRecorder::record(const SessionEvent& e) {
    if (closed_) {
        throw Error(ErrorCode::Io, "session recorder is closed");
    }
    const TimestampMs t = timestamp_of(e);
    if (last_t_ && t < *last_t_) {
        throw Error(ErrorCode::OrderViolation, "event at " + std::to_string(t) +
                                                   " ms recorded after " +
                                                   std::to_string(*last_t_) + " ms");
    }
    last_t_ = t;
    *out_ << wire::encode(e) << '\n';
    ++count_;
}

void SessionRecorder::close() {
    if (closed_) {
        return;
    }
    closed_ = true;
    out_->flush();
    if (file_.is_open()) {
        file_.close();
    }
    if (!*out_ && out_ != &file_) {
        throw Error(ErrorCode::Io, "session write failed");
    }
}

SessionRecord parse_session(std::string_view text) {
    SessionRecord rec;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    bool have_header = false;
    std::optional<TimestampMs> last_t;
    while (pos < text.size()) {
        const auto nl = text.find('\n', pos);
        const auto end = nl == std::string_view::npos ? text.size() : nl;
        const auto line = text.substr(pos, end - pos);
        ++lineno;
        pos = end + 1;
        auto corrupt = [&](const std::string& why) {
            return Error(ErrorCode::CorruptRecord,
                         "line " + std::to_string(lineno) + ": " + why);
        };
        if (line.empty()) {
            throw corrupt("empty line");
        }
        try {
            if (!have_header) {
                rec.header = wire::decode_header(line);
                have_header = true;
                continue;
            }
            SessionEvent e = wire::decode_event(line);
            const TimestampMs t = timestamp_of(e);
            if (last_t && t < *last_t) {
                throw corrupt("event timestamps go backwards");
            }
            last_t = t;
            rec.events.push_back(std::move(e));
        } catch (const Error& e) {
            if (e.code() == ErrorCode::CorruptRecord) {
                throw;
            }
            throw corrupt(e.what());
        }
    }
    if (!have_header) {
        throw Error(ErrorCode::CorruptRecord, "line 1: missing header");
    }
    return rec;
}

SessionRecord read_session(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open session '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_session(ss.str());
}

std::string write_session(const SessionRecord& record) {
    std::ostringstream out;
    {
        SessionRecorder rec(out, record.header);
        for (const auto& e : record.events) {
            rec.record(e);
        }
    }
    return out.str();
}

std::string command_log(const std::vector<SessionEvent>& events) {
    std::string out;
    for (const auto& e : events) {
        if (const auto* c = std::get_if<CommandEvent>(&e)) {
            out += wire::encode(*c);
            out += '\n';
        }
    }
    return out;
}

ReplayResult replay(const SessionRecord& record, const GestureConfig& config,
                    const Course& course, ReplaySpeed speed, const SessionEngine::Sink& sink) {
    ReplayResult result;
    SessionEngine engine(record.header.mode, config, course, [&](const SessionEvent& e) {
        result.events.push_back(e);
        if (sink) {
            sink(e);
        }
    });
    engine.set_session_id(record.header.session_id);

    using Clock = std::chrono::steady_clock;
    const auto wall_start = Clock::now();
    std::optional<TimestampMs> t0;
    for (const auto& e : record.events) {
        const BodyFrame* bf = std::get_if<BodyFrame>(&e);
        const HandFrame* hf = std::get_if<HandFrame>(&e);
        if (!bf && !hf) {
            continue;
        }
        const TimestampMs t = bf ? bf->timestamp_ms : hf->timestamp_ms;
        if (speed == ReplaySpeed::Realtime) {
            if (!t0) {
                t0 = t;
            }
            std::this_thread::sleep_until(wall_start + std::chrono::milliseconds(t - *t0));
        }
        if (bf) {
            engine.submit(*bf);
        } else {
            engine.submit(*hf);
        }
    }
    result.command_log = command_log(result.events);
    result.summary = engine.summary();
    return result;
}

namespace {

std::variant<BodyFrame, HandFrame> scripted_frame(GestureKind mode, GestureName name,
                                                  TimestampMs t, bool mirrored) {
    if (mode == GestureKind::Body) {
        BodyFrame f = synth::canonical_body_frame(name, t);
        return mirrored ? mirror(f) : f;
    }
    HandFrame f = synth::canonical_hand_frame(name, t);
    return mirrored ? mirror(f) : f;
}

}  // namespace

SessionRecord scripted_session(const Course& course, const std::vector<RobotCommand>& plan,
                               const GestureConfig& config, const ScriptOptions& options) {
    if (options.frame_period_ms <= 0) {
        throw Error(ErrorCode::InvalidArgument, "frame period must be > 0");
    }
    SessionRecord rec;
    rec.header.session_id = options.session_id;
    rec.header.mode = options.mode;
    rec.header.config_hash = config_hash(config);
    rec.header.created_at = options.created_at;

    SessionEngine engine(options.mode, config, course,
                         [&](const SessionEvent& e) { rec.events.push_back(e); });
    engine.set_session_id(options.session_id);

    const TimestampMs period = options.frame_period_ms;
    TimestampMs t = 0;
    std::size_t next = 0;
    for (int i = 0; i < options.lead_in_frames; ++i, t += period) {
        engine.submit(scripted_frame(options.mode, GestureName::Neutral, t, options.mirrored));
    }
    // Hold the gesture for plan[next] until it dispatches, then move on.
    const std::size_t guard = 1000000;
    for (std::size_t n = 0; next < plan.size(); ++n, t += period) {
        if (n > guard) {
            throw Error(ErrorCode::InvalidArgument, "scripted plan never dispatches");
        }
        const GestureName g = gesture_for_command(options.mode, plan[next]);
        const std::size_t before = engine.commands().size();
        engine.submit(scripted_frame(options.mode, g, t, options.mirrored));
        if (engine.commands().size() > before) {
            ++next;
        }
    }
    // Rest until the last motion has finished, plus a tail.
    while (!engine.robot().idle()) {
        engine.submit(scripted_frame(options.mode, GestureName::Neutral, t, options.mirrored));
        t += period;
    }
    for (const TimestampMs end = t + options.tail_ms; t < end; t += period) {
        engine.submit(scripted_frame(options.mode, GestureName::Neutral, t, options.mirrored));
    }
    return rec;
}

}  // namespace gq
