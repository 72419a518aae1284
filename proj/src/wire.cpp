#include "gesturequad/wire.hpp"

#include "gesturequad/error.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <string>

namespace gq {

TimestampMs timestamp_of(const SessionEvent& e) {
    return std::visit(
        [](const auto& v) -> TimestampMs {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, BodyFrame> || std::is_same_v<T, HandFrame>) {
                return v.timestamp_ms;
            } else {
                return v.timestamp_ms;
            }
        },
        e);
}

}  // namespace gq

namespace gq::wire {

using nlohmann::ordered_json;

namespace {

[[noreturn]] void violation(const std::string& msg) {
    throw Error(ErrorCode::ProtocolViolation, msg);
}

ordered_json landmark_json(const Landmark& lm) {
    ordered_json j{{"x", lm.x}, {"y", lm.y}};
    if (lm.z) {
        j["z"] = *lm.z;
    }
    j["v"] = lm.visibility;
    return j;
}

template <std::size_t N>
ordered_json landmarks_json(const std::array<Landmark, N>& lms) {
    ordered_json arr = ordered_json::array();
    for (const auto& lm : lms) {
        arr.push_back(landmark_json(lm));
    }
    return arr;
}

std::string dump(const ordered_json& j) { return j.dump(); }

ordered_json parse(std::string_view text) {
    try {
        auto j = ordered_json::parse(text);
        if (!j.is_object()) {
            violation("message is not a JSON object");
        }
        return j;
    } catch (const nlohmann::json::parse_error&) {
        violation("message is not valid JSON");
    }
}

const ordered_json& require(const ordered_json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) {
        violation(std::string("missing field '") + key + "'");
    }
    return *it;
}

std::int64_t get_int(const ordered_json& j, const char* key) {
    const auto& v = require(j, key);
    if (!v.is_number_integer()) {
        violation(std::string("field '") + key + "' must be an integer");
    }
    return v.get<std::int64_t>();
}

double get_number(const ordered_json& j, const char* key) {
    const auto& v = require(j, key);
    if (!v.is_number()) {
        violation(std::string("field '") + key + "' must be a number");
    }
    const double d = v.get<double>();
    if (!std::isfinite(d)) {
        violation(std::string("field '") + key + "' must be finite");
    }
    return d;
}

bool get_bool(const ordered_json& j, const char* key) {
    const auto& v = require(j, key);
    if (!v.is_boolean()) {
        violation(std::string("field '") + key + "' must be a boolean");
    }
    return v.get<bool>();
}

std::string get_string(const ordered_json& j, const char* key) {
    const auto& v = require(j, key);
    if (!v.is_string()) {
        violation(std::string("field '") + key + "' must be a string");
    }
    return v.get<std::string>();
}

Landmark decode_landmark(const ordered_json& j) {
    if (!j.is_object()) {
        violation("landmark must be an object");
    }
    Landmark lm;
    lm.x = get_number(j, "x");
    lm.y = get_number(j, "y");
    if (j.contains("z") && !j.at("z").is_null()) {
        lm.z = get_number(j, "z");
    }
    lm.visibility = get_number(j, "v");
    if (lm.visibility < 0.0 || lm.visibility > 1.0) {
        violation("landmark visibility outside [0,1]");
    }
    return lm;
}

template <std::size_t N>
void decode_landmarks(const ordered_json& j, std::array<Landmark, N>& out) {
    const auto& arr = require(j, "landmarks");
    if (!arr.is_array() || arr.size() != N) {
        violation("expected exactly " + std::to_string(N) + " landmarks");
    }
    for (std::size_t i = 0; i < N; ++i) {
        out[i] = decode_landmark(arr[i]);
    }
}

BodyFrame decode_body(const ordered_json& j) {
    BodyFrame f;
    f.timestamp_ms = get_int(j, "t_ms");
    f.mirrored = get_bool(j, "mirrored");
    decode_landmarks(j, f.landmarks);
    return f;
}

HandFrame decode_hand(const ordered_json& j) {
    HandFrame f;
    f.timestamp_ms = get_int(j, "t_ms");
    f.mirrored = get_bool(j, "mirrored");
    const auto h = parse_handedness(get_string(j, "handedness"));
    if (!h) {
        violation("handedness must be 'left' or 'right'");
    }
    f.handedness = *h;
    decode_landmarks(j, f.landmarks);
    return f;
}

Gesture decode_gesture(const std::string& kind_s, const std::string& name_s) {
    const auto kind = parse_gesture_kind(kind_s);
    const auto name = parse_gesture_name(name_s);
    if (!kind || !name) {
        violation("unknown gesture '" + kind_s + "/" + name_s + "'");
    }
    const auto vocab = vocabulary_of(*name);
    if (vocab && *vocab != *kind) {
        violation("gesture '" + name_s + "' is not a " + kind_s + " gesture");
    }
    return Gesture{*kind, *name};
}

}  // namespace

std::string encode(const BodyFrame& f) {
    return dump({{"type", "body_frame"},
                 {"t_ms", f.timestamp_ms},
                 {"mirrored", f.mirrored},
                 {"landmarks", landmarks_json(f.landmarks)}});
}

std::string encode(const HandFrame& f) {
    return dump({{"type", "hand_frame"},
                 {"t_ms", f.timestamp_ms},
                 {"mirrored", f.mirrored},
                 {"handedness", to_string(f.handedness)},
                 {"landmarks", landmarks_json(f.landmarks)}});
}

std::string encode(const GestureEvent& e) {
    return dump({{"type", "gesture"},
                 {"t_ms", e.timestamp_ms},
                 {"kind", to_string(e.gesture.kind)},
                 {"name", to_string(e.gesture.name)}});
}

std::string encode(const CommandEvent& e) {
    return dump({{"type", "command"},
                 {"action", to_string(e.command)},
                 {"t_ms", e.timestamp_ms},
                 {"source", to_string(e.source_gesture.name)}});
}

std::string encode(const RobotStateEvent& e) {
    const RobotState& s = e.state;
    ordered_json j{{"type", "robot_state"},  {"t_ms", e.timestamp_ms},
                   {"x", s.x},               {"y", s.y},
                   {"heading", s.heading_deg}, {"posture", to_string(s.posture)}};
    if (s.motion) {
        j["motion"] = to_string(s.motion->command);
        j["progress"] = s.motion->progress;
    } else {
        j["motion"] = nullptr;
        j["progress"] = 0.0;
    }
    return dump(j);
}

std::string encode(const CourseStatusEvent& e) {
    return dump({{"type", "course_status"},
                 {"t_ms", e.timestamp_ms},
                 {"next", e.status.next_waypoint_index},
                 {"completed", e.status.completed},
                 {"elapsed_ms", e.status.elapsed_ms}});
}

std::string encode(const SessionEvent& e) {
    return std::visit([](const auto& v) { return encode(v); }, e);
}

std::string encode(const SessionHeader& h) {
    return dump({{"type", "header"},
                 {"session_id", h.session_id},
                 {"mode", to_string(h.mode)},
                 {"config_hash", h.config_hash},
                 {"created_at", h.created_at}});
}

std::string encode(const Snapshot& s) {
    return dump({{"type", "state"},
                 {"robot",
                  {{"x", s.robot.x},
                   {"y", s.robot.y},
                   {"heading", s.robot.heading_deg},
                   {"posture", to_string(s.robot.posture)}}},
                 {"gesture", to_string(s.gesture.name)},
                 {"phase", to_string(s.phase)},
                 {"cooldown_ms", s.cooldown_ms},
                 {"course",
                  {{"next", s.course.next_waypoint_index},
                   {"elapsed_ms", s.course.elapsed_ms},
                   {"completed", s.course.completed}}},
                 {"t_ms", s.timestamp_ms}});
}

std::string encode_course(const Course& c) {
    ordered_json wps = ordered_json::array();
    for (const auto& w : c.waypoints) {
        wps.push_back({w.x, w.y});
    }
    return dump({{"type", "course"},
                 {"waypoints", std::move(wps)},
                 {"capture_radius", c.capture_radius},
                 {"footprint", {kRobotLength, kRobotWidth}}});
}

ProducerMessage decode_producer(std::string_view text) {
    const auto j = parse(text);
    const auto type = get_string(j, "type");
    if (type == "body_frame") {
        return decode_body(j);
    }
    if (type == "hand_frame") {
        return decode_hand(j);
    }
    violation("unexpected message type '" + type + "'");
}

SessionEvent decode_event(std::string_view text) {
    const auto j = parse(text);
    const auto type = get_string(j, "type");
    if (type == "body_frame") {
        return decode_body(j);
    }
    if (type == "hand_frame") {
        return decode_hand(j);
    }
    if (type == "gesture") {
        return GestureEvent{get_int(j, "t_ms"),
                            decode_gesture(get_string(j, "kind"), get_string(j, "name"))};
    }
    if (type == "command") {
        const auto action = parse_robot_command(get_string(j, "action"));
        if (!action) {
            violation("unknown action");
        }
        CommandEvent e;
        e.timestamp_ms = get_int(j, "t_ms");
        e.command = *action;
        const auto source = parse_gesture_name(get_string(j, "source"));
        if (!source || !vocabulary_of(*source)) {
            violation("bad command source gesture");
        }
        e.source_gesture = Gesture{*vocabulary_of(*source), *source};
        if (map_gesture_to_command(e.source_gesture) != e.command) {
            violation("command action does not match its source gesture");
        }
        return e;
    }
    if (type == "robot_state") {
        RobotStateEvent e;
        e.timestamp_ms = get_int(j, "t_ms");
        e.state.x = get_number(j, "x");
        e.state.y = get_number(j, "y");
        e.state.heading_deg = get_number(j, "heading");
        const auto posture = parse_posture(get_string(j, "posture"));
        if (!posture) {
            violation("unknown posture");
        }
        e.state.posture = *posture;
        const auto& motion = require(j, "motion");
        if (!motion.is_null()) {
            if (!motion.is_string()) {
                violation("motion must be a string or null");
            }
            const auto cmd = parse_robot_command(motion.get<std::string>());
            if (!cmd) {
                violation("unknown motion command");
            }
            Motion m;
            m.command = *cmd;
            m.progress = get_number(j, "progress");
            e.state.motion = m;
        }
        return e;
    }
    if (type == "course_status") {
        CourseStatusEvent e;
        e.timestamp_ms = get_int(j, "t_ms");
        const auto next = get_int(j, "next");
        if (next < 0) {
            violation("negative waypoint index");
        }
        e.status.next_waypoint_index = static_cast<std::size_t>(next);
        e.status.completed = get_bool(j, "completed");
        e.status.elapsed_ms = get_int(j, "elapsed_ms");
        return e;
    }
    violation("unknown event type '" + type + "'");
}

SessionHeader decode_header(std::string_view text) {
    const auto j = parse(text);
    if (get_string(j, "type") != "header") {
        violation("first line must be a header");
    }
    SessionHeader h;
    h.session_id = get_string(j, "session_id");
    const auto mode = parse_gesture_kind(get_string(j, "mode"));
    if (!mode) {
        violation("header mode must be 'body' or 'hand'");
    }
    h.mode = *mode;
    h.config_hash = get_string(j, "config_hash");
    h.created_at = get_string(j, "created_at");
    return h;
}

Snapshot decode_snapshot(std::string_view text) {
    const auto j = parse(text);
    if (get_string(j, "type") != "state") {
        violation("not a state message");
    }
    Snapshot s;
    const auto& robot = require(j, "robot");
    s.robot.x = get_number(robot, "x");
    s.robot.y = get_number(robot, "y");
    s.robot.heading_deg = get_number(robot, "heading");
    const auto posture = parse_posture(get_string(robot, "posture"));
    if (!posture) {
        violation("unknown posture");
    }
    s.robot.posture = *posture;
    const auto name = parse_gesture_name(get_string(j, "gesture"));
    if (!name) {
        violation("unknown gesture");
    }
    s.gesture.name = *name;
    s.gesture.kind = vocabulary_of(*name).value_or(GestureKind::Body);
    const auto phase = get_string(j, "phase");
    if (phase == "Idle") {
        s.phase = Phase::Idle;
    } else if (phase == "Executing") {
        s.phase = Phase::Executing;
    } else if (phase == "Cooldown") {
        s.phase = Phase::Cooldown;
    } else {
        violation("unknown phase");
    }
    s.cooldown_ms = get_int(j, "cooldown_ms");
    const auto& course = require(j, "course");
    s.course.next_waypoint_index = static_cast<std::size_t>(get_int(course, "next"));
    s.course.elapsed_ms = get_int(course, "elapsed_ms");
    s.course.completed = get_bool(course, "completed");
    if (j.contains("t_ms")) {
        s.timestamp_ms = get_int(j, "t_ms");
    }
    return s;
}

}  // namespace gq::wire
