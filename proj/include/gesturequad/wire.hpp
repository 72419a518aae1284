#pragma once

// JSON codec shared by the live socket protocol and the session file format.
// Every message is one JSON object whose "type" field selects the schema:
//
//   body_frame    {"type","t_ms","mirrored","landmarks":[{"x","y","z"?,"v"} x33]}
//   hand_frame    {"type","t_ms","mirrored","handedness","landmarks":[... x21]}
//   gesture       {"type","t_ms","kind","name"}
//   command       {"type","action","t_ms","source"}
//   robot_state   {"type","t_ms","x","y","heading","posture","motion","progress"}
//   course_status {"type","t_ms","next","completed","elapsed_ms"}
//   state         {"type","robot":{"x","y","heading","posture"},"gesture","phase",
//                  "cooldown_ms","course":{"next","elapsed_ms","completed"},"t_ms"}
//   header        {"type","session_id","mode","config_hash","created_at"}
//
// Encoding is canonical (fixed key order, shortest round-trip doubles), so
// encode(decode(line)) reproduces any line this codec wrote.

#include "gesturequad/course.hpp"
#include "gesturequad/events.hpp"

#include <string>
#include <string_view>
#include <variant>

namespace gq::wire {

std::string encode(const BodyFrame& f);
std::string encode(const HandFrame& f);
std::string encode(const GestureEvent& e);
std::string encode(const CommandEvent& e);
std::string encode(const RobotStateEvent& e);
std::string encode(const CourseStatusEvent& e);
std::string encode(const SessionEvent& e);
std::string encode(const SessionHeader& h);
std::string encode(const Snapshot& s);
/// Course layout sent to observers when they connect.
std::string encode_course(const Course& c);

/// Messages a producer may send.
using ProducerMessage = std::variant<BodyFrame, HandFrame>;

/// Throws ProtocolViolation with a reason on any schema violation.
ProducerMessage decode_producer(std::string_view text);

/// Throws ProtocolViolation (callers add line context).
SessionEvent decode_event(std::string_view text);
SessionHeader decode_header(std::string_view text);
Snapshot decode_snapshot(std::string_view text);

}  // namespace gq::wire
