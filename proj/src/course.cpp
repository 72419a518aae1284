#include "gesturequad/course.hpp"

#include "gesturequad/error.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace gq {

using nlohmann::ordered_json;

void validate(const Course& course) {
    if (course.waypoints.size() < 2) {
        throw Error(ErrorCode::InvalidConfig, "course needs at least 2 waypoints");
    }
    if (!(course.capture_radius > 0.0)) {
        throw Error(ErrorCode::InvalidConfig, "capture_radius must be > 0");
    }
    if (course.start.motion) {
        throw Error(ErrorCode::InvalidConfig, "course start pose must be idle");
    }
    validate(course.profile);
    const Arena& a = course.arena;
    if (!(a.min_x < a.max_x && a.min_y < a.max_y)) {
        throw Error(ErrorCode::InvalidConfig, "arena bounds are empty");
    }
}

Course default_zigzag_course() {
    Course c;
    c.waypoints = {{1.5, 1.0}, {3.0, -1.0}, {4.5, 1.0}, {6.0, -1.0}};
    c.capture_radius = 0.3;
    c.start = RobotState{};
    return c;
}

CourseStatus course_step(const Course& course, const CourseStatus& previous,
                         const RobotState& state, std::int64_t elapsed_ms) {
    CourseStatus s = previous;
    if (s.completed) {
        return s;
    }
    s.elapsed_ms = elapsed_ms;
    while (s.next_waypoint_index < course.waypoints.size()) {
        const Point2& wp = course.waypoints[s.next_waypoint_index];
        if (std::hypot(state.x - wp.x, state.y - wp.y) > course.capture_radius) {
            break;
        }
        ++s.next_waypoint_index;
    }
    s.completed = s.next_waypoint_index == course.waypoints.size();
    return s;
}

namespace {

[[noreturn]] void bad_course(const std::string& msg) {
    throw Error(ErrorCode::InvalidConfig, "course: " + msg);
}

}  // namespace

std::string course_to_json_text(const Course& c) {
    ordered_json wps = ordered_json::array();
    for (const auto& w : c.waypoints) {
        wps.push_back({w.x, w.y});
    }
    const auto& p = c.profile;
    ordered_json j{
        {"waypoints", std::move(wps)},
        {"capture_radius", c.capture_radius},
        {"start",
         {{"x", c.start.x},
          {"y", c.start.y},
          {"heading", c.start.heading_deg},
          {"posture", to_string(c.start.posture)}}},
        {"motion",
         {{"step_distance", p.step_distance},
          {"strafe_distance", p.strafe_distance},
          {"rotate_angle", p.rotate_angle_deg},
          {"motion_duration", p.motion_duration_s},
          {"posture_duration", p.posture_duration_s},
          {"auto_face_user", p.auto_face_user},
          {"user_anchor", {p.user_anchor.x, p.user_anchor.y}}}},
        {"arena",
         {{"min_x", c.arena.min_x},
          {"max_x", c.arena.max_x},
          {"min_y", c.arena.min_y},
          {"max_y", c.arena.max_y}}},
    };
    return j.dump(2) + "\n";
}

Course course_from_json_text(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        bad_course(std::string("not valid JSON: ") + e.what());
    }
    Course c;
    try {
        c.waypoints.clear();
        for (const auto& w : j.at("waypoints")) {
            if (!w.is_array() || w.size() != 2) {
                bad_course("waypoints must be [x, y] pairs");
            }
            c.waypoints.push_back({w[0].get<double>(), w[1].get<double>()});
        }
        c.capture_radius = j.value("capture_radius", c.capture_radius);
        if (j.contains("start")) {
            const auto& s = j.at("start");
            c.start.x = s.value("x", 0.0);
            c.start.y = s.value("y", 0.0);
            c.start.heading_deg = s.value("heading", 0.0);
            const auto posture = parse_posture(s.value("posture", std::string("standing")));
            if (!posture) {
                bad_course("unknown start posture");
            }
            c.start.posture = *posture;
        }
        if (j.contains("motion")) {
            const auto& m = j.at("motion");
            auto& p = c.profile;
            p.step_distance = m.value("step_distance", p.step_distance);
            p.strafe_distance = m.value("strafe_distance", p.strafe_distance);
            p.rotate_angle_deg = m.value("rotate_angle", p.rotate_angle_deg);
            p.motion_duration_s = m.value("motion_duration", p.motion_duration_s);
            p.posture_duration_s = m.value("posture_duration", p.posture_duration_s);
            p.auto_face_user = m.value("auto_face_user", p.auto_face_user);
            if (m.contains("user_anchor")) {
                p.user_anchor = {m.at("user_anchor").at(0).get<double>(),
                                 m.at("user_anchor").at(1).get<double>()};
            }
        }
        if (j.contains("arena")) {
            const auto& a = j.at("arena");
            c.arena.min_x = a.value("min_x", c.arena.min_x);
            c.arena.max_x = a.value("max_x", c.arena.max_x);
            c.arena.min_y = a.value("min_y", c.arena.min_y);
            c.arena.max_y = a.value("max_y", c.arena.max_y);
        }
    } catch (const nlohmann::json::exception& e) {
        bad_course(e.what());
    }
    validate(c);
    return c;
}

Course load_course(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open course '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return course_from_json_text(ss.str());
}

void save_course(const Course& course, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::Io, "cannot write course '" + path.string() + "'");
    }
    out << course_to_json_text(course);
}

ScriptedRun run_command_script(const Course& course, const std::vector<RobotCommand>& commands,
                               std::int64_t dt_ms, std::int64_t gap_ms) {
    if (dt_ms <= 0) {
        throw Error(ErrorCode::InvalidArgument, "dt must be > 0");
    }
    ScriptedRun run;
    RobotState state = course.start;
    std::size_t next = 0;
    std::int64_t t = 0;
    std::int64_t issue_at = 0;
    CourseStatus status;

    // Motion completions and command issues happen at their exact times
    // inside a tick; only waypoint checks are quantized to tick boundaries.
    while (!status.completed) {
        const std::int64_t tick_end = t + dt_ms;
        while (t < tick_end) {
            if (state.idle() && next < commands.size() && t >= issue_at) {
                run.command_times_ms.push_back(t);
                try {
                    state = begin(state, commands[next], course.profile, course.arena);
                } catch (const Error& e) {
                    if (e.code() != ErrorCode::InvalidPosture) {
                        throw;
                    }
                    ++run.rejected;
                    issue_at = t + gap_ms;
                }
                ++next;
            }
            if (!state.idle()) {
                const TickResult r = tick(state, tick_end - t, course.profile);
                t = tick_end - r.leftover_ms;
                state = r.state;
                if (r.completed) {
                    issue_at = t + gap_ms;
                }
            } else if (next < commands.size() && issue_at < tick_end) {
                t = std::max(t, issue_at);
            } else {
                t = tick_end;
            }
        }
        if (!run.command_times_ms.empty()) {
            status = course_step(course, status, state, t - run.command_times_ms.front());
        }
        if (state.idle() && next >= commands.size()) {
            break;
        }
    }
    run.status = status;
    run.final_state = state;
    return run;
}

std::vector<RobotCommand> default_zigzag_plan() {
    using C = RobotCommand;
    std::vector<RobotCommand> plan;
    auto add = [&](C c, int n) { plan.insert(plan.end(), static_cast<std::size_t>(n), c); };
    // (0,0) -> (1.5, 0.9): captures (1.5, 1)
    add(C::GoForward, 3);
    add(C::StrafeLeft, 3);
    // -> (3.0, -0.9): captures (3, -1)
    add(C::GoForward, 3);
    add(C::StrafeRight, 6);
    // -> (4.5, 0.9): captures (4.5, 1)
    add(C::GoForward, 3);
    add(C::StrafeLeft, 6);
    // -> (4.5, -0.9) -> (6.0, -0.9): captures (6, -1) during the last step
    add(C::StrafeRight, 6);
    add(C::GoForward, 3);
    return plan;
}

}  // namespace gq
