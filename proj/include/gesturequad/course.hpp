#pragma once

#include "gesturequad/sim.hpp"
#include "gesturequad/types.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace gq {

/// Waypoint course. Waypoints must be reached in order; a waypoint counts as
/// reached when the robot center is within capture_radius of it. The motion
/// profile and arena ride along in the course file so a run is fully
/// described by it.
struct Course {
    std::vector<Point2> waypoints;
    double capture_radius = 0.3;
    RobotState start;
    MotionProfile profile;
    Arena arena;

    bool operator==(const Course&) const = default;
};

struct CourseStatus {
    std::size_t next_waypoint_index = 0;
    bool completed = false;
    std::int64_t elapsed_ms = 0;

    bool operator==(const CourseStatus&) const = default;
};

/// Throws InvalidConfig (fewer than 2 waypoints, radius <= 0, bad profile).
void validate(const Course& course);

/// Four waypoints alternating +-1 m laterally over 6 m forward, starting at
/// the origin facing +x.
Course default_zigzag_course();

/// Capture the next waypoint if the robot is inside its radius and update
/// the elapsed time. elapsed_ms freezes once the course is completed.
CourseStatus course_step(const Course& course, const CourseStatus& previous,
                         const RobotState& state, std::int64_t elapsed_ms);

std::string course_to_json_text(const Course& course);
Course course_from_json_text(const std::string& text);
Course load_course(const std::filesystem::path& path);
void save_course(const Course& course, const std::filesystem::path& path);

/// Open-loop course run without the gesture front end: commands are issued
/// back to back, each one `gap_ms` after the previous motion completed, and
/// the simulator advances in fixed dt_ms ticks. Timing starts at the first
/// command (t = 0).
struct ScriptedRun {
    CourseStatus status;
    RobotState final_state;
    std::vector<std::int64_t> command_times_ms;
    std::size_t rejected = 0;
};

ScriptedRun run_command_script(const Course& course, const std::vector<RobotCommand>& commands,
                               std::int64_t dt_ms, std::int64_t gap_ms);

/// Command plan for the default zigzag that keeps the heading at 0 and uses
/// forward steps and strafes only.
std::vector<RobotCommand> default_zigzag_plan();

}  // namespace gq
