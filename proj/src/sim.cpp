#include "gesturequad/sim.hpp"

#include "gesturequad/angles.hpp"
#include "gesturequad/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace gq {

std::string_view to_string(Posture p) { return p == Posture::Standing ? "standing" : "lying"; }

std::optional<Posture> parse_posture(std::string_view s) {
    if (s == "standing") return Posture::Standing;
    if (s == "lying") return Posture::Lying;
    return std::nullopt;
}

void validate(const MotionProfile& p) {
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(p.step_distance) || !positive(p.strafe_distance) ||
        !positive(p.motion_duration_s) || !positive(p.posture_duration_s)) {
        throw Error(ErrorCode::InvalidConfig, "motion distances and durations must be > 0");
    }
    if (!(p.rotate_angle_deg > 0.0 && p.rotate_angle_deg <= 180.0)) {
        throw Error(ErrorCode::InvalidConfig, "rotate_angle must lie in (0, 180]");
    }
}

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

bool is_locomotion(RobotCommand cmd) {
    return cmd != RobotCommand::LayDown && cmd != RobotCommand::StandUp;
}

std::int64_t to_ms(double seconds) { return std::llround(seconds * 1000.0); }

double clamp_to(double v, double lo, double hi) { return std::clamp(v, lo, hi); }

// Exact zeros on the axes keep axis-aligned moves free of 1e-17 drift.
double snapped(double v) { return std::abs(v) < 1e-12 ? 0.0 : v; }

struct Target {
    Pose2 pose;
    double heading_delta = 0.0;
    std::optional<Posture> posture_after;
};

Target terminal(const RobotState& s, RobotCommand cmd, const MotionProfile& p, const Arena& arena) {
    if (s.motion) {
        throw Error(ErrorCode::IllegalTransition, "robot is already moving");
    }
    if (is_locomotion(cmd) && s.posture != Posture::Standing) {
        throw Error(ErrorCode::InvalidPosture,
                    std::string(to_string(cmd)) + " requires a standing robot");
    }
    if (cmd == RobotCommand::LayDown && s.posture != Posture::Standing) {
        throw Error(ErrorCode::InvalidPosture, "LayDown requires a standing robot");
    }
    if (cmd == RobotCommand::StandUp && s.posture != Posture::Lying) {
        throw Error(ErrorCode::InvalidPosture, "StandUp requires a lying robot");
    }

    Target t;
    t.pose = s.pose();
    const double h = s.heading_deg * kDeg;
    auto translate = [&](double distance, double angle_rad) {
        t.pose.x = clamp_to(s.x + distance * snapped(std::cos(angle_rad)), arena.min_x, arena.max_x);
        t.pose.y = clamp_to(s.y + distance * snapped(std::sin(angle_rad)), arena.min_y, arena.max_y);
    };
    switch (cmd) {
        case RobotCommand::GoForward: translate(p.step_distance, h); break;
        case RobotCommand::GoBackward: translate(-p.step_distance, h); break;
        case RobotCommand::StrafeLeft: translate(p.strafe_distance, h + std::numbers::pi / 2); break;
        case RobotCommand::StrafeRight: translate(p.strafe_distance, h - std::numbers::pi / 2); break;
        case RobotCommand::RotateCCW: t.heading_delta = p.rotate_angle_deg; break;
        case RobotCommand::RotateCW: t.heading_delta = -p.rotate_angle_deg; break;
        case RobotCommand::TurnAround: t.heading_delta = 180.0; break;
        case RobotCommand::LayDown: t.posture_after = Posture::Lying; break;
        case RobotCommand::StandUp: t.posture_after = Posture::Standing; break;
    }
    t.pose.heading_deg = normalize_degrees(s.heading_deg + t.heading_delta);
    return t;
}

/// Shortest signed rotation (degrees) that turns `heading` to face `anchor`.
std::optional<double> facing_delta(const RobotState& s, const MotionProfile& p) {
    const double dx = p.user_anchor.x - s.x;
    const double dy = p.user_anchor.y - s.y;
    if (dx == 0.0 && dy == 0.0) {
        return std::nullopt;
    }
    const double want = normalize_degrees(std::atan2(dy, dx) / kDeg);
    double delta = normalize_degrees(want - s.heading_deg);
    if (delta > 180.0) {
        delta -= 360.0;
    }
    if (std::abs(delta) < 1e-9) {
        return std::nullopt;
    }
    return delta;
}

}  // namespace

std::int64_t command_duration_ms(RobotCommand cmd, const MotionProfile& profile) {
    return to_ms(is_locomotion(cmd) ? profile.motion_duration_s : profile.posture_duration_s);
}

RobotState apply(const RobotState& state, RobotCommand cmd, const MotionProfile& profile,
                 const Arena& arena) {
    const Target t = terminal(state, cmd, profile, arena);
    RobotState out = state;
    out.x = t.pose.x;
    out.y = t.pose.y;
    out.heading_deg = t.pose.heading_deg;
    if (t.posture_after) {
        out.posture = *t.posture_after;
    }
    return out;
}

RobotState begin(const RobotState& state, RobotCommand cmd, const MotionProfile& profile,
                 const Arena& arena) {
    const Target t = terminal(state, cmd, profile, arena);
    Motion m;
    m.command = cmd;
    m.from = state.pose();
    m.to = t.pose;
    m.heading_delta_deg = t.heading_delta;
    m.duration_ms = std::max<std::int64_t>(1, command_duration_ms(cmd, profile));
    m.posture_after = t.posture_after;
    RobotState out = state;
    out.motion = m;
    return out;
}

TickResult tick(const RobotState& state, std::int64_t dt_ms, const MotionProfile& profile) {
    if (!state.motion) {
        return {state, false, 0};
    }
    if (dt_ms <= 0) {
        throw Error(ErrorCode::InvalidArgument, "tick needs dt > 0");
    }
    RobotState s = state;
    Motion& m = *s.motion;
    const std::int64_t leftover = std::max<std::int64_t>(0, m.elapsed_ms + dt_ms - m.duration_ms);
    m.elapsed_ms = std::min(m.elapsed_ms + dt_ms, m.duration_ms);
    m.progress = static_cast<double>(m.elapsed_ms) / static_cast<double>(m.duration_ms);
    if (m.elapsed_ms < m.duration_ms) {
        s.x = m.from.x + (m.to.x - m.from.x) * m.progress;
        s.y = m.from.y + (m.to.y - m.from.y) * m.progress;
        s.heading_deg = normalize_degrees(m.from.heading_deg + m.heading_delta_deg * m.progress);
        return {s, false, 0};
    }

    // Segment finished: land exactly on the terminal pose.
    s.x = m.to.x;
    s.y = m.to.y;
    s.heading_deg = m.to.heading_deg;
    if (m.posture_after) {
        s.posture = *m.posture_after;
    }
    const bool was_facing = m.facing;
    const RobotCommand cmd = m.command;
    s.motion.reset();

    if (!was_facing && profile.auto_face_user && s.posture == Posture::Standing) {
        if (const auto delta = facing_delta(s, profile)) {
            Motion face;
            face.command = cmd;
            face.facing = true;
            face.from = s.pose();
            face.to = {s.x, s.y, normalize_degrees(s.heading_deg + *delta)};
            face.heading_delta_deg = *delta;
            face.duration_ms = std::max<std::int64_t>(
                1, std::llround(profile.motion_duration_s * 1000.0 * std::abs(*delta) / 180.0));
            s.motion = face;
            return {s, false, leftover};
        }
    }
    return {s, true, leftover};
}

}  // namespace gq
