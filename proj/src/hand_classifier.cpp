#include "gesturequad/hand_classifier.hpp"

#include "gesturequad/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace gq {

std::string_view to_string(FingerState s) {
    switch (s) {
        case FingerState::ExtendedUp: return "extended_up";
        case FingerState::ExtendedLeft: return "extended_left";
        case FingerState::ExtendedRight: return "extended_right";
        case FingerState::Folded: return "folded";
        case FingerState::Other: return "other";
    }
    return "other";
}

namespace {

double hand_size(const HandFrame& frame) {
    double min_x = frame.landmarks[0].x, max_x = min_x;
    double min_y = frame.landmarks[0].y, max_y = min_y;
    for (const auto& lm : frame.landmarks) {
        min_x = std::min(min_x, lm.x);
        max_x = std::max(max_x, lm.x);
        min_y = std::min(min_y, lm.y);
        max_y = std::max(max_y, lm.y);
    }
    return std::max(max_x - min_x, max_y - min_y);
}

double dist(const Landmark& a, const Landmark& b) { return std::hypot(a.x - b.x, a.y - b.y); }

FingerState finger_state_with_margin(const HandFrame& frame, Finger finger, double margin,
                                     double vis_threshold) {
    const auto joints = finger_joints(finger);
    // Thumb: CMC, MCP, IP, TIP -> use MCP as the knuckle and IP as the PIP.
    const std::uint8_t knuckle_idx = finger == Finger::Thumb ? joints.middle : joints.base;
    const std::uint8_t pip_idx = finger == Finger::Thumb ? joints.distal : joints.middle;
    for (std::uint8_t idx : {kWrist, knuckle_idx, pip_idx, joints.tip}) {
        if (!(frame.landmarks[idx].visibility >= vis_threshold)) {
            throw Error(ErrorCode::MissingKeypoint,
                        "hand keypoint " + std::to_string(idx) + " below visibility threshold");
        }
    }
    const Landmark& wrist = frame.landmarks[kWrist];
    const Landmark& mcp = frame.landmarks[knuckle_idx];
    const Landmark& pip = frame.landmarks[pip_idx];
    const Landmark& tip = frame.landmarks[joints.tip];

    const bool up = tip.y < pip.y - margin && pip.y < mcp.y - margin;
    const bool left = tip.x < pip.x - margin && pip.x < mcp.x - margin;
    const bool right = tip.x > pip.x + margin && pip.x > mcp.x + margin;
    const bool horizontal = left || right;
    if (up && horizontal) {
        const bool vertical_dominant = std::abs(tip.y - mcp.y) >= std::abs(tip.x - mcp.x);
        if (vertical_dominant) {
            return FingerState::ExtendedUp;
        }
        return left ? FingerState::ExtendedLeft : FingerState::ExtendedRight;
    }
    if (up) return FingerState::ExtendedUp;
    if (left) return FingerState::ExtendedLeft;
    if (right) return FingerState::ExtendedRight;
    if (dist(tip, wrist) < dist(pip, wrist) - margin) {
        return FingerState::Folded;
    }
    return FingerState::Other;
}

struct HandObservation {
    std::array<FingerState, 5> states;
    double fist_dir;

    FingerState operator[](Finger f) const { return states[static_cast<std::size_t>(f)]; }

    bool four(FingerState s) const {
        return (*this)[Finger::Index] == s && (*this)[Finger::Middle] == s &&
               (*this)[Finger::Ring] == s && (*this)[Finger::Pinky] == s;
    }
    bool others_folded() const {
        return (*this)[Finger::Middle] == FingerState::Folded &&
               (*this)[Finger::Ring] == FingerState::Folded &&
               (*this)[Finger::Pinky] == FingerState::Folded;
    }
};

HandObservation observe(const HandFrame& frame, const GestureConfig& config) {
    const double margin = config.hand.hysteresis * hand_size(frame);
    HandObservation obs{};
    for (auto f : kAllFingers) {
        obs.states[static_cast<std::size_t>(f)] =
            finger_state_with_margin(frame, f, margin, config.vis_threshold);
    }
    obs.fist_dir = fist_direction_deg(frame);
    return obs;
}

using Predicate = bool (*)(const HandObservation&, double sector);

struct HandRule {
    GestureName name;
    Predicate holds;
};

// Each predicate is evaluated independently so exclusivity can be checked.
constexpr std::array<HandRule, 9> kHandRules{{
    {GestureName::PointUp,
     [](const HandObservation& o, double) {
         return o[Finger::Index] == FingerState::ExtendedUp && o.others_folded();
     }},
    {GestureName::PalmOut,
     [](const HandObservation& o, double) {
         return o.four(FingerState::ExtendedUp) && o[Finger::Thumb] != FingerState::Folded;
     }},
    {GestureName::PointLeft,
     [](const HandObservation& o, double) {
         return o[Finger::Index] == FingerState::ExtendedLeft && o.others_folded();
     }},
    {GestureName::PointRight,
     [](const HandObservation& o, double) {
         return o[Finger::Index] == FingerState::ExtendedRight && o.others_folded();
     }},
    {GestureName::SidewaysLeft,
     [](const HandObservation& o, double) { return o.four(FingerState::ExtendedLeft); }},
    {GestureName::SidewaysRight,
     [](const HandObservation& o, double) { return o.four(FingerState::ExtendedRight); }},
    {GestureName::FistLeft,
     [](const HandObservation& o, double sector) {
         return o.four(FingerState::Folded) && std::abs(o.fist_dir + 90.0) < sector;
     }},
    {GestureName::FistRight,
     [](const HandObservation& o, double sector) {
         return o.four(FingerState::Folded) && std::abs(o.fist_dir - 90.0) < sector;
     }},
    {GestureName::Fist,
     [](const HandObservation& o, double sector) {
         return o.four(FingerState::Folded) && std::abs(o.fist_dir) < sector;
     }},
}};

}  // namespace

FingerState finger_state(const HandFrame& frame, Finger finger, const HandParams& params,
                         double vis_threshold) {
    return finger_state_with_margin(frame, finger, params.hysteresis * hand_size(frame),
                                    vis_threshold);
}

double fist_direction_deg(const HandFrame& frame) {
    const Landmark& wrist = frame.wrist();
    const Landmark& mcp = frame.mcp(Finger::Middle);
    return std::atan2(mcp.x - wrist.x, -(mcp.y - wrist.y)) * 180.0 / std::numbers::pi;
}

Gesture classify_hand(const HandFrame& frame, const GestureConfig& config) {
    HandObservation obs;
    try {
        obs = observe(frame, config);
    } catch (const Error&) {
        return Gesture::neutral(GestureKind::Hand);
    }
    for (const auto& rule : kHandRules) {
        if (rule.holds(obs, config.hand.fist_sector_deg)) {
            return Gesture{GestureKind::Hand, rule.name};
        }
    }
    return Gesture::neutral(GestureKind::Hand);
}

int count_hand_predicates(const HandFrame& frame, const GestureConfig& config) {
    HandObservation obs;
    try {
        obs = observe(frame, config);
    } catch (const Error&) {
        return 0;
    }
    int n = 0;
    for (const auto& rule : kHandRules) {
        n += rule.holds(obs, config.hand.fist_sector_deg) ? 1 : 0;
    }
    return n;
}

}  // namespace gq
