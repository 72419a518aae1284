#pragma once

#include "gesturequad/gesture_config.hpp"
#include "gesturequad/types.hpp"

namespace gq {

enum class FingerState : std::uint8_t { ExtendedUp, ExtendedLeft, ExtendedRight, Folded, Other };

std::string_view to_string(FingerState s);

/// Direction of one finger from the tip/PIP/MCP ordering along each axis.
///
/// Up means decreasing y. When a finger is monotone along both axes (a
/// diagonal finger) the axis with the larger tip-to-MCP displacement decides.
/// Folded (tip closer to the wrist than the PIP) is only reported when no
/// extension holds. For the thumb, the MCP and IP joints play the roles of
/// MCP and PIP.
///
/// Throws MissingKeypoint when the wrist or any of the finger's joints has
/// visibility below vis_threshold.
FingerState finger_state(const HandFrame& frame, Finger finger, const HandParams& params = {},
                         double vis_threshold = kDefaultVisibilityThreshold);

/// Fist orientation: direction of wrist -> middle MCP in degrees, 0 = up,
/// +90 = toward +x, -90 = toward -x, in (-180, 180].
double fist_direction_deg(const HandFrame& frame);

/// Classify an unmirrored hand frame. Missing keypoints yield Neutral.
Gesture classify_hand(const HandFrame& frame, const GestureConfig& config);

/// Number of the nine hand predicates satisfied by the frame; used to check
/// that the predicates are mutually exclusive. Missing keypoints count 0.
int count_hand_predicates(const HandFrame& frame, const GestureConfig& config);

}  // namespace gq
