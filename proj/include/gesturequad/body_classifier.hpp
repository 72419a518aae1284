#pragma once

#include "gesturequad/angles.hpp"
#include "gesturequad/gesture_config.hpp"

namespace gq {

/// True iff every constrained angle is available and inside its interval.
bool matches(const BodyPoseDefinition& def, const AngleVector& angles);

/// Highest-priority matching body pose, or Neutral.
Gesture classify_body(const AngleVector& angles, const GestureConfig& config);

/// Convenience: compute_angles + classify_body on an (unmirrored) frame.
Gesture classify_body_frame(const BodyFrame& frame, const GestureConfig& config);

}  // namespace gq
