#include "gesturequad/body_classifier.hpp"

namespace gq {

bool matches(const BodyPoseDefinition& def, const AngleVector& angles) {
    for (const auto& [angle, interval] : def.constraints) {
        const auto value = angles.get(angle);
        if (!value || !interval.contains(*value)) {
            return false;
        }
    }
    return true;
}

Gesture classify_body(const AngleVector& angles, const GestureConfig& config) {
    const BodyPoseDefinition* best = nullptr;
    for (const auto& def : config.body_poses) {
        if ((best == nullptr || def.priority > best->priority) && matches(def, angles)) {
            best = &def;
        }
    }
    return best ? Gesture{GestureKind::Body, best->name} : Gesture::neutral(GestureKind::Body);
}

Gesture classify_body_frame(const BodyFrame& frame, const GestureConfig& config) {
    return classify_body(compute_angles(frame, config.vis_threshold), config);
}

}  // namespace gq
