#pragma once

#include "gesturequad/angles.hpp"
#include "gesturequad/types.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace gq {

/// Closed interval of degrees. A wrapping interval crosses 0, so membership
/// is angle >= lo || angle <= hi.
struct AngleInterval {
    double lo = 0.0;
    double hi = 0.0;
    bool wrap = false;

    /// Build from a center and half-width, wrapping as needed. Half-widths of
    /// 180 or more yield the full circle.
    static AngleInterval around(double center_deg, double half_width_deg);

    bool contains(double deg) const;
    bool operator==(const AngleInterval&) const = default;
};

struct BodyPoseDefinition {
    GestureName name = GestureName::Neutral;
    std::map<JointAngle, AngleInterval> constraints;
    int priority = 0;

    bool operator==(const BodyPoseDefinition&) const = default;
};

struct HandParams {
    /// Half-width of the up/left/right fist orientation sectors, degrees.
    double fist_sector_deg = 45.0;
    /// Extra margin required by every finger inequality, as a fraction of
    /// the hand's bounding-box size. 0 means strict comparisons.
    double hysteresis = 0.0;

    bool operator==(const HandParams&) const = default;
};

struct PipelineParams {
    int stability_frames = 5;
    std::int64_t cooldown_ms = 2000;

    bool operator==(const PipelineParams&) const = default;
};

struct GestureConfig {
    double vis_threshold = kDefaultVisibilityThreshold;
    std::vector<BodyPoseDefinition> body_poses;
    HandParams hand;
    PipelineParams pipeline;

    bool operator==(const GestureConfig&) const = default;
};

/// Throws InvalidConfig with the first violated rule.
void validate(const GestureConfig& config);

/// Canonical JSON text (stable key order, trailing newline).
std::string to_json_text(const GestureConfig& config);
GestureConfig config_from_json_text(const std::string& text);

GestureConfig load_config(const std::filesystem::path& path);
void save_config(const GestureConfig& config, const std::filesystem::path& path);

/// FNV-1a 64 over the canonical JSON text, as 16 hex digits.
std::string config_hash(const GestureConfig& config);

std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace gq
