#pragma once

#include "gesturequad/angles.hpp"
#include "gesturequad/gesture_config.hpp"

#include <cstdint>
#include <vector>

namespace gq {

struct DerivationOptions {
    double half_width_deg = 25.0;
    double widen_step_deg = 5.0;
    double max_half_width_deg = 60.0;
    int trials = 1000;
    double noise = 0.02;
    double min_stability = 0.95;
    std::uint64_t seed = 0;
};

struct PoseDerivation {
    GestureName name = GestureName::Neutral;
    AngleVector canonical;
    double half_width_deg = 0.0;
    double stability = 0.0;
};

struct Derivation {
    GestureConfig config;
    std::vector<PoseDerivation> poses;
    bool separated = false;
};

/// Priorities of the default body poses: compound poses outrank the
/// single-arm poses they subsume.
int default_priority(GestureName body_gesture);

/// Build the default body bounds from the canonical synthetic skeletons:
/// each pose constrains both shoulders and both elbows to the canonical
/// angle +- half_width; a pose whose noise stability falls below
/// min_stability is widened step by step while separation still holds.
Derivation derive_default_config(const DerivationOptions& options = {});

/// Every canonical skeleton matches exactly its own definition and the rest
/// pose matches none.
bool canonical_separation(const GestureConfig& config);

/// Fraction of `trials` noisy copies of the canonical skeleton for `pose`
/// (Neutral = rest) that classify as `pose`. Perturbations are drawn in a
/// fixed serial order from `seed`, then classified in parallel.
double noise_stability(const GestureConfig& config, GestureName pose, int trials, double noise,
                       std::uint64_t seed);

/// Default configuration shipped with the binary (derivation with seed 0).
const GestureConfig& bundled_default_config();

}  // namespace gq
