#include "gesturequad/derive.hpp"

#include "gesturequad/body_classifier.hpp"
#include "gesturequad/kernels.hpp"
#include "gesturequad/synthetic.hpp"

#include <cmath>
#include <random>

namespace gq {

namespace {

constexpr JointAngle kUpperBody[] = {JointAngle::LeftShoulder, JointAngle::RightShoulder,
                                     JointAngle::LeftElbow, JointAngle::RightElbow};

double round_tenth(double deg) { return std::round(deg * 10.0) / 10.0; }

AngleInterval rounded_interval(double center, double half_width) {
    AngleInterval iv = AngleInterval::around(center, half_width);
    if (half_width >= 180.0) {
        return iv;
    }
    iv.lo = normalize_degrees(round_tenth(iv.lo));
    iv.hi = normalize_degrees(round_tenth(iv.hi));
    iv.wrap = iv.lo > iv.hi;
    return iv;
}

BodyPoseDefinition make_definition(GestureName name, const AngleVector& canonical,
                                   double half_width) {
    BodyPoseDefinition def;
    def.name = name;
    def.priority = default_priority(name);
    for (auto a : kUpperBody) {
        def.constraints[a] = rounded_interval(round_tenth(*canonical.get(a)), half_width);
    }
    return def;
}

}  // namespace

int default_priority(GestureName g) {
    switch (g) {
        case GestureName::TPose: return 90;
        case GestureName::BothArmsBent: return 80;
        case GestureName::HandsOnHead: return 70;
        case GestureName::HandsOnHips: return 60;
        case GestureName::ArmsElevated: return 50;
        case GestureName::LeftArmOut: return 40;
        case GestureName::RightArmOut: return 30;
        case GestureName::LeftArmBent: return 20;
        case GestureName::RightArmBent: return 10;
        default: return 0;
    }
}

bool canonical_separation(const GestureConfig& config) {
    for (auto g : kBodyGestures) {
        const auto angles = compute_angles(synth::canonical_body_frame(g), config.vis_threshold);
        int hits = 0;
        for (const auto& def : config.body_poses) {
            if (matches(def, angles)) {
                if (def.name != g) {
                    return false;
                }
                ++hits;
            }
        }
        if (hits != 1) {
            return false;
        }
    }
    const auto rest = compute_angles(synth::canonical_body_frame(GestureName::Neutral),
                                     config.vis_threshold);
    for (const auto& def : config.body_poses) {
        if (matches(def, rest)) {
            return false;
        }
    }
    return true;
}

double noise_stability(const GestureConfig& config, GestureName pose, int trials, double noise,
                       std::uint64_t seed) {
    if (trials <= 0) {
        return 0.0;
    }
    std::mt19937_64 rng(seed);
    const BodyFrame base = synth::canonical_body_frame(pose);
    std::vector<BodyFrame> frames;
    frames.reserve(static_cast<std::size_t>(trials));
    for (int i = 0; i < trials; ++i) {
        frames.push_back(synth::perturb(base, noise, rng));
    }
    std::vector<Gesture> out(frames.size());
    kernels::parallel::classify_body(frames, config, out);
    int same = 0;
    for (const auto& g : out) {
        same += g.name == pose ? 1 : 0;
    }
    return static_cast<double>(same) / trials;
}

Derivation derive_default_config(const DerivationOptions& options) {
    Derivation d;
    d.config.vis_threshold = kDefaultVisibilityThreshold;

    for (auto g : kBodyGestures) {
        PoseDerivation p;
        p.name = g;
        p.canonical = compute_angles(synth::canonical_body_frame(g), d.config.vis_threshold);
        p.half_width_deg = options.half_width_deg;
        d.config.body_poses.push_back(make_definition(g, p.canonical, p.half_width_deg));
        d.poses.push_back(p);
    }

    // Each pose gets its own deterministic stream so widening one pose does
    // not shift the noise seen by the others.
    for (std::size_t i = 0; i < d.poses.size(); ++i) {
        auto& p = d.poses[i];
        const std::uint64_t pose_seed = options.seed * 1000003ULL + i;
        p.stability =
            noise_stability(d.config, p.name, options.trials, options.noise, pose_seed);
        while (p.stability < options.min_stability &&
               p.half_width_deg + options.widen_step_deg <= options.max_half_width_deg) {
            const auto previous = d.config.body_poses[i];
            const double widened = p.half_width_deg + options.widen_step_deg;
            d.config.body_poses[i] = make_definition(p.name, p.canonical, widened);
            if (!canonical_separation(d.config)) {
                d.config.body_poses[i] = previous;
                break;
            }
            p.half_width_deg = widened;
            p.stability =
                noise_stability(d.config, p.name, options.trials, options.noise, pose_seed);
        }
    }
    d.separated = canonical_separation(d.config);
    return d;
}

const GestureConfig& bundled_default_config() {
    static const GestureConfig config = derive_default_config().config;
    return config;
}

}  // namespace gq
