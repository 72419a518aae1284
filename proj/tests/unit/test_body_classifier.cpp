#include "gesturequad/body_classifier.hpp"
#include "gesturequad/derive.hpp"
#include "gesturequad/error.hpp"
#include "gesturequad/gesture_config.hpp"
#include "gesturequad/synthetic.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace gq;

namespace {

AngleVector single(JointAngle j, double deg) {
    AngleVector a;
    a.set(j, deg);
    return a;
}

}  // namespace

TEST(AngleInterval, Membership) {
    const AngleInterval plain{160, 200, false};
    EXPECT_TRUE(plain.contains(180));
    EXPECT_TRUE(plain.contains(160));
    EXPECT_TRUE(plain.contains(200));
    EXPECT_FALSE(plain.contains(159.9));
    const AngleInterval wrap{350, 10, true};
    EXPECT_TRUE(wrap.contains(5));
    EXPECT_TRUE(wrap.contains(355));
    EXPECT_TRUE(wrap.contains(0));
    EXPECT_FALSE(wrap.contains(180));
}

TEST(AngleInterval, AroundWrapsAcrossZero) {
    const auto i = AngleInterval::around(5, 25);
    EXPECT_TRUE(i.wrap);
    EXPECT_DOUBLE_EQ(i.lo, 340);
    EXPECT_DOUBLE_EQ(i.hi, 30);
    const auto j = AngleInterval::around(180, 25);
    EXPECT_FALSE(j.wrap);
    EXPECT_DOUBLE_EQ(j.lo, 155);
    EXPECT_DOUBLE_EQ(j.hi, 205);
    const auto full = AngleInterval::around(90, 180);
    for (double d = 0; d < 360; d += 0.5) {
        EXPECT_TRUE(full.contains(d));
    }
}

TEST(Matches, Examples) {
    BodyPoseDefinition def{GestureName::LeftArmBent, {{JointAngle::LeftElbow, {160, 200, false}}}, 1};
    EXPECT_TRUE(matches(def, single(JointAngle::LeftElbow, 180)));
    EXPECT_FALSE(matches(def, AngleVector{}));
    BodyPoseDefinition wrap{GestureName::LeftArmBent, {{JointAngle::LeftElbow, {350, 10, true}}}, 1};
    EXPECT_TRUE(matches(wrap, single(JointAngle::LeftElbow, 5)));
}

TEST(ClassifyBody, HigherPriorityWinsOnOverlap) {
    GestureConfig cfg;
    cfg.body_poses = {
        {GestureName::LeftArmOut, {{JointAngle::LeftShoulder, {250, 290, false}}}, 1},
        {GestureName::TPose, {{JointAngle::LeftShoulder, {260, 280, false}}}, 5},
    };
    EXPECT_EQ(classify_body(single(JointAngle::LeftShoulder, 270), cfg).name, GestureName::TPose);
    EXPECT_EQ(classify_body(single(JointAngle::LeftShoulder, 255), cfg).name,
              GestureName::LeftArmOut);
    EXPECT_EQ(classify_body(single(JointAngle::LeftShoulder, 10), cfg).name, GestureName::Neutral);
}

TEST(ClassifyBody, WideningNeverUnmatches) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> deg(0.0, 360.0);
    std::uniform_real_distribution<double> half(1.0, 90.0);
    std::uniform_real_distribution<double> extra(0.0, 60.0);
    int matched = 0;
    for (int trial = 0; trial < 5000; ++trial) {
        BodyPoseDefinition def{GestureName::TPose, {}, 1};
        std::map<JointAngle, std::pair<double, double>> centers;
        for (auto j : {JointAngle::LeftShoulder, JointAngle::RightElbow}) {
            const double c = deg(rng);
            const double h = half(rng);
            centers[j] = {c, h};
            def.constraints[j] = AngleInterval::around(c, h);
        }
        AngleVector a;
        for (auto j : kAllJointAngles) {
            a.set(j, deg(rng));
        }
        // Nudge half the samples inside so both branches get exercised.
        if (trial % 2 == 0) {
            for (const auto& [j, ch] : centers) {
                a.set(j, normalize_degrees(ch.first + ch.second * 0.5));
            }
        }
        if (!matches(def, a)) {
            continue;
        }
        ++matched;
        BodyPoseDefinition wider = def;
        for (const auto& [j, ch] : centers) {
            wider.constraints[j] = AngleInterval::around(ch.first, ch.second + extra(rng));
        }
        ASSERT_TRUE(matches(wider, a));
    }
    EXPECT_GT(matched, 2000);
}

TEST(DefaultConfig, CanonicalSkeletonsSeparate) {
    const GestureConfig& cfg = bundled_default_config();
    EXPECT_NO_THROW(validate(cfg));
    for (auto g : kBodyGestures) {
        const AngleVector a = compute_angles(synth::canonical_body_frame(g));
        int n = 0;
        for (const auto& def : cfg.body_poses) {
            if (matches(def, a)) {
                ++n;
                EXPECT_EQ(def.name, g);
            }
        }
        EXPECT_EQ(n, 1) << to_string(g);
        EXPECT_EQ(classify_body_frame(synth::canonical_body_frame(g), cfg).name, g);
    }
    EXPECT_EQ(classify_body_frame(synth::canonical_body_frame(GestureName::Neutral), cfg).name,
              GestureName::Neutral);
    EXPECT_TRUE(canonical_separation(cfg));
}

TEST(DefaultConfig, LegsAreWildcards) {
    for (const auto& def : bundled_default_config().body_poses) {
        for (auto j : {JointAngle::LeftHip, JointAngle::RightHip, JointAngle::LeftKnee,
                       JointAngle::RightKnee}) {
            EXPECT_EQ(def.constraints.count(j), 0u);
        }
    }
}

TEST(DefaultConfig, CompoundPosesOutrankSingleArm) {
    EXPECT_GT(default_priority(GestureName::TPose), default_priority(GestureName::LeftArmOut));
    EXPECT_GT(default_priority(GestureName::TPose), default_priority(GestureName::RightArmOut));
    EXPECT_GT(default_priority(GestureName::BothArmsBent),
              default_priority(GestureName::LeftArmBent));
    EXPECT_GT(default_priority(GestureName::BothArmsBent),
              default_priority(GestureName::RightArmBent));
}

TEST(DefaultConfig, NoiseStability) {
    const GestureConfig& cfg = bundled_default_config();
    for (auto g : kBodyGestures) {
        EXPECT_GE(noise_stability(cfg, g, 1000, 0.02, 0), 0.95) << to_string(g);
    }
}

TEST(DefaultConfig, DerivationIsDeterministic) {
    const auto a = derive_default_config({});
    const auto b = derive_default_config({});
    EXPECT_EQ(to_json_text(a.config), to_json_text(b.config));
    EXPECT_TRUE(a.separated);
    EXPECT_EQ(to_json_text(a.config), to_json_text(bundled_default_config()));
}

TEST(ClassifyBody, Deterministic) {
    std::mt19937_64 rng(4);
    const GestureConfig& cfg = bundled_default_config();
    for (int i = 0; i < 200; ++i) {
        const BodyFrame f = synth::perturb(synth::canonical_body_frame(kBodyGestures[i % 9]), 0.05, rng);
        EXPECT_EQ(classify_body_frame(f, cfg), classify_body_frame(f, cfg));
    }
}
