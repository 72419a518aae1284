#include "gesturequad/derive.hpp"
#include "gesturequad/error.hpp"
#include "gesturequad/hand_classifier.hpp"
#include "gesturequad/kernels.hpp"
#include "gesturequad/synthetic.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace gq;

namespace {

HandFrame blank_hand() {
    HandFrame f;
    for (auto& lm : f.landmarks) {
        lm.x = 0.5;
        lm.y = 0.5;
        lm.visibility = 1.0;
    }
    return f;
}

void set_finger(HandFrame& f, Finger finger, Point2 mcp, Point2 pip, Point2 tip) {
    const auto j = finger_joints(finger);
    f.landmarks[j.base].x = mcp.x;
    f.landmarks[j.base].y = mcp.y;
    f.landmarks[j.middle].x = pip.x;
    f.landmarks[j.middle].y = pip.y;
    f.landmarks[j.tip].x = tip.x;
    f.landmarks[j.tip].y = tip.y;
    f.landmarks[j.distal].x = (pip.x + tip.x) / 2;
    f.landmarks[j.distal].y = (pip.y + tip.y) / 2;
}

GestureConfig config() { return bundled_default_config(); }

}  // namespace

TEST(FingerState, Examples) {
    HandFrame f = blank_hand();
    set_finger(f, Finger::Index, {0.5, 0.4}, {0.5, 0.3}, {0.5, 0.2});
    EXPECT_EQ(finger_state(f, Finger::Index), FingerState::ExtendedUp);

    set_finger(f, Finger::Index, {0.5, 0.5}, {0.4, 0.5}, {0.3, 0.5});
    f.landmarks[kWrist].x = 0.7;
    EXPECT_EQ(finger_state(f, Finger::Index), FingerState::ExtendedLeft);

    f = blank_hand();
    f.landmarks[kWrist] = {0.5, 0.5};
    set_finger(f, Finger::Index, {0.55, 0.5}, {0.6, 0.5}, {0.5, 0.45});
    EXPECT_EQ(finger_state(f, Finger::Index), FingerState::Folded);
}

TEST(FingerState, MissingKeypoint) {
    HandFrame f = synth::canonical_hand_frame(GestureName::PointUp);
    f.landmarks[finger_joints(Finger::Index).tip].visibility = 0.0;
    try {
        finger_state(f, Finger::Index);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::MissingKeypoint);
    }
    // The classifier maps the missing keypoint to Neutral.
    EXPECT_TRUE(classify_hand(f, config()).is_neutral());
}

TEST(ClassifyHand, CanonicalFrames) {
    const auto cfg = config();
    for (auto g : kHandGestures) {
        const HandFrame f = synth::canonical_hand_frame(g);
        EXPECT_EQ(classify_hand(f, cfg).name, g) << to_string(g);
        EXPECT_EQ(count_hand_predicates(f, cfg), 1) << to_string(g);
    }
    EXPECT_TRUE(classify_hand(synth::canonical_hand_frame(GestureName::Neutral), cfg).is_neutral());
}

TEST(ClassifyHand, LeftHandsToo) {
    const auto cfg = config();
    for (auto g : kHandGestures) {
        const HandFrame f = synth::make_hand_frame(synth::canonical_hand_pose(g), Handedness::Left);
        EXPECT_EQ(classify_hand(f, cfg).name, g) << to_string(g);
    }
}

TEST(ClassifyHand, TableExamples) {
    const auto cfg = config();
    const Gesture fist = classify_hand(synth::canonical_hand_frame(GestureName::Fist), cfg);
    EXPECT_EQ(fist.name, GestureName::Fist);
    EXPECT_EQ(map_gesture_to_command(fist), RobotCommand::TurnAround);
    const Gesture up = classify_hand(synth::canonical_hand_frame(GestureName::PointUp), cfg);
    EXPECT_EQ(map_gesture_to_command(up), RobotCommand::GoForward);

    synth::HandPose two = synth::canonical_hand_pose(GestureName::PointUp);
    two.middle = synth::FingerShape::Extended;
    EXPECT_TRUE(classify_hand(synth::make_hand_frame(two), cfg).is_neutral());
}

TEST(ClassifyHand, FistOrientationSectors) {
    const auto cfg = config();
    synth::HandPose p = synth::canonical_hand_pose(GestureName::Fist);
    for (double dir : {-30.0, 0.0, 30.0}) {
        p.palm_dir_deg = dir;
        EXPECT_EQ(classify_hand(synth::make_hand_frame(p), cfg).name, GestureName::Fist) << dir;
    }
    for (double dir : {-120.0, -90.0, -60.0}) {
        p.palm_dir_deg = dir;
        EXPECT_EQ(classify_hand(synth::make_hand_frame(p), cfg).name, GestureName::FistLeft) << dir;
    }
    for (double dir : {60.0, 90.0, 120.0}) {
        p.palm_dir_deg = dir;
        EXPECT_EQ(classify_hand(synth::make_hand_frame(p), cfg).name, GestureName::FistRight) << dir;
    }
    // Pointing down fits no sector.
    p.palm_dir_deg = 180.0;
    EXPECT_TRUE(classify_hand(synth::make_hand_frame(p), cfg).is_neutral());
}

TEST(ClassifyHand, PalmOutNeedsThumbOut) {
    synth::HandPose p = synth::canonical_hand_pose(GestureName::PalmOut);
    p.thumb = synth::FingerShape::Folded;
    EXPECT_TRUE(classify_hand(synth::make_hand_frame(p), config()).is_neutral());
}

TEST(ClassifyHand, ScaleAndTranslationInvariant) {
    const auto cfg = config();
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> s(0.3, 3.0);
    std::uniform_real_distribution<double> t(-0.5, 0.5);
    for (int i = 0; i < 300; ++i) {
        const auto g = i % 10 == 9 ? GestureName::Neutral : kHandGestures[i % 9];
        const HandFrame f = synth::canonical_hand_frame(g);
        HandFrame moved = f;
        const double k = s(rng);
        const double dx = t(rng);
        const double dy = t(rng);
        for (auto& lm : moved.landmarks) {
            lm.x = k * lm.x + dx;
            lm.y = k * lm.y + dy;
        }
        EXPECT_EQ(classify_hand(moved, cfg), classify_hand(f, cfg));
    }
}

TEST(ClassifyHand, EgocentricAfterUnmirror) {
    const auto cfg = config();
    // What a mirroring camera delivers for a user pointing to their left.
    const HandFrame captured = mirror(synth::canonical_hand_frame(GestureName::PointLeft));
    EXPECT_TRUE(captured.mirrored);
    EXPECT_EQ(classify_hand(unmirror(captured), cfg).name, GestureName::PointLeft);
    const HandFrame fist_left = mirror(synth::canonical_hand_frame(GestureName::FistLeft));
    EXPECT_EQ(classify_hand(unmirror(fist_left), cfg).name, GestureName::FistLeft);
}

TEST(ClassifyHand, MutualExclusionOnRandomFrames) {
    const auto cfg = config();
    std::mt19937_64 rng(0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<HandFrame> frames(20000);
    for (auto& f : frames) {
        for (auto& lm : f.landmarks) {
            lm.x = u(rng);
            lm.y = u(rng);
            lm.visibility = 1.0;
        }
    }
    std::vector<int> counts(frames.size());
    kernels::parallel::count_hand_predicates(frames, cfg, counts);
    for (std::size_t i = 0; i < frames.size(); ++i) {
        ASSERT_LE(counts[i], 1) << "frame " << i;
    }
}

TEST(ClassifyHand, MutualExclusionNearCanonicalShapes) {
    // Uniform random frames rarely fire any predicate; jittered canonical
    // shapes probe the boundaries between them.
    const auto cfg = config();
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> ang(-180.0, 180.0);
    int fired = 0;
    for (int i = 0; i < 20000; ++i) {
        synth::HandPose p = synth::canonical_hand_pose(kHandGestures[i % 9]);
        p.palm_dir_deg = ang(rng);
        p.finger_dir_deg = rng() % 2 ? p.palm_dir_deg : ang(rng);
        const HandFrame f = synth::perturb(synth::make_hand_frame(p), 0.02, rng);
        const int n = count_hand_predicates(f, cfg);
        ASSERT_LE(n, 1);
        fired += n;
    }
    EXPECT_GT(fired, 1000);
}

TEST(ClassifyHand, HysteresisMarginSuppressesMarginalFingers) {
    GestureConfig cfg = config();
    HandFrame f = synth::canonical_hand_frame(GestureName::PointUp);
    // Make the index finger barely extended.
    const auto j = finger_joints(Finger::Index);
    f.landmarks[j.tip].y = f.landmarks[j.middle].y - 1e-4;
    EXPECT_EQ(classify_hand(f, cfg).name, GestureName::PointUp);
    cfg.hand.hysteresis = 0.05;
    EXPECT_NE(classify_hand(f, cfg).name, GestureName::PointUp);
}
