#include "gesturequad/error.hpp"
#include "gesturequad/pipeline.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace gq;

namespace {

const Gesture kPointUp{GestureKind::Hand, GestureName::PointUp};
const Gesture kTPose{GestureKind::Body, GestureName::TPose};
const Gesture kHandNeutral = Gesture::neutral(GestureKind::Hand);

struct Dispatch {
    TimestampMs t;
    RobotCommand cmd;
};

// Drives the pipeline with a simulated robot that finishes every motion
// motion_ms after dispatch.
std::vector<Dispatch> simulate(GestureKind mode, const PipelineParams& params,
                               const std::vector<std::pair<TimestampMs, Gesture>>& stream,
                               TimestampMs motion_ms) {
    PipelineState s = PipelineState::initial(mode);
    std::optional<TimestampMs> completes_at;
    std::vector<Dispatch> out;
    for (const auto& [t, g] : stream) {
        if (completes_at && *completes_at <= t) {
            s = motion_complete(s, params, *completes_at);
            completes_at.reset();
        }
        auto r = step(s, params, g, t);
        s = r.state;
        if (r.event) {
            out.push_back({r.event->timestamp_ms, r.event->command});
            completes_at = t + motion_ms;
        }
    }
    return out;
}

Gesture random_gesture(std::mt19937_64& rng) {
    const auto pick = rng() % 4;
    if (pick == 0) {
        return Gesture::neutral(rng() % 2 ? GestureKind::Body : GestureKind::Hand);
    }
    if (pick == 1) {
        return {GestureKind::Body, kBodyGestures[rng() % 9]};
    }
    return {GestureKind::Hand, kHandGestures[rng() % 9]};
}

}  // namespace

TEST(Pipeline, FiveStableFramesDispatch) {
    PipelineParams p;
    PipelineState s = PipelineState::initial(GestureKind::Hand);
    for (int i = 0; i < 4; ++i) {
        auto r = step(s, p, kPointUp, i * 33);
        EXPECT_FALSE(r.event);
        s = r.state;
        EXPECT_EQ(s.stable_count, i + 1);
    }
    auto r = step(s, p, kPointUp, 4 * 33);
    ASSERT_TRUE(r.event);
    EXPECT_EQ(r.event->command, RobotCommand::GoForward);
    EXPECT_EQ(r.event->timestamp_ms, 132);
    EXPECT_EQ(r.event->source_gesture, kPointUp);
    EXPECT_EQ(r.state.phase, Phase::Executing);
}

TEST(Pipeline, CooldownSuppressesStableStream) {
    PipelineParams p;
    PipelineState s = PipelineState::initial(GestureKind::Body);
    s.phase = Phase::Executing;
    s = motion_complete(s, p, 10000);
    EXPECT_EQ(s.phase, Phase::Cooldown);
    EXPECT_EQ(s.cooldown_deadline_ms, 12000);
    EXPECT_EQ(cooldown_remaining(s, 11500), 500);
    for (TimestampMs t = 11500; t < 12000; t += 10) {
        auto r = step(s, p, kTPose, t);
        EXPECT_FALSE(r.event);
        s = r.state;
    }
    EXPECT_EQ(s.phase, Phase::Cooldown);
    EXPECT_EQ(s.stable_count, 0);
}

TEST(Pipeline, DeadlineFrameCountsAsIdleFrame) {
    PipelineParams p;
    PipelineState s = PipelineState::initial(GestureKind::Body);
    s.phase = Phase::Executing;
    s = motion_complete(s, p, 0);
    auto r = step(s, p, kTPose, 2000);
    EXPECT_EQ(r.state.phase, Phase::Idle);
    EXPECT_FALSE(r.state.cooldown_deadline_ms);
    EXPECT_EQ(r.state.stable_count, 1);
}

TEST(Pipeline, AlternatingWithNeutralNeverDispatches) {
    PipelineParams p;
    PipelineState s = PipelineState::initial(GestureKind::Hand);
    for (int i = 0; i < 1000; ++i) {
        auto r = step(s, p, i % 2 ? kHandNeutral : kPointUp, i * 10);
        EXPECT_FALSE(r.event);
        s = r.state;
    }
}

TEST(Pipeline, GestureChangeResetsCounter) {
    PipelineParams p;
    PipelineState s = PipelineState::initial(GestureKind::Hand);
    const Gesture fist{GestureKind::Hand, GestureName::Fist};
    for (int i = 0; i < 4; ++i) {
        s = step(s, p, kPointUp, i).state;
    }
    s = step(s, p, fist, 4).state;
    EXPECT_EQ(s.stable_gesture, fist);
    EXPECT_EQ(s.stable_count, 1);
}

TEST(Pipeline, MotionCompleteRequiresExecuting) {
    PipelineParams p;
    try {
        motion_complete(PipelineState::initial(GestureKind::Body), p, 0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::IllegalTransition);
    }
}

TEST(Pipeline, ZeroCooldownIdlesOnNextStep) {
    PipelineParams p;
    p.cooldown_ms = 0;
    PipelineState s = PipelineState::initial(GestureKind::Body);
    s.phase = Phase::Executing;
    s = motion_complete(s, p, 500);
    EXPECT_EQ(s.phase, Phase::Cooldown);
    s = step(s, p, Gesture::neutral(GestureKind::Body), 500).state;
    EXPECT_EQ(s.phase, Phase::Idle);
}

TEST(Pipeline, ClockRegressionThrows) {
    PipelineParams p;
    PipelineState s = step(PipelineState::initial(GestureKind::Hand), p, kPointUp, 100).state;
    try {
        step(s, p, kPointUp, 99);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ClockRegression);
    }
    EXPECT_NO_THROW(step(s, p, kPointUp, 100));
}

TEST(Pipeline, ExecutingDropsInput) {
    PipelineParams p;
    PipelineState s = PipelineState::initial(GestureKind::Hand);
    s.phase = Phase::Executing;
    for (int i = 0; i < 50; ++i) {
        auto r = step(s, p, kPointUp, i);
        EXPECT_FALSE(r.event);
        s = r.state;
    }
    EXPECT_EQ(s.stable_count, 0);
}

TEST(PipelineProperties, MinimumSpacingOnRandomStreams) {
    std::mt19937_64 rng(0);
    const PipelineParams p;
    for (int trial = 0; trial < 300; ++trial) {
        const auto mode = trial % 2 ? GestureKind::Body : GestureKind::Hand;
        std::vector<std::pair<TimestampMs, Gesture>> stream;
        TimestampMs t = 0;
        Gesture held = random_gesture(rng);
        for (int i = 0; i < 3000; ++i) {
            // Long holds with occasional switches keep dispatches frequent.
            if (rng() % 12 == 0) {
                held = random_gesture(rng);
            }
            t += static_cast<TimestampMs>(rng() % 40);
            stream.emplace_back(t, held);
        }
        const auto d = simulate(mode, p, stream, 1500);
        for (std::size_t i = 1; i < d.size(); ++i) {
            ASSERT_GE(d[i].t - d[i - 1].t, 1500 + p.cooldown_ms);
        }
    }
}

TEST(PipelineProperties, DenseStreamHitsTheBoundExactly) {
    PipelineParams p;
    p.stability_frames = 1;
    std::vector<std::pair<TimestampMs, Gesture>> stream;
    for (TimestampMs t = 0; t < 20000; ++t) {
        stream.emplace_back(t, kPointUp);
    }
    const auto d = simulate(GestureKind::Hand, p, stream, 1500);
    ASSERT_GE(d.size(), 5u);
    for (std::size_t i = 1; i < d.size(); ++i) {
        EXPECT_EQ(d[i].t - d[i - 1].t, 3500);
    }
}

TEST(PipelineProperties, ShortHoldsNeverDispatch) {
    std::mt19937_64 rng(1);
    const PipelineParams p;
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::pair<TimestampMs, Gesture>> stream;
        TimestampMs t = 0;
        for (int run = 0; run < 100; ++run) {
            const Gesture g{GestureKind::Hand, kHandGestures[rng() % 9]};
            const int len = 1 + static_cast<int>(rng() % (p.stability_frames - 1));
            for (int i = 0; i < len; ++i) {
                stream.emplace_back(t += 30, g);
            }
            stream.emplace_back(t += 30, kHandNeutral);
        }
        EXPECT_TRUE(simulate(GestureKind::Hand, p, stream, 1500).empty());
    }
}

TEST(PipelineProperties, ModeIsolation) {
    std::mt19937_64 rng(2);
    const PipelineParams p;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::pair<TimestampMs, Gesture>> body_stream;
        std::vector<std::pair<TimestampMs, Gesture>> hand_stream;
        TimestampMs t = 0;
        for (int i = 0; i < 2000; ++i) {
            t += 20;
            body_stream.emplace_back(t, Gesture{GestureKind::Body, kBodyGestures[(i / 10) % 9]});
            hand_stream.emplace_back(t, Gesture{GestureKind::Hand, kHandGestures[(i / 10) % 9]});
        }
        EXPECT_TRUE(simulate(GestureKind::Hand, p, body_stream, 1500).empty());
        EXPECT_TRUE(simulate(GestureKind::Body, p, hand_stream, 1500).empty());
        EXPECT_FALSE(simulate(GestureKind::Body, p, body_stream, 1500).empty());
    }
}

TEST(PipelineProperties, ReplayDeterminism) {
    std::mt19937_64 rng(3);
    const PipelineParams p;
    std::vector<std::pair<TimestampMs, Gesture>> stream;
    TimestampMs t = 0;
    Gesture held = random_gesture(rng);
    for (int i = 0; i < 20000; ++i) {
        if (rng() % 8 == 0) {
            held = random_gesture(rng);
        }
        stream.emplace_back(t += 1 + static_cast<TimestampMs>(rng() % 50), held);
    }
    const auto a = simulate(GestureKind::Hand, p, stream, 1500);
    const auto b = simulate(GestureKind::Hand, p, stream, 1500);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].t, b[i].t);
        EXPECT_EQ(a[i].cmd, b[i].cmd);
    }
}

TEST(PipelineProperties, StateInvariants) {
    std::mt19937_64 rng(4);
    const PipelineParams p;
    PipelineState s = PipelineState::initial(GestureKind::Body);
    TimestampMs t = 0;
    std::optional<TimestampMs> done;
    for (int i = 0; i < 50000; ++i) {
        t += static_cast<TimestampMs>(rng() % 30);
        if (done && *done <= t) {
            s = motion_complete(s, p, *done);
            done.reset();
        }
        auto r = step(s, p, random_gesture(rng), t);
        s = r.state;
        if (r.event) {
            done = t + 1500;
        }
        ASSERT_GE(s.stable_count, 0);
        ASSERT_EQ(s.cooldown_deadline_ms.has_value(), s.phase == Phase::Cooldown);
        ASSERT_EQ(s.mode, GestureKind::Body);
    }
}
