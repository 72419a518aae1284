// Acceptance run: one PASS/FAIL line per primary criterion. Exit status is
// the number of failed criteria.

#include "gesturequad/angles.hpp"
#include "gesturequad/body_classifier.hpp"
#include "gesturequad/course.hpp"
#include "gesturequad/derive.hpp"
#include "gesturequad/engine.hpp"
#include "gesturequad/error.hpp"
#include "gesturequad/hand_classifier.hpp"
#include "gesturequad/kernels.hpp"
#include "gesturequad/pipeline.hpp"
#include "gesturequad/session.hpp"
#include "gesturequad/sim.hpp"
#include "gesturequad/stats.hpp"
#include "gesturequad/synthetic.hpp"
#include "gesturequad/ueq.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#ifndef GQ_SOURCE_DIR
#define GQ_SOURCE_DIR "."
#endif

using namespace gq;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

int failures = 0;

template <typename Fn>
void criterion(const char* name, Fn fn) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        fn(o);
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail << " [exception: " << e.what() << "]";
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) {
        ++failures;
    }
    std::printf("%s  %-34s %6.2fs %s\n", o.pass ? "PASS" : "FAIL", name, secs,
                o.detail.str().c_str());
    std::fflush(stdout);
}

double circular_diff(double a, double b) {
    const double d = std::fabs(a - b);
    return std::min(d, 360.0 - d);
}

// Independent reference: difference of the two absolute directions.
double brute_force_angle(Point2 v, Point2 p1, Point2 p2) {
    const double a1 = std::atan2(p1.y - v.y, p1.x - v.x) * 180.0 / M_PI;
    const double a2 = std::atan2(p2.y - v.y, p2.x - v.x) * 180.0 / M_PI;
    double d = std::fmod(a2 - a1, 360.0);
    if (d < 0) {
        d += 360.0;
    }
    return d >= 360.0 ? 0.0 : d;
}

}  // namespace

int main() {
    const GestureConfig& cfg = bundled_default_config();
    std::printf("gesturequad acceptance (threads: %d)\n", kernels::max_threads());

    criterion("angle oracle", [](Outcome& o) {
        std::mt19937_64 rng(0);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        std::uniform_real_distribution<double> rot(0.0, 2.0 * M_PI);
        std::uniform_real_distribution<double> shift(-10.0, 10.0);
        double worst = 0.0;
        double worst_rigid = 0.0;
        int n = 0;
        while (n < 10000) {
            const Point2 v{u(rng), u(rng)};
            const Point2 p1{u(rng), u(rng)};
            const Point2 p2{u(rng), u(rng)};
            if (std::hypot(p1.x - v.x, p1.y - v.y) < 1e-6 || std::hypot(p2.x - v.x, p2.y - v.y) < 1e-6) {
                continue;
            }
            ++n;
            const double a = joint_angle(v, p1, p2);
            worst = std::max(worst, circular_diff(a, brute_force_angle(v, p1, p2)));
            const double th = rot(rng);
            const double c = std::cos(th);
            const double s = std::sin(th);
            const double tx = shift(rng);
            const double ty = shift(rng);
            auto move = [&](Point2 p) { return Point2{c * p.x - s * p.y + tx, s * p.x + c * p.y + ty}; };
            worst_rigid = std::max(worst_rigid, circular_diff(a, joint_angle(move(v), move(p1), move(p2))));
        }
        o.detail << "10000 triples, max |err| " << worst << " deg, rigid " << worst_rigid << " deg";
        o.require(worst <= 1e-9, "oracle error > 1e-9");
        o.require(worst_rigid <= 1e-9, "rigid-transform error > 1e-9");
    });

    criterion("classifier separation", [&](Outcome& o) {
        const auto t0 = std::chrono::steady_clock::now();
        int correct = 0;
        for (auto g : kBodyGestures) {
            correct += classify_body_frame(synth::canonical_body_frame(g), cfg).name == g;
        }
        const bool rest_neutral =
            classify_body_frame(synth::canonical_body_frame(GestureName::Neutral), cfg).is_neutral();
        double worst = 1.0;
        GestureName worst_pose = GestureName::Neutral;
        for (auto g : kBodyGestures) {
            const double s = noise_stability(cfg, g, 1000, 0.02, 0);
            if (s < worst) {
                worst = s;
                worst_pose = g;
            }
        }
        const double rest = noise_stability(cfg, GestureName::Neutral, 1000, 0.02, 0);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        o.detail << correct << "/9 canonical, rest " << (rest_neutral ? "Neutral" : "not Neutral")
                 << ", min stability " << worst << " (" << to_string(worst_pose) << "), rest stability "
                 << rest;
        o.require(correct == 9, "canonical skeleton misclassified");
        o.require(rest_neutral, "rest pose not Neutral");
        o.require(worst >= 0.95, "stability < 0.95");
        o.require(secs < 10.0, "runtime >= 10 s");
    });

    criterion("hand predicate exclusivity", [&](Outcome& o) {
        std::mt19937_64 rng(0);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::vector<HandFrame> frames(100000);
        for (auto& f : frames) {
            for (auto& lm : f.landmarks) {
                lm = {u(rng), u(rng), 0.0, 1.0};
            }
        }
        std::vector<int> counts(frames.size());
        kernels::parallel::count_hand_predicates(frames, cfg, counts);
        int multi = 0;
        int fired = 0;
        for (int c : counts) {
            multi += c > 1;
            fired += c == 1;
        }
        // Structured frames: random finger shapes and directions, so that
        // the predicates actually fire and their borders get exercised.
        std::uniform_real_distribution<double> ang(-180.0, 180.0);
        std::vector<HandFrame> shaped(100000);
        for (auto& f : shaped) {
            synth::HandPose p;
            p.palm_dir_deg = ang(rng);
            p.finger_dir_deg = rng() % 2 ? p.palm_dir_deg : ang(rng);
            for (auto* s : {&p.thumb, &p.index, &p.middle, &p.ring, &p.pinky}) {
                *s = rng() % 2 ? synth::FingerShape::Extended : synth::FingerShape::Folded;
            }
            f = synth::perturb(synth::make_hand_frame(p, rng() % 2 ? Handedness::Left : Handedness::Right),
                               0.02, rng);
        }
        kernels::parallel::count_hand_predicates(shaped, cfg, counts);
        int shaped_multi = 0;
        int shaped_fired = 0;
        for (int c : counts) {
            shaped_multi += c > 1;
            shaped_fired += c == 1;
        }
        int correct = 0;
        for (auto g : kHandGestures) {
            correct += classify_hand(synth::canonical_hand_frame(g), cfg).name == g;
        }
        o.detail << "uniform: " << multi << "/100000 multi (" << fired << " fired); shaped: "
                 << shaped_multi << "/100000 multi (" << shaped_fired << " fired); canonical "
                 << correct << "/9";
        o.require(multi == 0, "uniform frame satisfied two predicates");
        o.require(shaped_multi == 0, "shaped frame satisfied two predicates");
        o.require(correct == 9, "canonical hand misclassified");
    });

    criterion("cooldown conformance", [&](Outcome& o) {
        // Random landmark streams through the full engine: spacing must be at
        // least the previous command's duration plus the cooldown.
        std::mt19937_64 rng(0);
        const Course course = default_zigzag_course();
        std::int64_t min_gap = 1 << 30;
        std::int64_t min_slack = 1 << 30;
        std::int64_t min_locomotion_gap = 1 << 30;
        std::size_t total = 0;
        std::size_t ignored = 0;
        for (int trial = 0; trial < 40; ++trial) {
            const auto mode = trial % 2 ? GestureKind::Hand : GestureKind::Body;
            SessionEngine eng(mode, cfg, course);
            TimestampMs t = 0;
            GestureName held = GestureName::Neutral;
            for (int i = 0; i < 4000; ++i) {
                if (rng() % 15 == 0) {
                    held = rng() % 6 == 0 ? GestureName::Neutral
                                          : (mode == GestureKind::Body ? kBodyGestures : kHandGestures)[rng() % 9];
                }
                t += 1 + static_cast<TimestampMs>(rng() % 60);
                if (mode == GestureKind::Body) {
                    eng.submit(mirror(synth::perturb(synth::canonical_body_frame(held, t), 0.01, rng)));
                } else {
                    eng.submit(mirror(synth::perturb(synth::canonical_hand_frame(held, t), 0.01, rng)));
                }
            }
            const auto& cmds = eng.commands();
            total += cmds.size();
            // Track posture independently: a command the posture forbids is
            // ignored by the robot, so only the cooldown separates it from
            // the next one.
            bool lying = false;
            std::vector<std::int64_t> motion_ms;
            for (const auto& c : cmds) {
                const bool posture_cmd = c.command == RobotCommand::LayDown || c.command == RobotCommand::StandUp;
                const bool ok = posture_cmd ? (c.command == RobotCommand::StandUp) == lying : !lying;
                ignored += !ok;
                motion_ms.push_back(ok ? command_duration_ms(c.command, course.profile) : 0);
                if (ok && posture_cmd) {
                    lying = !lying;
                }
            }
            for (std::size_t k = 1; k < cmds.size(); ++k) {
                const auto gap = cmds[k].timestamp_ms - cmds[k - 1].timestamp_ms;
                min_gap = std::min(min_gap, gap);
                min_slack = std::min(min_slack, gap - (motion_ms[k - 1] + 2000));
                if (motion_ms[k - 1] == 1500) {
                    min_locomotion_gap = std::min(min_locomotion_gap, gap);
                }
            }
        }
        // Dense stream, locomotion command, instant dispatch (K = 1).
        auto dense = [&](int k, TimestampMs period) {
            GestureConfig c = cfg;
            c.pipeline.stability_frames = k;
            SessionEngine eng(GestureKind::Hand, c, course);
            for (TimestampMs t = 0; t < 30000; t += period) {
                eng.submit(synth::canonical_hand_frame(GestureName::PointUp, t));
            }
            std::int64_t lo = 1 << 30;
            std::int64_t hi = 0;
            const auto& cmds = eng.commands();
            for (std::size_t i = 1; i < cmds.size(); ++i) {
                lo = std::min(lo, cmds[i].timestamp_ms - cmds[i - 1].timestamp_ms);
                hi = std::max(hi, cmds[i].timestamp_ms - cmds[i - 1].timestamp_ms);
            }
            return std::pair{lo, hi};
        };
        const auto [k1_lo, k1_hi] = dense(1, 1);
        const auto [k5_lo, k5_hi] = dense(5, 1);
        o.detail << total << " random dispatches (" << ignored << " ignored for posture), min slack "
                 << min_slack << " ms, min gap after a 1500 ms motion " << min_locomotion_gap
                 << " ms, overall " << min_gap << " ms; dense 1 kHz K=1 spacing " << k1_lo << ".." << k1_hi << " ms; K=5 spacing "
                 << k5_lo << " ms";
        o.require(total > 100, "too few dispatches to be meaningful");
        o.require(min_slack >= 0, "spacing below motion + 2000 ms");
        o.require(min_locomotion_gap >= 3500, "locomotion spacing below 3500 ms");
        o.require(k1_lo == 3500 && k1_hi == 3500, "dense K=1 spacing not exactly 3500 ms");
        o.require(k5_lo == 3500 + 4, "dense K=5 spacing not 3500 + (K-1) frames");
    });

    criterion("kinematic identities", [](Outcome& o) {
        const MotionProfile p;
        std::mt19937_64 rng(0);
        std::uniform_real_distribution<double> pos(-1.5, 6.5);
        std::uniform_real_distribution<double> hd(0.0, 360.0);
        bool turn_ok = true;
        double worst = 0.0;
        for (int i = 0; i < 10000; ++i) {
            RobotState s;
            s.x = pos(rng);
            s.y = pos(rng) / 3.0;
            s.heading_deg = static_cast<double>(rng() % 360);
            const auto back = apply(apply(s, RobotCommand::TurnAround, p), RobotCommand::TurnAround, p);
            turn_ok = turn_ok && back.heading_deg == s.heading_deg;
            s.heading_deg = hd(rng);
            const auto r = apply(apply(s, RobotCommand::GoForward, p), RobotCommand::GoBackward, p);
            worst = std::max(worst, std::hypot(r.x - s.x, r.y - s.y));
        }
        const auto plan = default_zigzag_plan();
        const auto course = default_zigzag_course();
        std::ostringstream times;
        bool within = true;
        bool completed = true;
        const auto ref = run_command_script(course, plan, 1, 2000).status.elapsed_ms;
        for (std::int64_t dt : {1, 16, 100}) {
            const auto r = run_command_script(course, plan, dt, 2000);
            completed = completed && r.status.completed;
            within = within && std::llabs(r.status.elapsed_ms - ref) <= dt;
            times << " dt=" << dt << ":" << r.status.elapsed_ms;
        }
        o.detail << "TurnAround^2 " << (turn_ok ? "identity" : "NOT identity") << ", fwd/back max "
                 << worst << " m, course ms" << times.str();
        o.require(turn_ok, "TurnAround twice changed heading");
        o.require(worst <= 1e-9, "GoForward/GoBackward error > 1e-9 m");
        o.require(completed, "course not completed");
        o.require(within, "tick sizes disagree by more than one dt");
        o.require(ref == 112652, "scripted course time differs from hand-derived 112652 ms");
    });

    criterion("end-to-end replay fixture", [&](Outcome& o) {
        // Oracle: 10 lead-in frames at 50 ms, K = 5 frames to dispatch, then
        // 1500 ms motion + 2000 ms cooldown + 4 frames after the deadline
        // frame: command i at 700 + 3700 i. The last step reaches the final
        // waypoint 651.5 ms in, first seen by the frame at +700 ms; the
        // clock starts at the first command.
        const auto plan = default_zigzag_plan();
        for (const char* name : {"zigzag_body.session", "zigzag_hand.session"}) {
            const auto t0 = std::chrono::steady_clock::now();
            const auto rec = read_session(std::string(GQ_SOURCE_DIR) + "/fixtures/" + name);
            const auto a = replay(rec, cfg, default_zigzag_course(), ReplaySpeed::Max);
            const double secs =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            const auto b = replay(rec, cfg, default_zigzag_course(), ReplaySpeed::Max);
            std::vector<CommandEvent> cmds;
            for (const auto& e : a.events) {
                if (const auto* c = std::get_if<CommandEvent>(&e)) {
                    cmds.push_back(*c);
                }
            }
            bool seq = cmds.size() == plan.size();
            for (std::size_t i = 0; seq && i < cmds.size(); ++i) {
                seq = cmds[i].command == plan[i] &&
                      cmds[i].timestamp_ms == 700 + 3700 * static_cast<TimestampMs>(i);
            }
            const std::int64_t expected_elapsed = (700 + 3700 * 32 + 700) - 700;
            o.detail << name << ": " << cmds.size() << " cmds, elapsed " << a.summary.elapsed_ms
                     << " ms (" << format_mss(a.summary.elapsed_ms / 1000.0) << "), " << secs << " s; ";
            o.require(seq, std::string(name) + " command sequence/timing differs from oracle");
            o.require(a.summary.completed, std::string(name) + " course not completed");
            o.require(a.summary.elapsed_ms == expected_elapsed, std::string(name) + " elapsed differs");
            o.require(a.command_log == b.command_log, std::string(name) + " replays differ");
            o.require(a.command_log == command_log(rec.events), std::string(name) + " differs from recording");
            o.require(secs < 5.0, std::string(name) + " replay >= 5 s");
        }
    });

    criterion("ueq scoring", [](Outcome& o) {
        const auto map = load_item_map(std::string(GQ_SOURCE_DIR) + "/data/ueq_items.csv");
        auto plain = map;
        for (auto& it : plain.items) {
            it.reversed = false;
        }
        const UeqResponse all7{"p", "a", std::vector<int>(26, 7)};
        const UeqResponse all4{"p", "a", std::vector<int>(26, 4)};
        bool endpoints = true;
        for (UeqScale s : kAllUeqScales) {
            endpoints = endpoints && score(all7, plain)[s] == 3.0 && score(all4, map)[s] == 0.0;
        }
        // Mixed fixture on the perspicuity items.
        auto mixed_map = map;
        UeqResponse mixed = all4;
        const int answers[] = {7, 1, 6, 2};
        int k = 0;
        for (std::size_t i = 0; i < 26; ++i) {
            if (mixed_map.items[i].scale == UeqScale::Perspicuity) {
                mixed_map.items[i].reversed = k % 2 == 1;
                mixed.answers[i] = answers[k++];
            }
        }
        const double mixed_score = score(mixed, mixed_map)[UeqScale::Perspicuity];

        // Welch on the textbook fixture against scipy (frozen) and a direct
        // Boost.Math computation.
        const std::vector<double> a{1, 2, 3, 4, 5};
        const std::vector<double> b{2, 3, 4, 5, 6};
        const auto w = t_test(a, b, TTest::Welch);
        const double va = 2.5;
        const double vb = 2.5;
        const double se2 = va / 5 + vb / 5;
        const double t_ref = (3.0 - 4.0) / std::sqrt(se2);
        const double df_ref = se2 * se2 / ((va / 5) * (va / 5) / 4 + (vb / 5) * (vb / 5) / 4);
        const double p_ref = 2.0 * boost::math::cdf(boost::math::students_t(df_ref), -std::fabs(t_ref));
        const double p_scipy = 0.34659350708733416;

        // Itemwise dominance.
        std::mt19937_64 rng(0);
        bool dominance = true;
        for (int trial = 0; trial < 200 && dominance; ++trial) {
            std::vector<ScaleScores> ga;
            std::vector<ScaleScores> gb;
            for (int p = 0; p < 7; ++p) {
                UeqResponse hi = all4;
                UeqResponse lo = all4;
                for (std::size_t i = 0; i < 26; ++i) {
                    const int x = 1 + static_cast<int>(rng() % 7);
                    const int y = x + static_cast<int>(rng() % static_cast<unsigned>(8 - x));
                    // Higher answer = more positive unless reversed.
                    hi.answers[i] = map.items[i].reversed ? x : y;
                    lo.answers[i] = map.items[i].reversed ? y : x;
                }
                ga.push_back(score(hi, map));
                gb.push_back(score(lo, map));
            }
            for (const auto& row : compare(ga, gb)) {
                dominance = dominance && row.mean_a >= row.mean_b;
            }
        }
        o.detail << "endpoints " << (endpoints ? "exact" : "WRONG") << ", mixed " << mixed_score
                 << ", welch t " << w.t << " df " << w.df << " p " << w.p << " (ref p " << p_ref
                 << "), dominance " << (dominance ? "holds" : "VIOLATED");
        o.require(endpoints, "endpoint fixtures");
        o.require(mixed_score == 2.5, "mixed fixture != 2.5");
        o.require(std::fabs(w.t - t_ref) <= 1e-6 && std::fabs(w.df - df_ref) <= 1e-6, "t/df vs oracle");
        o.require(std::fabs(w.p - p_ref) <= 1e-6 && std::fabs(w.p - p_scipy) <= 1e-6, "p vs oracle");
        o.require(dominance, "scale dominance");
    });

    criterion("time formatting + IQR", [](Outcome& o) {
        const bool fmt = format_mss(193) == "3:13" && parse_mss("3:13") == 193.0 &&
                         format_mss(parse_mss("3:26")) == "3:26";
        const std::vector<double> two{193, 213};
        const auto m = time_stats(two);
        bool roundtrip = true;
        for (int s = 0; s < 3600; ++s) {
            roundtrip = roundtrip && parse_mss(format_mss(s)) == s;
        }
        const std::vector<double> x{100, 101, 102, 103, 500};
        const auto st = time_stats(x);
        o.detail << "193 s -> " << format_mss(193) << ", mean of [193,213] -> " << format_mss(m.mean)
                 << ", fences [" << st.lower_fence << ", " << st.upper_fence << "], outliers "
                 << st.outliers.size();
        o.require(fmt && roundtrip, "m:ss round trip");
        o.require(format_mss(m.mean) == "3:23", "mean rendering");
        o.require(st.outliers.size() == 1 && st.outliers[0] == 500.0 && st.upper_fence < 500.0,
                  "expected exactly the upper-end outlier 500");
    });

    criterion("runs without secondary component", [](Outcome& o) {
        // This binary links only the core library: no server, no console
        // assets. Everything above ran in-process.
        o.detail << "core library only; no console directory or network used";
    });

    std::printf("%s: %d failed\n", failures == 0 ? "ACCEPTED" : "NOT ACCEPTED", failures);
    return failures;
}
