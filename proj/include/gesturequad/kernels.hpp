#pragma once

// Batch kernels over frame arrays. Each kernel has an OpenMP version and a
// plain serial reference with identical results; tests compare the two and
// bench/ times them.

#include "gesturequad/angles.hpp"
#include "gesturequad/gesture_config.hpp"
#include "gesturequad/types.hpp"

#include <span>

namespace gq::kernels {

struct AngleTriple {
    Point2 vertex;
    Point2 p1;
    Point2 p2;
};

/// Number of threads the parallel kernels will use (1 without OpenMP).
int max_threads();

namespace serial {

/// Degenerate triples produce NaN.
void joint_angles(std::span<const AngleTriple> in, std::span<double> out);
void compute_angles(std::span<const BodyFrame> frames, double vis_threshold,
                    std::span<AngleVector> out);
void classify_body(std::span<const BodyFrame> frames, const GestureConfig& config,
                   std::span<Gesture> out);
void classify_hand(std::span<const HandFrame> frames, const GestureConfig& config,
                   std::span<Gesture> out);
void count_hand_predicates(std::span<const HandFrame> frames, const GestureConfig& config,
                           std::span<int> out);

}  // namespace serial

namespace parallel {

void joint_angles(std::span<const AngleTriple> in, std::span<double> out);
void compute_angles(std::span<const BodyFrame> frames, double vis_threshold,
                    std::span<AngleVector> out);
void classify_body(std::span<const BodyFrame> frames, const GestureConfig& config,
                   std::span<Gesture> out);
void classify_hand(std::span<const HandFrame> frames, const GestureConfig& config,
                   std::span<Gesture> out);
void count_hand_predicates(std::span<const HandFrame> frames, const GestureConfig& config,
                           std::span<int> out);

}  // namespace parallel

}  // namespace gq::kernels
