#include "gesturequad/kernels.hpp"

#include "gesturequad/body_classifier.hpp"
#include "gesturequad/error.hpp"
#include "gesturequad/hand_classifier.hpp"

#include <cstddef>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gq::kernels {

namespace {

void require_same_size(std::size_t in, std::size_t out) {
    if (in != out) {
        throw Error(ErrorCode::InvalidArgument, "kernel output span size mismatch");
    }
}

double angle_or_nan(const AngleTriple& t) {
    try {
        return joint_angle(t.vertex, t.p1, t.p2);
    } catch (const Error&) {
        return std::numeric_limits<double>::quiet_NaN();
    }
}

// Signed index type for OpenMP loops.
using Index = std::ptrdiff_t;

}  // namespace

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

namespace serial {

void joint_angles(std::span<const AngleTriple> in, std::span<double> out) {
    require_same_size(in.size(), out.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
        out[i] = angle_or_nan(in[i]);
    }
}

void compute_angles(std::span<const BodyFrame> frames, double vis_threshold,
                    std::span<AngleVector> out) {
    require_same_size(frames.size(), out.size());
    for (std::size_t i = 0; i < frames.size(); ++i) {
        out[i] = gq::compute_angles(frames[i], vis_threshold);
    }
}

void classify_body(std::span<const BodyFrame> frames, const GestureConfig& config,
                   std::span<Gesture> out) {
    require_same_size(frames.size(), out.size());
    for (std::size_t i = 0; i < frames.size(); ++i) {
        out[i] = classify_body_frame(frames[i], config);
    }
}

void classify_hand(std::span<const HandFrame> frames, const GestureConfig& config,
                   std::span<Gesture> out) {
    require_same_size(frames.size(), out.size());
    for (std::size_t i = 0; i < frames.size(); ++i) {
        out[i] = gq::classify_hand(frames[i], config);
    }
}

void count_hand_predicates(std::span<const HandFrame> frames, const GestureConfig& config,
                           std::span<int> out) {
    require_same_size(frames.size(), out.size());
    for (std::size_t i = 0; i < frames.size(); ++i) {
        out[i] = gq::count_hand_predicates(frames[i], config);
    }
}

}  // namespace serial

namespace parallel {

void joint_angles(std::span<const AngleTriple> in, std::span<double> out) {
    require_same_size(in.size(), out.size());
    const auto n = static_cast<Index>(in.size());
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < n; ++i) {
        out[i] = angle_or_nan(in[i]);
    }
}

void compute_angles(std::span<const BodyFrame> frames, double vis_threshold,
                    std::span<AngleVector> out) {
    require_same_size(frames.size(), out.size());
    const auto n = static_cast<Index>(frames.size());
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < n; ++i) {
        out[i] = gq::compute_angles(frames[i], vis_threshold);
    }
}

void classify_body(std::span<const BodyFrame> frames, const GestureConfig& config,
                   std::span<Gesture> out) {
    require_same_size(frames.size(), out.size());
    const auto n = static_cast<Index>(frames.size());
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < n; ++i) {
        out[i] = classify_body_frame(frames[i], config);
    }
}

void classify_hand(std::span<const HandFrame> frames, const GestureConfig& config,
                   std::span<Gesture> out) {
    require_same_size(frames.size(), out.size());
    const auto n = static_cast<Index>(frames.size());
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < n; ++i) {
        out[i] = gq::classify_hand(frames[i], config);
    }
}

void count_hand_predicates(std::span<const HandFrame> frames, const GestureConfig& config,
                           std::span<int> out) {
    require_same_size(frames.size(), out.size());
    const auto n = static_cast<Index>(frames.size());
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < n; ++i) {
        out[i] = gq::count_hand_predicates(frames[i], config);
    }
}

}  // namespace parallel

}  // namespace gq::kernels
