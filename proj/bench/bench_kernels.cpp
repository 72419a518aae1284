#include "gesturequad/derive.hpp"
#include "gesturequad/kernels.hpp"
#include "gesturequad/synthetic.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace gq;

namespace {

std::vector<kernels::AngleTriple> triples(std::size_t n) {
    std::mt19937_64 rng(0);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<kernels::AngleTriple> v(n);
    for (auto& t : v) {
        t = {{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}};
    }
    return v;
}

std::vector<BodyFrame> body_frames(std::size_t n) {
    std::mt19937_64 rng(1);
    std::vector<BodyFrame> v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        v.push_back(synth::perturb(synth::canonical_body_frame(kBodyGestures[i % 9]), 0.02, rng));
    }
    return v;
}

std::vector<HandFrame> hand_frames(std::size_t n) {
    std::mt19937_64 rng(2);
    std::vector<HandFrame> v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        v.push_back(synth::perturb(synth::canonical_hand_frame(kHandGestures[i % 9]), 0.02, rng));
    }
    return v;
}

template <bool Parallel>
void BM_JointAngles(benchmark::State& state) {
    const auto in = triples(static_cast<std::size_t>(state.range(0)));
    std::vector<double> out(in.size());
    for (auto _ : state) {
        if constexpr (Parallel) {
            kernels::parallel::joint_angles(in, out);
        } else {
            kernels::serial::joint_angles(in, out);
        }
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_ClassifyBody(benchmark::State& state) {
    const auto frames = body_frames(static_cast<std::size_t>(state.range(0)));
    const auto& cfg = bundled_default_config();
    std::vector<Gesture> out(frames.size());
    for (auto _ : state) {
        if constexpr (Parallel) {
            kernels::parallel::classify_body(frames, cfg, out);
        } else {
            kernels::serial::classify_body(frames, cfg, out);
        }
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_HandPredicates(benchmark::State& state) {
    const auto frames = hand_frames(static_cast<std::size_t>(state.range(0)));
    const auto& cfg = bundled_default_config();
    std::vector<int> out(frames.size());
    for (auto _ : state) {
        if constexpr (Parallel) {
            kernels::parallel::count_hand_predicates(frames, cfg, out);
        } else {
            kernels::serial::count_hand_predicates(frames, cfg, out);
        }
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_NoiseStability(benchmark::State& state) {
    const auto& cfg = bundled_default_config();
    for (auto _ : state) {
        benchmark::DoNotOptimize(noise_stability(cfg, GestureName::TPose, 1000, 0.02, 0));
    }
}

}  // namespace

BENCHMARK(BM_JointAngles<false>)->Arg(100000);
BENCHMARK(BM_JointAngles<true>)->Arg(100000);
BENCHMARK(BM_ClassifyBody<false>)->Arg(20000);
BENCHMARK(BM_ClassifyBody<true>)->Arg(20000);
BENCHMARK(BM_HandPredicates<false>)->Arg(100000);
BENCHMARK(BM_HandPredicates<true>)->Arg(100000);
BENCHMARK(BM_NoiseStability);

BENCHMARK_MAIN();
