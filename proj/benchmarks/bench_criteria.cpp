#include <benchmark/benchmark.h>

#include "steer/criteria.hpp"
#include "steer/distributions.hpp"
#include "steer/entropy.hpp"
#include "steer/lhs.hpp"
#include "steer/robustness.hpp"

namespace {

using namespace steer;

void BM_PartialTrace(benchmark::State &state) {
    const auto rho = white_noise_mix(w_state(), 0.9);
    for (auto _ : state) benchmark::DoNotOptimize(partial_trace(rho, {0, 2}));
}
BENCHMARK(BM_PartialTrace);

void BM_JointDistribution(benchmark::State &state) {
    const auto rho = white_noise_mix(ghz_state(), 0.9);
    const auto x = pauli_x();
    for (auto _ : state) benchmark::DoNotOptimize(joint_distribution(rho, {x, x, x}));
}
BENCHMARK(BM_JointDistribution);

void BM_ConditionalEntropy(benchmark::State &state) {
    const auto dist = joint_distribution(white_noise_mix(w_state(), 0.8), {pauli_x(), pauli_x(), pauli_x()});
    for (auto _ : state) benchmark::DoNotOptimize(conditional_entropy(dist, {2}, {0, 1}));
}
BENCHMARK(BM_ConditionalEntropy);

void BM_EvaluateOneToTwo(benchmark::State &state) {
    const auto rho = white_noise_mix(ghz_state(), 0.9);
    const auto obs = pauli_observables();
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_one_to_two(rho, obs));
}
BENCHMARK(BM_EvaluateOneToTwo);

void BM_EvaluateQutrits(benchmark::State &state) {
    const auto rho = DensityOperator::maximally_mixed(PartyLayout({3, 3, 3}));
    const TripartiteObservables obs{mub_pair(3), mub_pair(3), mub_pair(3)};
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_one_to_two(rho, obs));
}
BENCHMARK(BM_EvaluateQutrits);

void BM_Threshold(benchmark::State &state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(find_threshold(Family::GhzNoise, CriterionId::OneToTwoA, BoundKind::Steering));
    }
}
BENCHMARK(BM_Threshold)->Unit(benchmark::kMillisecond);

void BM_VerifyLhsModel(benchmark::State &state) {
    const auto models = sample_lhs(64, {static_cast<std::size_t>(state.range(0)), {2, 2, 2}}, 1);
    const auto obs = pauli_observables();
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(verify_no_violation(models[i++ % models.size()], obs));
}
BENCHMARK(BM_VerifyLhsModel)->Arg(1)->Arg(4)->Arg(16);

}  // namespace

// The packaged benchmark_main archive carries LTO bytecode from another compiler release.
BENCHMARK_MAIN();
