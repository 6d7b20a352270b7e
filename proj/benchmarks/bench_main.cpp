// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "ptqsd/optics.hpp"
#include "ptqsd/photonlab.hpp"
#include "ptqsd/three_state.hpp"
#include "ptqsd/two_state.hpp"

namespace {

using namespace ptqsd;

void BM_Propagator(benchmark::State& state) {
  const PtHamiltonian h = hamiltonian_from_strength(3.0, 1.0);
  double t = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(propagator(h, t));
    t += 1e-6;
  }
}
BENCHMARK(BM_Propagator);

void BM_Svd2(benchmark::State& state) {
  const Mat2 m = propagator(hamiltonian_from_strength(3.0, 1.0), 0.4).matrix;
  for (auto _ : state) benchmark::DoNotOptimize(svd2(m));
}
BENCHMARK(BM_Svd2);

void BM_OrthogonalityTimes(benchmark::State& state) {
  const PtHamiltonian h = hamiltonian_from_strength(2.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(orthogonality_times(kPi / 3, h));
}
BENCHMARK(BM_OrthogonalityTimes);

void BM_MutualInformation(benchmark::State& state) {
  const StatePair pair = make_pair(kPi / 3);
  const PtHamiltonian h = hamiltonian_from_strength(3.0, 1.0);
  const auto times = orthogonality_times(kPi / 3, h);
  const DensityMatrix r1 = DensityMatrix::pure(pair.psi1);
  const DensityMatrix r2 = DensityMatrix::pure(pair.psi2);
  for (auto _ : state) {
    const DiscriminationPovm povm = discrimination_povm(pair, h, times->t0);
    benchmark::DoNotOptimize(mutual_information(povm, r1, r2));
  }
}
BENCHMARK(BM_MutualInformation);

void BM_StageOne(benchmark::State& state) {
  const auto s = uniform_triple(kPi / 3);
  const CanonicalTriple triple = canonicalize(s[0], s[1], s[2]);
  for (auto _ : state) benchmark::DoNotOptimize(stage_one(triple, 1.2, 1.0));
}
BENCHMARK(BM_StageOne);

void BM_DecomposeLossy(benchmark::State& state) {
  const Mat2 m = propagator(hamiltonian_from_strength(3.0, 1.0), 0.3).matrix;
  for (auto _ : state) benchmark::DoNotOptimize(optics::decompose_lossy(m));
}
BENCHMARK(BM_DecomposeLossy);

void BM_SimulateCounts(benchmark::State& state) {
  const StatePair pair = make_pair(kPi / 3);
  const Mat2 v =
      physical_evolution(propagator(hamiltonian_from_strength(1.1, 1.0), 0.9));
  const std::vector<Mat2> effects = {v.adjoint() * v};
  const std::vector<std::string> labels = {"detected"};
  const auto shots = static_cast<std::uint64_t>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_counts(pair.psi1, effects, labels, shots, seed++));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(shots));
}
BENCHMARK(BM_SimulateCounts)->Arg(1000)->Arg(30000);

void BM_Tomography(benchmark::State& state) {
  const Mat2 v =
      physical_evolution(propagator(hamiltonian_from_strength(1.1, 1.0), 0.9));
  const Ket2 out = (v * make_pair(kPi / 3).psi1).normalized();
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tomography(out, {10000, seed++, false, false}));
  }
}
BENCHMARK(BM_Tomography);

}  // namespace

BENCHMARK_MAIN();
