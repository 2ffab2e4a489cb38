#include <benchmark/benchmark.h>

#include <cstdint>

#include "maskkit/augment.hpp"
#include "maskkit/grid.hpp"
#include "maskkit/occlusion.hpp"
#include "maskkit/patterns.hpp"
#include "maskkit/propagation.hpp"
#include "maskkit/rng.hpp"

using namespace maskkit;

namespace {

// range(0) is the grid side: 7 for 224/32, 14 for 224/16.
template <class Spec>
void BM_Generate(benchmark::State& state, Spec spec) {
  const int side = static_cast<int>(state.range(0));
  const PatchGrid grid = PatchGrid::lattice(side, side);
  Rng rng(1);
  for (auto _ : state) {
    MaskMap m = generate(spec, grid, rng);
    benchmark::DoNotOptimize(m);
  }
  state.SetItemsProcessed(state.iterations());
}

BENCHMARK_CAPTURE(BM_Generate, mesh, PatternSpec{MeshSpec{0.6}})->Arg(7)->Arg(14);
BENCHMARK_CAPTURE(BM_Generate, random, PatternSpec{RandomSpec{0.6}})->Arg(7)->Arg(14);
BENCHMARK_CAPTURE(BM_Generate, square, PatternSpec{SquareSpec{2, 0.6}})->Arg(7)->Arg(14);
BENCHMARK_CAPTURE(BM_Generate, blockwise, PatternSpec{BlockWiseSpec{0.6}})->Arg(7)->Arg(14);

void BM_ExactMeshOcclusion(benchmark::State& state) {
  const PatchGrid grid = PatchGrid::lattice(7, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_mesh_occlusion(grid, 0.6, Region{1, 1, 3, 2}));
  }
}
BENCHMARK(BM_ExactMeshOcclusion);

void BM_ExactRandomOcclusion(benchmark::State& state) {
  const PatchGrid grid = PatchGrid::lattice(7, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_random_occlusion(grid, 0.6, Region{1, 1, 3, 2}));
  }
}
BENCHMARK(BM_ExactRandomOcclusion);

void BM_MonteCarloOcclusion(benchmark::State& state) {
  const PatchGrid grid = PatchGrid::lattice(7, 7);
  const auto threads = static_cast<unsigned>(state.range(0));
  constexpr std::uint64_t kTrials = 100000;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mc_occlusion(MeshSpec{0.6}, grid, Region{0, 0, 2, 2}, kTrials, 7, threads));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(kTrials));
}
BENCHMARK(BM_MonteCarloOcclusion)->Arg(1)->Arg(4)->UseRealTime();

void BM_Propagate(benchmark::State& state) {
  const PatchGrid grid = PatchGrid::lattice(14, 14);
  const MaskMap mask = gen_random(grid, 0.75, 3);
  const StageStack stack{4, 2, 1};
  const auto mode = state.range(0) == 0 ? PropagationMode::dense : PropagationMode::sparse;
  for (auto _ : state) {
    benchmark::DoNotOptimize(propagate(mask, stack, mode));
  }
}
BENCHMARK(BM_Propagate)->Arg(0)->Arg(1);

void BM_RandomResizedCrop(benchmark::State& state) {
  GrayImage img(512, 512, 255, 100);
  Rng rng(5);
  const CropSpec spec = CropSpec::downstream();
  for (auto _ : state) {
    benchmark::DoNotOptimize(random_resized_crop(img, spec, rng));
  }
}
BENCHMARK(BM_RandomResizedCrop);

}  // namespace

BENCHMARK_MAIN();
