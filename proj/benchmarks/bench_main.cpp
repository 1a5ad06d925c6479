#include <memory>
#include <random>

#include <benchmark/benchmark.h>

#include "sl0mca/decompose.hpp"
#include "sl0mca/inpaint.hpp"
#include "sl0mca/sl0.hpp"
#include "sl0mca/synthetic.hpp"
#include "sl0mca/transforms.hpp"
#include "sl0mca/tv.hpp"

namespace {

using namespace sl0mca;

ImageGrid noise_image(std::size_t n) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> dist;
  ImageGrid img(n, n);
  for (auto& v : img.vector()) v = dist(rng);
  return img;
}

void BM_BlockDctAnalyze(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ImageGrid img = noise_image(n);
  for (auto _ : state) benchmark::DoNotOptimize(block_dct_analyze(img, 32));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n));
}
BENCHMARK(BM_BlockDctAnalyze)->Arg(64)->Arg(256)->Arg(512);

void BM_MultiscaleAnalyze(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ImageGrid img = noise_image(n);
  for (auto _ : state) benchmark::DoNotOptimize(multiscale_analyze(img, 6));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n));
}
BENCHMARK(BM_MultiscaleAnalyze)->Arg(64)->Arg(256)->Arg(512);

void BM_TvCorrection(benchmark::State& state) {
  const ImageGrid img = noise_image(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(tv_correction_step(img, 0.01, 1e-3));
}
BENCHMARK(BM_TvCorrection)->Arg(256);

void BM_Sl0Solve(benchmark::State& state) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> dist;
  Eigen::MatrixXd phi(10, 20);
  for (auto& v : phi.reshaped()) v = dist(rng);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(20);
  x[2] = 1.0;
  x[9] = -0.5;
  x[15] = 0.8;
  const Eigen::VectorXd b = phi * x;
  const ExplicitDictionary op(phi);
  const SigmaSchedule schedule = make_sigma_schedule(x, 30, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(sl0_solve(op, b, schedule));
}
BENCHMARK(BM_Sl0Solve);

void BM_InpaintDefault(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  SceneOptions opts;
  opts.size = n;
  const SyntheticScene scene = make_cartoon_texture_scene(opts);
  const MaskGrid mask = make_random_mask(n, n, 0.2, 1);
  const CombinedOperator comb(std::make_shared<BlockDctDictionary>(n, n, 32),
                              std::make_shared<MultiscaleDictionary>(n, n, 6));
  for (auto _ : state) benchmark::DoNotOptimize(inpaint(scene.image, mask, comb));
}
BENCHMARK(BM_InpaintDefault)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_DecomposeDefault(benchmark::State& state) {
  const SyntheticScene scene = make_cartoon_texture_scene();
  const CombinedOperator comb(std::make_shared<BlockDctDictionary>(64, 64, 32),
                              std::make_shared<MultiscaleDictionary>(64, 64, 6));
  for (auto _ : state) benchmark::DoNotOptimize(decompose(scene.image, comb));
}
BENCHMARK(BM_DecomposeDefault)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
