#include <benchmark/benchmark.h>

#include <random>

#include "cardvision/detector.hpp"
#include "cardvision/filters.hpp"
#include "cardvision/matching.hpp"
#include "cardvision/semantics.hpp"
#include "cardvision/synth.hpp"
#include "cardvision/templates.hpp"

using namespace cardvision;

namespace {

RealImage noise(int w, int h, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(0, 255);
  RealImage img(w, h);
  for (auto& v : img.pixels()) v = d(rng);
  return img;
}

const TemplateSet& deck_templates() {
  static const TemplateSet ts = build_templates(render_deck(), SemanticsConfig{}, {});
  return ts;
}

}  // namespace

static void BM_normxcorr(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const RealImage t = noise(24, 32, 1), f = noise(n, n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(normxcorr(t, f));
}
BENCHMARK(BM_normxcorr)->Arg(48)->Arg(96)->Arg(192);

static void BM_conv2(benchmark::State& state) {
  const RealImage img = noise(640, 480, 3);
  const Kernel k = gaussian_kernel(1.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(conv2_same(img, k));
}
BENCHMARK(BM_conv2)->Arg(3)->Arg(7);

static void BM_read_card(benchmark::State& state) {
  const TemplateSet& ts = deck_templates();
  const GrayImage card = render_card(Rank::Queen, Suit::Heart);
  for (auto _ : state) benchmark::DoNotOptimize(read_card(card, ts, {}));
}
BENCHMARK(BM_read_card);

static void BM_detect_scene(benchmark::State& state) {
  const TemplateSet& ts = deck_templates();
  const SceneRender r = render_scene(detection_suite()[0]);
  for (auto _ : state) benchmark::DoNotOptimize(detect(r.image, ts, {}));
}
BENCHMARK(BM_detect_scene)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
