// Serial reference vs OpenMP render vs brute-force candidate search.
//
//   fexray_bench --benchmark_filter=Render

#include "fexray/detector.hpp"
#include "fexray/locate.hpp"
#include "fexray/obb_tree.hpp"
#include "fexray/phantoms.hpp"
#include "fexray/render.hpp"

#include <benchmark/benchmark.h>

#include <omp.h>

#include <random>

using namespace fexray;

namespace {

const Phantom& ball() {
  static const Phantom p = generate_ball();
  return p;
}

const Phantom& cylinder() {
  static const Phantom p = generate_cylinder();
  return p;
}

IntegrationSettings with_step(double step) {
  IntegrationSettings s;
  s.step = step;
  return s;
}

void set_counters(benchmark::State& state, const ProjectionImage& img) {
  state.counters["rays/s"] =
      benchmark::Counter(static_cast<double>(img.stats.rays), benchmark::Counter::kIsIterationInvariantRate);
  state.counters["samples/s"] =
      benchmark::Counter(static_cast<double>(img.stats.samples), benchmark::Counter::kIsIterationInvariantRate);
  state.counters["newton_it/sample"] =
      static_cast<double>(img.stats.newton_iterations) / static_cast<double>(img.stats.samples_inside);
}

// Argument: rays per cm^2.
void BM_RenderSerial(benchmark::State& state) {
  const Renderer r(ball().mesh, ball().field, with_step(0.01));
  const Detector d = make_detector(model_box(ball().mesh), Face::pos_x, static_cast<double>(state.range(0)));
  ProjectionImage img;
  for (auto _ : state) {
    img = r.render_serial(d);
    benchmark::DoNotOptimize(img.density.data());
  }
  set_counters(state, img);
}
BENCHMARK(BM_RenderSerial)->Arg(250)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond)->UseRealTime();

// Arguments: rays per cm^2, threads.
void BM_RenderOpenMP(benchmark::State& state) {
  const Renderer r(ball().mesh, ball().field, with_step(0.01));
  const Detector d = make_detector(model_box(ball().mesh), Face::pos_x, static_cast<double>(state.range(0)));
  const int threads = static_cast<int>(state.range(1));
  ProjectionImage img;
  for (auto _ : state) {
    img = r.render(d, threads);
    benchmark::DoNotOptimize(img.density.data());
  }
  set_counters(state, img);
  state.counters["threads"] = img.stats.threads;
}
BENCHMARK(BM_RenderOpenMP)
    ->ArgsProduct({{1000, 4000}, {1, 2, 4}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

void BM_RenderBruteForce(benchmark::State& state) {
  const Renderer r(ball().mesh, ball().field, with_step(0.01), {}, CandidateMode::brute_force);
  const Detector d = make_detector(model_box(ball().mesh), Face::pos_x, static_cast<double>(state.range(0)));
  ProjectionImage img;
  for (auto _ : state) {
    img = r.render_serial(d);
    benchmark::DoNotOptimize(img.density.data());
  }
  set_counters(state, img);
}
BENCHMARK(BM_RenderBruteForce)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond)->UseRealTime();

// Tree vs brute force where the element count makes the difference.
void BM_RenderCylinder(benchmark::State& state) {
  const auto mode = state.range(0) ? CandidateMode::brute_force : CandidateMode::tree;
  const Renderer r(cylinder().mesh, cylinder().field, with_step(0.1), {}, mode);
  const Detector d = make_detector(model_box(cylinder().mesh), Face::pos_z, 1000.0);
  ProjectionImage img;
  for (auto _ : state) {
    img = r.render_serial(d);
    benchmark::DoNotOptimize(img.density.data());
  }
  set_counters(state, img);
  state.SetLabel(state.range(0) ? "brute_force" : "tree");
}
BENCHMARK(BM_RenderCylinder)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_BuildTree(benchmark::State& state) {
  const Phantom& p = state.range(0) ? cylinder() : ball();
  for (auto _ : state) benchmark::DoNotOptimize(build_obb_tree(p.mesh, 10).nodes().size());
  state.SetLabel(state.range(0) ? "cylinder" : "ball");
}
BENCHMARK(BM_BuildTree)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SolveLocal(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 0.33);
  std::vector<std::pair<ElementGeometry, Vec3>> cases;
  for (int k = 0; k < 1024; ++k) {
    const ElementGeometry g = ball().mesh.geometry(rng() % ball().mesh.element_count());
    cases.emplace_back(g, g.map(LocalCoords(u(rng), u(rng), u(rng))));
  }
  std::size_t k = 0;
  for (auto _ : state) {
    const auto& [g, x] = cases[k++ & 1023];
    benchmark::DoNotOptimize(solve_local(g, x, {}));
  }
}
BENCHMARK(BM_SolveLocal);

}  // namespace

BENCHMARK_MAIN();
