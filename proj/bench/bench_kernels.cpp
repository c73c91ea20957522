#include "radproj/generators.hpp"
#include "radproj/radial.hpp"
#include "radproj/substitution.hpp"
#include "radproj/visibility.hpp"

#include <benchmark/benchmark.h>

using namespace radproj;

namespace {

const PointSet& lattice_patch() {
  static const PointSet ps = gen_lattice(600);
  return ps;
}

const PointSet& ab_patch() {
  static const PointSet ps = gen_cms(cms_ab(), 300);
  return ps;
}

const PointSet& visible_lattice() {
  static const PointSet ps = visible_z2(lattice_patch());
  return ps;
}

const SubstitutionRule& lb_rule() {
  static const SubstitutionRule rule = SubstitutionRule::load(resolve_rule_path("lancon_billard"));
  return rule;
}

const std::vector<PlacedTile>& lb_tiles() {
  static const std::vector<PlacedTile> tiles = [] {
    auto t = lb_rule().seed;
    for (int i = 0; i < 7; ++i) t = inflate(lb_rule(), t);
    return t;
  }();
  return tiles;
}

void BM_GenCms(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(gen_cms(cms_ab(), 300));
}
void BM_GenCmsSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(serial::gen_cms(cms_ab(), 300));
}

void BM_GenPoisson(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(gen_poisson(400, 1.0, 1));
}
void BM_GenPoissonSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(serial::gen_poisson(400, 1.0, 1));
}

void BM_MaskZ2(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(visibility_mask_z2(lattice_patch()));
}
void BM_MaskZ2Serial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(serial::visibility_mask_z2(lattice_patch()));
}

void BM_MaskCms(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(visibility_mask_cms(ab_patch(), cms_ab()));
}
void BM_MaskCmsSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(serial::visibility_mask_cms(ab_patch(), cms_ab()));
}

void BM_MaskBruteForce(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(visibility_mask_brute_force(ab_patch()));
}

void BM_ProjectAngles(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(project_angles(visible_lattice()));
}
void BM_ProjectAnglesSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(serial::project_angles(visible_lattice()));
}

void BM_Inflate(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(inflate(lb_rule(), lb_tiles()));
}
void BM_InflateSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(serial::inflate(lb_rule(), lb_tiles()));
}

} // namespace

BENCHMARK(BM_GenCms)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GenCmsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GenPoisson)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GenPoissonSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MaskZ2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MaskZ2Serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MaskCms)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MaskCmsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MaskBruteForce)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProjectAngles)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProjectAnglesSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Inflate)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_InflateSerial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
