// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include <random>

#include "irviz/analysis.hpp"
#include "irviz/diff_merge.hpp"
#include "irviz/synth.hpp"

namespace {

using namespace irviz;

const DumpBundle& full_scale_bundle() {
  static const DumpBundle b = generate_bundle(1, SynthSpec{}).bundle;
  return b;
}

void BM_DiffVariantsSerial(benchmark::State& state) {
  const DumpBundle& b = full_scale_bundle();
  for (auto _ : state) benchmark::DoNotOptimize(diff_variants_serial(b.original, b.variants));
}

void BM_DiffVariantsParallel(benchmark::State& state) {
  const DumpBundle& b = full_scale_bundle();
  for (auto _ : state) benchmark::DoNotOptimize(diff_variants(b.original, b.variants));
}

Hypergraph dense_hypergraph(std::size_t lines, std::size_t stations) {
  std::mt19937_64 rng(lines * 7919 + stations);
  std::bernoulli_distribution member(0.2);
  Hypergraph h;
  for (std::size_t i = 0; i < lines; ++i) {
    Hyperedge e{std::to_string(i), "P" + std::to_string(i), {}};
    for (NodeId s = 0; s < stations; ++s) {
      if (member(rng)) e.members.insert(s);
    }
    h.hyperedges.push_back(std::move(e));
  }
  return h;
}

void BM_PhaseRelationshipsSerial(benchmark::State& state) {
  const Hypergraph h = dense_hypergraph(static_cast<std::size_t>(state.range(0)), 2000);
  for (auto _ : state) benchmark::DoNotOptimize(phase_relationships_serial(h));
}

void BM_PhaseRelationshipsParallel(benchmark::State& state) {
  const Hypergraph h = dense_hypergraph(static_cast<std::size_t>(state.range(0)), 2000);
  for (auto _ : state) benchmark::DoNotOptimize(phase_relationships(h));
}

}  // namespace

BENCHMARK(BM_DiffVariantsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DiffVariantsParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PhaseRelationshipsSerial)->Arg(40)->Arg(160)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PhaseRelationshipsParallel)->Arg(40)->Arg(160)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
