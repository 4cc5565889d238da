#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "scalewall/kernels.hpp"
#include "scalewall/lsr.hpp"
#include "scalewall/random.hpp"

using namespace scalewall;

namespace {

struct Layout {
  double side;
  std::vector<Vec2> positions;
};

Layout layout(int n, std::uint64_t seed) {
  const double side = std::sqrt(n * std::numbers::pi * 1e4 / 8.0);
  Rng rng(seed);
  Layout l{side, std::vector<Vec2>(static_cast<std::size_t>(n))};
  for (auto& p : l.positions) p = {rng.uniform(0.0, side), rng.uniform(0.0, side)};
  return l;
}

// Routes from each node's full view of an older layout, checked against the current one.
struct Snapshot {
  GroundTruthGraph truth;
  std::vector<int> component;
  std::vector<RoutingTable> tables;
  PairSet pairs;
};

Snapshot snapshot(int n) {
  auto now = layout(n, 1);
  auto before = now;
  Rng jitter(2);
  for (auto& p : before.positions) {
    p.x = std::clamp(p.x + jitter.uniform(-20.0, 20.0), 0.0, now.side);
    p.y = std::clamp(p.y + jitter.uniform(-20.0, 20.0), 0.0, now.side);
  }
  const auto belief = kernels::serial::disk_graph(before.positions, 100.0);
  auto truth = GroundTruthGraph::from_adjacency(kernels::serial::disk_graph(now.positions, 100.0));
  auto comp = components(truth);
  std::vector<RoutingTable> tables;
  for (int i = 0; i < n; ++i) {
    LinkStateDatabase db(i, n);
    for (int u = 0; u < n; ++u) db.process(std::make_shared<LinkStateUpdate>(LinkStateUpdate{u, 1, belief[u], 0.0}), u);
    tables.push_back(compute_routes(db));
  }
  return {std::move(truth), std::move(comp), std::move(tables),
          n > 200 ? PairSet::sample(n, 20000, 3) : PairSet::all(n)};
}

void BM_DiskGraphSerial(benchmark::State& st) {
  const auto l = layout(static_cast<int>(st.range(0)), 7);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::disk_graph(l.positions, 100.0));
}

void BM_DiskGraphParallel(benchmark::State& st) {
  const auto l = layout(static_cast<int>(st.range(0)), 7);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::parallel::disk_graph(l.positions, 100.0, l.side));
}

void BM_ClassifySerial(benchmark::State& st) {
  const auto s = snapshot(static_cast<int>(st.range(0)));
  std::vector<PairStatus> out(s.pairs.size());
  for (auto _ : st) {
    kernels::serial::classify_pairs(s.pairs, s.tables, s.truth, s.component, out);
    benchmark::ClobberMemory();
  }
}

void BM_ClassifyParallel(benchmark::State& st) {
  const auto s = snapshot(static_cast<int>(st.range(0)));
  std::vector<PairStatus> out(s.pairs.size());
  for (auto _ : st) {
    kernels::parallel::classify_pairs(s.pairs, s.tables, s.truth, s.component, out);
    benchmark::ClobberMemory();
  }
}

void BM_HopsSerial(benchmark::State& st) {
  const auto adj = kernels::serial::disk_graph(layout(static_cast<int>(st.range(0)), 9).positions, 100.0);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::all_pairs_hops(adj));
}

void BM_HopsParallel(benchmark::State& st) {
  const auto adj = kernels::serial::disk_graph(layout(static_cast<int>(st.range(0)), 9).positions, 100.0);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::parallel::all_pairs_hops(adj));
}

}  // namespace

BENCHMARK(BM_DiskGraphSerial)->Arg(100)->Arg(400)->Arg(1600);
BENCHMARK(BM_DiskGraphParallel)->Arg(100)->Arg(400)->Arg(1600);
BENCHMARK(BM_ClassifySerial)->Arg(100)->Arg(400);
BENCHMARK(BM_ClassifyParallel)->Arg(100)->Arg(400);
BENCHMARK(BM_HopsSerial)->Arg(200)->Arg(800);
BENCHMARK(BM_HopsParallel)->Arg(200)->Arg(800);

BENCHMARK_MAIN();
