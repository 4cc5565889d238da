#include <doctest.h>

#include <atomic>
#include <set>

#include "oracles.hpp"
#include "scalewall/kernels.hpp"
#include "scalewall/lsr.hpp"
#include "scalewall/paths.hpp"

using namespace scalewall;

namespace {

std::vector<RoutingTable> empty_tables(int n) {
  std::vector<RoutingTable> t;
  for (int i = 0; i < n; ++i) t.emplace_back(i, n);
  return t;
}

}  // namespace

TEST_CASE("traverse: connected, invalid hop, loop, missing entry") {
  // s=0 -> g1=1 -> d=2
  auto tables = empty_tables(3);
  tables[0].next_hop[2] = 1;
  tables[1].next_hop[2] = 2;
  const auto line = GroundTruthGraph::from_adjacency({{1}, {0, 2}, {1}});
  const auto ok = traverse(0, 2, tables, line, 3);
  CHECK(ok.status == PairStatus::Connected);
  CHECK(ok.length == 2);

  const auto cut = GroundTruthGraph::from_adjacency({{1}, {0}, {}});
  const auto broken = traverse(0, 2, tables, cut, 3);
  CHECK(broken.status == PairStatus::Broken);
  CHECK(broken.reason == BreakReason::InvalidLink);

  auto loop = empty_tables(3);
  loop[0].next_hop[2] = 1;
  loop[1].next_hop[2] = 0;
  const auto l = traverse(0, 2, loop, line, 3);
  CHECK(l.status == PairStatus::Broken);
  CHECK(l.reason == BreakReason::Loop);

  const auto none = traverse(1, 0, tables, line, 3);
  CHECK(none.reason == BreakReason::NoRoute);
}

TEST_CASE("pair sets: all, sample, grouping") {
  const auto all = PairSet::all(5);
  CHECK(all.size() == 20);
  CHECK(all.groups().size() == 5);
  const auto s = PairSet::sample(50, 300, 7);
  CHECK(s.size() == 300);
  std::set<std::pair<int, int>> seen;
  for (const auto& p : s.pairs()) {
    CHECK(p.src != p.dst);
    seen.insert({p.src, p.dst});
  }
  CHECK(seen.size() == 300);
  const auto again = PairSet::sample(50, 300, 7);
  CHECK(again.pairs() == s.pairs());
  for (const auto& [b, e] : s.groups()) {
    for (auto i = b; i < e; ++i) CHECK(s.pairs()[i].dst == s.pairs()[b].dst);
  }
  CHECK_THROWS(PairSet::from({{1, 1}}));
}

TEST_CASE("disk graph: grid kernel equals serial reference") {
  Rng rng(41);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 30 + 40 * trial;
    const double side = std::sqrt(n * 3.141592653589793 * 1e4 / 8.0);
    std::vector<Vec2> p(static_cast<std::size_t>(n));
    for (auto& q : p) q = {rng.uniform(0.0, side), rng.uniform(0.0, side)};
    // include points exactly on the area edge
    p[0] = {side, side};
    p[1] = {0.0, side};
    CHECK(kernels::parallel::disk_graph(p, 100.0, side) == kernels::serial::disk_graph(p, 100.0));
  }
}

TEST_CASE("classify_pairs: memoised kernel equals per-pair traversal") {
  Rng rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 60;
    std::vector<Vec2> pos(n);
    for (auto& q : pos) q = {rng.uniform(0.0, 700.0), rng.uniform(0.0, 700.0)};
    const auto truth = GroundTruthGraph::from_adjacency(oracle::disk_graph(pos, 100.0));
    const auto comp = components(truth);
    // stale beliefs: routes computed on a perturbed layout, some loops and dead ends included
    std::vector<Vec2> old = pos;
    for (auto& q : old) q = {std::clamp(q.x + rng.uniform(-40.0, 40.0), 0.0, 700.0),
                             std::clamp(q.y + rng.uniform(-40.0, 40.0), 0.0, 700.0)};
    const auto belief = oracle::disk_graph(old, 100.0);
    std::vector<RoutingTable> tables;
    for (int i = 0; i < n; ++i) {
      LinkStateDatabase db(i, n);
      for (int u = 0; u < n; ++u) {
        db.process(std::make_shared<LinkStateUpdate>(LinkStateUpdate{u, 1, belief[u], 0.0}), u);
      }
      tables.push_back(compute_routes(db));
    }
    for (int k = 0; k < 30; ++k) {
      tables[rng.below(n)].next_hop[rng.below(n)] = static_cast<int>(rng.below(n));
    }
    const auto pairs = trial % 2 ? PairSet::all(n) : PairSet::sample(n, 1000, trial);
    std::vector<PairStatus> a(pairs.size());
    std::vector<PairStatus> b(pairs.size());
    kernels::serial::classify_pairs(pairs, tables, truth, comp, a);
    kernels::parallel::classify_pairs(pairs, tables, truth, comp, b);
    CHECK(a == b);
  }
}

TEST_CASE("all-pairs hops: kernels agree, and a 3-node line gives 4/3") {
  const kernels::Adjacency line{{1}, {0, 2}, {1}};
  const auto hs = kernels::parallel::all_pairs_hops(line);
  CHECK(hs.hop_sum == 8);
  CHECK(hs.connected_pairs == 6);
  CHECK(static_cast<double>(hs.hop_sum) / hs.connected_pairs == doctest::Approx(4.0 / 3.0));
  CHECK_FALSE(hs.partitioned);
  Rng rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Vec2> p(150);
    for (auto& q : p) q = {rng.uniform(0.0, 1200.0), rng.uniform(0.0, 1200.0)};
    const auto adj = oracle::disk_graph(p, 100.0);
    CHECK(kernels::serial::all_pairs_hops(adj) == kernels::parallel::all_pairs_hops(adj));
  }
}

TEST_CASE("refresh_routes: every requested node processed exactly once") {
  std::vector<int> nodes{0, 3, 5, 9, 11};
  for (auto* fn : {&kernels::serial::refresh_routes, &kernels::parallel::refresh_routes}) {
    std::vector<std::atomic<int>> hits(12);
    fn(nodes, [&](int node, BfsScratch&) { hits[node]++; });
    for (int i = 0; i < 12; ++i) {
      const bool wanted = std::find(nodes.begin(), nodes.end(), i) != nodes.end();
      CHECK(hits[i].load() == (wanted ? 1 : 0));
    }
  }
}
