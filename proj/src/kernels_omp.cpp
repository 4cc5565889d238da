#include <omp.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "scalewall/kernels.hpp"

namespace scalewall::kernels::parallel {

Adjacency disk_graph(std::span<const Vec2> positions, double radio_range, double side) {
  const int n = static_cast<int>(positions.size());
  const double r2 = radio_range * radio_range;
  const int cells = std::max(1, static_cast<int>(std::ceil(side / radio_range)));
  auto cell_of = [&](double c) { return std::clamp(static_cast<int>(c / radio_range), 0, cells - 1); };

  // counting sort of nodes into cells
  std::vector<int> cell(static_cast<std::size_t>(n));
  std::vector<int> start(static_cast<std::size_t>(cells) * cells + 1, 0);
  for (int i = 0; i < n; ++i) {
    const auto& p = positions[static_cast<std::size_t>(i)];
    cell[static_cast<std::size_t>(i)] = cell_of(p.y) * cells + cell_of(p.x);
    ++start[static_cast<std::size_t>(cell[static_cast<std::size_t>(i)]) + 1];
  }
  for (std::size_t c = 1; c < start.size(); ++c) start[c] += start[c - 1];
  std::vector<int> members(static_cast<std::size_t>(n));
  {
    std::vector<int> fill(start.begin(), start.end() - 1);
    for (int i = 0; i < n; ++i) members[static_cast<std::size_t>(fill[static_cast<std::size_t>(cell[static_cast<std::size_t>(i)])]++)] = i;
  }

  Adjacency adj(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
  for (int u = 0; u < n; ++u) {
    const auto& pu = positions[static_cast<std::size_t>(u)];
    const int cx = cell[static_cast<std::size_t>(u)] % cells;
    const int cy = cell[static_cast<std::size_t>(u)] / cells;
    auto& row = adj[static_cast<std::size_t>(u)];
    for (int y = std::max(0, cy - 1); y <= std::min(cells - 1, cy + 1); ++y) {
      for (int x = std::max(0, cx - 1); x <= std::min(cells - 1, cx + 1); ++x) {
        const auto c = static_cast<std::size_t>(y * cells + x);
        for (int k = start[c]; k < start[c + 1]; ++k) {
          const int v = members[static_cast<std::size_t>(k)];
          if (v == u) continue;
          const auto& pv = positions[static_cast<std::size_t>(v)];
          const double dx = pu.x - pv.x;
          const double dy = pu.y - pv.y;
          if (dx * dx + dy * dy <= r2) row.push_back(v);
        }
      }
    }
    std::sort(row.begin(), row.end());
  }
  return adj;
}

namespace {

enum : std::uint8_t { kUnknown = 0, kOnPath = 1, kReached = 2, kDeadEnd = 3 };

}  // namespace

void classify_pairs(const PairSet& pairs, std::span<const RoutingTable> tables, const GroundTruthGraph& truth,
                    std::span<const int> component, std::span<PairStatus> out) {
  if (out.size() != pairs.size()) throw std::invalid_argument("classify_pairs: output size mismatch");
  const int n = truth.size();
  const auto& groups = pairs.groups();
  const auto& list = pairs.pairs();
  const int group_count = static_cast<int>(groups.size());

#pragma omp parallel
  {
    std::vector<std::uint8_t> state(static_cast<std::size_t>(n));
    std::vector<int> path;
#pragma omp for schedule(dynamic, 4)
    for (int g = 0; g < group_count; ++g) {
      const auto [begin, end] = groups[static_cast<std::size_t>(g)];
      const int d = list[begin].dst;
      std::fill(state.begin(), state.end(), kUnknown);
      state[static_cast<std::size_t>(d)] = kReached;
      for (std::size_t i = begin; i < end; ++i) {
        const int s = list[i].src;
        if (component[static_cast<std::size_t>(s)] != component[static_cast<std::size_t>(d)]) {
          out[i] = PairStatus::NoGroundTruthPath;
          continue;
        }
        path.clear();
        int u = s;
        std::uint8_t result = kDeadEnd;
        while (true) {
          const std::uint8_t st = state[static_cast<std::size_t>(u)];
          if (st == kReached || st == kDeadEnd) {
            result = st;
            break;
          }
          if (st == kOnPath) break;  // loop
          state[static_cast<std::size_t>(u)] = kOnPath;
          path.push_back(u);
          const int next = tables[static_cast<std::size_t>(u)].next(d);
          if (next < 0 || !truth.linked(u, next)) break;
          u = next;
        }
        for (const int p : path) state[static_cast<std::size_t>(p)] = result;
        out[i] = result == kReached ? PairStatus::Connected : PairStatus::Broken;
      }
    }
  }
}

HopStats all_pairs_hops(const Adjacency& adjacency) {
  const int n = static_cast<int>(adjacency.size());
  std::uint64_t hop_sum = 0;
  std::uint64_t connected = 0;
  int partitioned = 0;
#pragma omp parallel reduction(+ : hop_sum, connected) reduction(| : partitioned)
  {
    std::vector<int> dist(static_cast<std::size_t>(n));
    std::vector<int> queue;
#pragma omp for schedule(dynamic, 8)
    for (int s = 0; s < n; ++s) {
      std::fill(dist.begin(), dist.end(), -1);
      dist[static_cast<std::size_t>(s)] = 0;
      queue.assign(1, s);
      for (std::size_t h = 0; h < queue.size(); ++h) {
        const int u = queue[h];
        for (const int v : adjacency[static_cast<std::size_t>(u)]) {
          if (dist[static_cast<std::size_t>(v)] < 0) {
            dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
            hop_sum += static_cast<std::uint64_t>(dist[static_cast<std::size_t>(v)]);
            queue.push_back(v);
          }
        }
      }
      connected += queue.size() - 1;
      if (static_cast<int>(queue.size()) < n) partitioned = 1;
    }
  }
  return HopStats{hop_sum, connected, partitioned != 0};
}

void refresh_routes(std::span<const int> nodes, const RouteJob& job) {
  const int count = static_cast<int>(nodes.size());
#pragma omp parallel
  {
    BfsScratch scratch;
#pragma omp for schedule(dynamic, 4)
    for (int i = 0; i < count; ++i) job(nodes[static_cast<std::size_t>(i)], scratch);
  }
}

}  // namespace scalewall::kernels::parallel
