#include <stdexcept>

#include "scalewall/kernels.hpp"

namespace scalewall::kernels::serial {

Adjacency disk_graph(std::span<const Vec2> positions, double radio_range) {
  const auto n = positions.size();
  const double r2 = radio_range * radio_range;
  Adjacency adj(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (u == v) continue;
      const double dx = positions[u].x - positions[v].x;
      const double dy = positions[u].y - positions[v].y;
      if (dx * dx + dy * dy <= r2) adj[u].push_back(static_cast<int>(v));
    }
  }
  return adj;
}

void classify_pairs(const PairSet& pairs, std::span<const RoutingTable> tables, const GroundTruthGraph& truth,
                    std::span<const int> component, std::span<PairStatus> out) {
  if (out.size() != pairs.size()) throw std::invalid_argument("classify_pairs: output size mismatch");
  const int hop_limit = truth.size();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [s, d] = pairs.pairs()[i];
    if (component[static_cast<std::size_t>(s)] != component[static_cast<std::size_t>(d)]) {
      out[i] = PairStatus::NoGroundTruthPath;
    } else {
      out[i] = traverse(s, d, tables, truth, hop_limit).status;
    }
  }
}

HopStats all_pairs_hops(const Adjacency& adjacency) {
  const int n = static_cast<int>(adjacency.size());
  HopStats stats;
  std::vector<int> dist(static_cast<std::size_t>(n));
  std::vector<int> queue;
  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[static_cast<std::size_t>(s)] = 0;
    queue.assign(1, s);
    for (std::size_t h = 0; h < queue.size(); ++h) {
      const int u = queue[h];
      for (const int v : adjacency[static_cast<std::size_t>(u)]) {
        if (dist[static_cast<std::size_t>(v)] < 0) {
          dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
          queue.push_back(v);
        }
      }
    }
    for (int d = 0; d < n; ++d) {
      if (d == s) continue;
      if (dist[static_cast<std::size_t>(d)] < 0) {
        stats.partitioned = true;
      } else {
        stats.hop_sum += static_cast<std::uint64_t>(dist[static_cast<std::size_t>(d)]);
        ++stats.connected_pairs;
      }
    }
  }
  return stats;
}

void refresh_routes(std::span<const int> nodes, const RouteJob& job) {
  BfsScratch scratch;
  for (const int node : nodes) job(node, scratch);
}

}  // namespace scalewall::kernels::serial
