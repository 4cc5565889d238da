#pragma once

// Brute-force reference implementations used as test oracles.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <set>
#include <span>
#include <vector>

#include "scalewall/ground_truth.hpp"
#include "scalewall/mobility.hpp"
#include "scalewall/random.hpp"

namespace oracle {

using Adjacency = std::vector<std::vector<int>>;

inline Adjacency disk_graph(std::span<const scalewall::Vec2> pos, double range) {
  const int n = static_cast<int>(pos.size());
  Adjacency adj(static_cast<std::size_t>(n));
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      const double dx = pos[u].x - pos[v].x;
      const double dy = pos[u].y - pos[v].y;
      if (dx * dx + dy * dy <= range * range) adj[u].push_back(v);
    }
  }
  return adj;
}

inline std::set<std::pair<int, int>> edge_set(const Adjacency& adj) {
  std::set<std::pair<int, int>> e;
  for (int u = 0; u < static_cast<int>(adj.size()); ++u) {
    for (int v : adj[u]) {
      if (u < v) e.insert({u, v});
    }
  }
  return e;
}

/// Transitive closure by repeated relaxation.
inline std::vector<std::vector<bool>> reachability(const Adjacency& adj) {
  const std::size_t n = adj.size();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (std::size_t u = 0; u < n; ++u) {
    r[u][u] = true;
    for (int v : adj[u]) r[u][static_cast<std::size_t>(v)] = true;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!r[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (r[k][j]) r[i][j] = true;
      }
    }
  }
  return r;
}

/// Unit-weight Dijkstra from src on a directed graph.
inline std::vector<int> dijkstra(const Adjacency& out, int src) {
  const int inf = std::numeric_limits<int>::max();
  std::vector<int> dist(out.size(), inf);
  using Item = std::pair<int, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[static_cast<std::size_t>(src)] = 0;
  pq.push({0, src});
  while (!pq.empty()) {
    const auto [d, u] = pq.top();
    pq.pop();
    if (d != dist[static_cast<std::size_t>(u)]) continue;
    for (int v : out[static_cast<std::size_t>(u)]) {
      if (d + 1 < dist[static_cast<std::size_t>(v)]) {
        dist[static_cast<std::size_t>(v)] = d + 1;
        pq.push({d + 1, v});
      }
    }
  }
  for (auto& d : dist) {
    if (d == inf) d = -1;
  }
  return dist;
}

/// Directed random graph with each arc present with probability p.
inline Adjacency random_digraph(int n, double p, scalewall::Rng& rng) {
  Adjacency adj(static_cast<std::size_t>(n));
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u != v && rng.uniform() < p) adj[static_cast<std::size_t>(u)].push_back(v);
    }
  }
  return adj;
}

/// Connected random disk graph in a square of the given side.
inline Adjacency random_connected_disk_graph(int n, double side, double range, scalewall::Rng& rng,
                                             std::vector<scalewall::Vec2>* positions = nullptr) {
  while (true) {
    std::vector<scalewall::Vec2> pos(static_cast<std::size_t>(n));
    for (auto& p : pos) p = {rng.uniform(0.0, side), rng.uniform(0.0, side)};
    auto adj = disk_graph(pos, range);
    const auto r = reachability(adj);
    if (std::all_of(r[0].begin(), r[0].end(), [](bool b) { return b; })) {
      if (positions) *positions = pos;
      return adj;
    }
  }
}

/// Smallest subset of candidates whose advertised sets cover every target (exhaustive).
inline std::size_t minimum_cover_size(const std::vector<int>& candidates,
                                      const std::vector<std::vector<int>>& covers, const std::vector<int>& targets) {
  const std::size_t m = candidates.size();
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (std::uint32_t mask = 0; mask < (1U << m); ++mask) {
    const auto size = static_cast<std::size_t>(__builtin_popcount(mask));
    if (size >= best) continue;
    std::set<int> covered;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask & (1U << i)) covered.insert(covers[i].begin(), covers[i].end());
    }
    if (std::all_of(targets.begin(), targets.end(), [&](int t) { return covered.count(t) > 0; })) best = size;
  }
  return best;
}

}  // namespace oracle
