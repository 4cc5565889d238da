#pragma once

#include <vector>

namespace scalewall {

/// Next hop and hop count per destination, dense over node ids; -1 marks no route.
struct RoutingTable {
  int owner = -1;
  std::vector<int> next_hop;
  std::vector<int> hops;
  double computed_at = 0.0;

  RoutingTable() = default;
  RoutingTable(int owner_id, int n) : owner(owner_id), next_hop(static_cast<std::size_t>(n), -1), hops(static_cast<std::size_t>(n), -1) {}

  bool contains(int d) const { return next_hop[static_cast<std::size_t>(d)] >= 0; }
  int next(int d) const { return next_hop[static_cast<std::size_t>(d)]; }
  int hop_count(int d) const { return hops[static_cast<std::size_t>(d)]; }
  std::size_t size() const {
    std::size_t c = 0;
    for (int h : next_hop) c += h >= 0;
    return c;
  }
  friend bool operator==(const RoutingTable& a, const RoutingTable& b) {
    return a.owner == b.owner && a.next_hop == b.next_hop && a.hops == b.hops;
  }
};

struct BfsScratch {
  std::vector<int> dist;
  std::vector<int> first;
  std::vector<int> queue;
};

/// Minimum-hop routes from `owner` over a directed graph given by `out_edges(u)`.
/// Equal-length alternatives resolve to the smallest next-hop id.
template <class OutEdges>
void bfs_next_hops(int owner, int n, OutEdges&& out_edges, RoutingTable& table, BfsScratch& s) {
  const auto nn = static_cast<std::size_t>(n);
  s.dist.assign(nn, -1);
  s.first.assign(nn, -1);
  s.queue.clear();
  s.dist[static_cast<std::size_t>(owner)] = 0;
  s.queue.push_back(owner);
  for (std::size_t head = 0; head < s.queue.size(); ++head) {
    const int u = s.queue[head];
    const int du = s.dist[static_cast<std::size_t>(u)];
    for (const int v : out_edges(u)) {
      if (v < 0 || v >= n || v == owner) continue;
      const auto vi = static_cast<std::size_t>(v);
      const int via = (u == owner) ? v : s.first[static_cast<std::size_t>(u)];
      if (s.dist[vi] < 0) {
        s.dist[vi] = du + 1;
        s.first[vi] = via;
        s.queue.push_back(v);
      } else if (s.dist[vi] == du + 1 && via < s.first[vi]) {
        s.first[vi] = via;
      }
    }
  }
  table.owner = owner;
  table.next_hop.assign(nn, -1);
  table.hops.assign(nn, -1);
  for (std::size_t d = 0; d < nn; ++d) {
    if (static_cast<int>(d) == owner || s.dist[d] < 0) continue;
    table.next_hop[d] = s.first[d];
    table.hops[d] = s.dist[d];
  }
}

}  // namespace scalewall
