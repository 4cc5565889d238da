#include "scalewall/olsr.hpp"

#include <algorithm>

namespace scalewall {

namespace {

bool sorted_contains(const std::vector<int>& v, int x) { return std::binary_search(v.begin(), v.end(), x); }

bool sorted_insert(std::vector<int>& v, int x) {
  const auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it != v.end() && *it == x) return false;
  v.insert(it, x);
  return true;
}

bool sorted_erase(std::vector<int>& v, int x) {
  const auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it == v.end() || *it != x) return false;
  v.erase(it);
  return true;
}

}  // namespace

std::vector<int> strict_two_hop(int self, std::span<const int> one_hop, const TwoHopMap& two_hop) {
  std::vector<int> out;
  for (const int b : one_hop) {
    const auto it = two_hop.find(b);
    if (it == two_hop.end()) continue;
    for (const int c : it->second) {
      if (c != self && !std::binary_search(one_hop.begin(), one_hop.end(), c)) out.push_back(c);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<int> select_mprs(int self, std::span<const int> one_hop, const TwoHopMap& two_hop) {
  const std::vector<int> targets = strict_two_hop(self, one_hop, two_hop);
  if (targets.empty()) return {};

  // coverage of each one-hop neighbor, as indices into targets
  std::vector<std::vector<std::size_t>> cover(one_hop.size());
  std::vector<int> coverers(targets.size(), 0);
  for (std::size_t i = 0; i < one_hop.size(); ++i) {
    const auto it = two_hop.find(one_hop[i]);
    if (it == two_hop.end()) continue;
    for (const int c : it->second) {
      const auto pos = std::lower_bound(targets.begin(), targets.end(), c);
      if (pos != targets.end() && *pos == c) {
        cover[i].push_back(static_cast<std::size_t>(pos - targets.begin()));
      }
    }
    std::sort(cover[i].begin(), cover[i].end());
    cover[i].erase(std::unique(cover[i].begin(), cover[i].end()), cover[i].end());
    for (const auto t : cover[i]) ++coverers[t];
  }

  std::vector<bool> chosen(one_hop.size(), false);
  std::vector<bool> covered(targets.size(), false);
  std::size_t remaining = targets.size();
  auto take = [&](std::size_t i) {
    if (chosen[i]) return;
    chosen[i] = true;
    for (const auto t : cover[i]) {
      if (!covered[t]) {
        covered[t] = true;
        --remaining;
      }
    }
  };

  for (std::size_t i = 0; i < one_hop.size(); ++i) {
    for (const auto t : cover[i]) {
      if (coverers[t] == 1) {
        take(i);
        break;
      }
    }
  }
  while (remaining > 0) {
    std::size_t best = one_hop.size();
    std::size_t best_gain = 0;
    for (std::size_t i = 0; i < one_hop.size(); ++i) {
      if (chosen[i]) continue;
      std::size_t gain = 0;
      for (const auto t : cover[i]) gain += !covered[t];
      // one_hop is ascending, so strict '>' keeps the smallest id on ties
      if (gain > best_gain) {
        best_gain = gain;
        best = i;
      }
    }
    if (best == one_hop.size()) break;
    take(best);
  }

  std::vector<int> out;
  for (std::size_t i = 0; i < one_hop.size(); ++i) {
    if (chosen[i]) out.push_back(one_hop[i]);
  }
  return out;
}

MprState::HelloEffect MprState::process_hello(const HelloMessage& hello, double t) {
  HelloEffect effect;
  const int from = hello.origin;
  effect.discovered = one_hop_.on_beacon(from, t);

  std::vector<int> advertised;
  advertised.reserve(hello.neighbors.size());
  for (const int c : hello.neighbors) {
    if (c != self_) advertised.push_back(c);
  }
  auto& slot = two_hop_[from];
  const bool two_hop_changed = slot != advertised;
  if (two_hop_changed) slot = std::move(advertised);

  const bool flagged = std::binary_search(hello.mprs.begin(), hello.mprs.end(), self_);
  effect.selectors_changed = flagged ? sorted_insert(selectors_, from) : sorted_erase(selectors_, from);

  if (effect.discovered || two_hop_changed) recompute_mprs();
  return effect;
}

std::vector<LinkEvent> MprState::scan(double t, double hello_interval, int miss_threshold) {
  auto lost = one_hop_.scan_timeouts(t, hello_interval, miss_threshold);
  for (const auto& e : lost) {
    two_hop_.erase(e.neighbor);
    sorted_erase(selectors_, e.neighbor);
  }
  if (!lost.empty()) recompute_mprs();
  return lost;
}

HelloMessage MprState::make_hello() const { return HelloMessage{self_, one_hop_.alive_set(), mprs_}; }

bool MprState::is_selector(int node) const { return sorted_contains(selectors_, node); }

void MprState::recompute_mprs() {
  const auto one = one_hop_.alive_set();
  mprs_ = select_mprs(self_, one, two_hop_);
}

FloodVerdict TopologyDb::process_tc(const TcPtr& tc, int /*from*/, bool mpr_of_sender, double t, double hold_time) {
  if (tc->origin == owner_) return {};
  auto& e = entries_[static_cast<std::size_t>(tc->origin)];
  if (e.tc && tc->seq <= e.tc->seq) return {};
  e.tc = tc;
  e.expires = t + hold_time;
  dirty_ = true;
  return {true, mpr_of_sender};
}

bool TopologyDb::expire(double t) {
  bool changed = false;
  for (auto& e : entries_) {
    if (e.tc && e.expires < t) {
      // keep the sequence number so stale copies are still rejected
      if (!e.tc->selectors.empty()) {
        e.tc = std::make_shared<TcMessage>(TcMessage{e.tc->origin, e.tc->seq, {}});
        changed = true;
      }
    }
  }
  if (changed) dirty_ = true;
  return changed;
}

std::uint64_t TopologyDb::seq_of(int origin) const {
  const auto& e = entries_[static_cast<std::size_t>(origin)];
  return e.tc ? e.tc->seq : 0;
}

std::span<const int> TopologyDb::selectors_of(int origin) const {
  const auto& e = entries_[static_cast<std::size_t>(origin)];
  return e.tc ? std::span<const int>(e.tc->selectors) : std::span<const int>();
}

void compute_olsr_routes(int self, std::span<const int> one_hop, const TopologyDb& db, RoutingTable& out,
                         BfsScratch& scratch) {
  const int n = db.size();
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  adj[static_cast<std::size_t>(self)].assign(one_hop.begin(), one_hop.end());
  for (int origin = 0; origin < n; ++origin) {
    for (const int s : db.selectors_of(origin)) {
      // own links come only from link sensing
      if (origin != self) adj[static_cast<std::size_t>(origin)].push_back(s);
      if (s != self) adj[static_cast<std::size_t>(s)].push_back(origin);
    }
  }
  bfs_next_hops(self, n, [&adj](int u) -> const std::vector<int>& { return adj[static_cast<std::size_t>(u)]; }, out,
                scratch);
}

RoutingTable compute_olsr_routes(int self, std::span<const int> one_hop, const TopologyDb& db) {
  RoutingTable table;
  BfsScratch scratch;
  compute_olsr_routes(self, one_hop, db, table, scratch);
  return table;
}

TcPtr OlsrRouter::make_tc() {
  const auto& selectors = mpr_.selectors();
  if (selectors.empty()) return nullptr;
  return std::make_shared<TcMessage>(TcMessage{self_, ++tc_seq_, selectors});
}

}  // namespace scalewall
