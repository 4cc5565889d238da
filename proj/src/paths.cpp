#include "scalewall/paths.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "scalewall/random.hpp"

namespace scalewall {

PathStatus traverse(int s, int d, std::span<const RoutingTable> tables, const GroundTruthGraph& truth, int hop_limit) {
  PathStatus out;
  std::unordered_set<int> visited{s};
  int u = s;
  while (u != d) {
    if (out.length >= hop_limit) {
      out.reason = BreakReason::HopLimit;
      return out;
    }
    const int next = tables[static_cast<std::size_t>(u)].next(d);
    if (next < 0) {
      out.reason = BreakReason::NoRoute;
      return out;
    }
    if (!truth.linked(u, next)) {
      out.reason = BreakReason::InvalidLink;
      return out;
    }
    ++out.length;
    if (!visited.insert(next).second) {
      out.reason = BreakReason::Loop;
      return out;
    }
    u = next;
  }
  out.status = PairStatus::Connected;
  return out;
}

PairSet PairSet::all(int n) {
  PairSet p;
  p.pairs_.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1));
  for (int d = 0; d < n; ++d) {
    for (int s = 0; s < n; ++s) {
      if (s != d) p.pairs_.push_back({s, d});
    }
  }
  p.index();
  return p;
}

PairSet PairSet::sample(int n, std::int64_t count, std::uint64_t seed) {
  const std::int64_t total = static_cast<std::int64_t>(n) * (n - 1);
  if (count >= total) return all(n);
  if (count <= 0) throw std::invalid_argument("pair sample size must be positive");
  std::vector<std::int64_t> idx(static_cast<std::size_t>(total));
  std::iota(idx.begin(), idx.end(), 0);
  Rng rng(seed);
  for (std::int64_t i = 0; i < count; ++i) {
    const auto j = i + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(total - i)));
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  }
  std::vector<OrderedPair> pairs;
  pairs.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) {
    const std::int64_t k = idx[static_cast<std::size_t>(i)];
    const int s = static_cast<int>(k / (n - 1));
    const int j = static_cast<int>(k % (n - 1));
    pairs.push_back({s, j < s ? j : j + 1});
  }
  return from(std::move(pairs));
}

PairSet PairSet::from(std::vector<OrderedPair> pairs) {
  for (const auto& p : pairs) {
    if (p.src == p.dst) throw std::invalid_argument("pair set: source equals destination");
  }
  PairSet p;
  p.pairs_ = std::move(pairs);
  std::sort(p.pairs_.begin(), p.pairs_.end(),
            [](const OrderedPair& a, const OrderedPair& b) { return a.dst != b.dst ? a.dst < b.dst : a.src < b.src; });
  p.pairs_.erase(std::unique(p.pairs_.begin(), p.pairs_.end()), p.pairs_.end());
  p.index();
  return p;
}

void PairSet::index() {
  groups_.clear();
  std::size_t begin = 0;
  for (std::size_t i = 1; i <= pairs_.size(); ++i) {
    if (i == pairs_.size() || pairs_[i].dst != pairs_[begin].dst) {
      groups_.emplace_back(begin, i);
      begin = i;
    }
  }
}

}  // namespace scalewall
