#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "scalewall/ground_truth.hpp"
#include "scalewall/routing_table.hpp"

namespace scalewall {

enum class PairStatus : std::uint8_t { Connected, Broken, NoGroundTruthPath };

enum class BreakReason : std::uint8_t { None, NoRoute, InvalidLink, Loop, HopLimit };

struct PathStatus {
  PairStatus status = PairStatus::Broken;
  int length = 0;  // hops traversed
  BreakReason reason = BreakReason::None;
};

/// Follows next hops from s toward d through every node's table. Connected iff d is
/// reached and every hop is a ground-truth link; loops, missing entries, invalid links
/// and exceeding hop_limit all yield Broken.
PathStatus traverse(int s, int d, std::span<const RoutingTable> tables, const GroundTruthGraph& truth, int hop_limit);

struct OrderedPair {
  int src;
  int dst;
  friend bool operator==(const OrderedPair&, const OrderedPair&) = default;
};

/// Tracked ordered pairs, grouped by destination (sorted by dst, then src).
class PairSet {
 public:
  static PairSet all(int n);
  /// Fixed uniform sample without replacement of `count` ordered pairs.
  static PairSet sample(int n, std::int64_t count, std::uint64_t seed);
  static PairSet from(std::vector<OrderedPair> pairs);

  std::size_t size() const { return pairs_.size(); }
  const std::vector<OrderedPair>& pairs() const { return pairs_; }
  /// [begin, end) ranges into pairs() sharing one destination.
  const std::vector<std::pair<std::size_t, std::size_t>>& groups() const { return groups_; }

 private:
  void index();
  std::vector<OrderedPair> pairs_;
  std::vector<std::pair<std::size_t, std::size_t>> groups_;
};

}  // namespace scalewall
