#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "scalewall/link_estimation.hpp"
#include "scalewall/routing_table.hpp"

namespace scalewall {

/// Full-state advertisement of the origin's alive neighbor set.
struct LinkStateUpdate {
  int origin = -1;
  std::uint64_t seq = 0;
  std::vector<int> neighbors;  // ascending
  double created_at = 0.0;
};
using LsuPtr = std::shared_ptr<const LinkStateUpdate>;

struct FloodVerdict {
  bool accepted = false;
  bool forward = false;
  friend bool operator==(const FloodVerdict&, const FloodVerdict&) = default;
};

/// Latest LSU per origin as seen by `owner`.
class LinkStateDatabase {
 public:
  LinkStateDatabase() = default;
  LinkStateDatabase(int owner, int n) : owner_(owner), latest_(static_cast<std::size_t>(n)) {}

  /// Accepts iff the sequence number is newer than the stored one; accepted updates are forwarded.
  FloodVerdict process(const LsuPtr& lsu, int from_neighbor);

  int owner() const { return owner_; }
  int size() const { return static_cast<int>(latest_.size()); }
  std::uint64_t seq_of(int origin) const;
  std::span<const int> neighbors_of(int origin) const;
  bool dirty() const { return dirty_; }
  void mark_clean() { dirty_ = false; }

 private:
  int owner_ = -1;
  std::vector<LsuPtr> latest_;
  bool dirty_ = false;
};

/// Minimum-hop routes over the directed belief graph (u -> v iff v is in u's stored list).
RoutingTable compute_routes(const LinkStateDatabase& db);
void compute_routes(const LinkStateDatabase& db, RoutingTable& out, BfsScratch& scratch);

/// Per-node state of the event-driven link-state router.
class LsrRouter {
 public:
  LsrRouter() = default;
  LsrRouter(int self, int n) : self_(self), table_(self), db_(self, n) {}

  NeighborTable& neighbors() { return table_; }
  const NeighborTable& neighbors() const { return table_; }
  LinkStateDatabase& database() { return db_; }
  const LinkStateDatabase& database() const { return db_; }
  std::uint64_t last_seq() const { return seq_; }
  void set_last_seq(std::uint64_t seq) { seq_ = seq; }

  /// One new LSU per link event: next seq, current alive set, applied locally.
  LsuPtr on_link_event(const LinkEvent& event);

 private:
  int self_ = -1;
  NeighborTable table_;
  LinkStateDatabase db_;
  std::uint64_t seq_ = 0;
};

enum class ControlKind : std::uint8_t { Beacon = 0, Lsu = 1, Hello = 2, Tc = 3 };
inline constexpr std::array<const char*, 4> kControlKindNames = {"beacon", "lsu", "hello", "tc"};

/// Transmitted control bytes per node and message kind.
class ControlTrafficCounter {
 public:
  explicit ControlTrafficCounter(int n = 0) : bytes_(static_cast<std::size_t>(n)) {}

  void add(int node, ControlKind kind, std::uint64_t bytes) {
    bytes_[static_cast<std::size_t>(node)][static_cast<std::size_t>(kind)] += bytes;
  }
  std::uint64_t bytes(int node, ControlKind kind) const {
    return bytes_[static_cast<std::size_t>(node)][static_cast<std::size_t>(kind)];
  }
  std::uint64_t total(ControlKind kind) const;
  std::uint64_t total() const;
  int nodes() const { return static_cast<int>(bytes_.size()); }
  void scale(std::uint64_t factor);

 private:
  std::vector<std::array<std::uint64_t, 4>> bytes_;
};

/// (control bits / duration) / (capacity * n): mean per-node channel occupancy.
double nlo_fraction(const ControlTrafficCounter& counters, double duration, double channel_capacity);

}  // namespace scalewall
