#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace scalewall {

enum class LinkEventKind { Discovered, Lost };

struct LinkEvent {
  int at_node = -1;
  int neighbor = -1;
  LinkEventKind kind = LinkEventKind::Discovered;
  double time = 0.0;
  friend bool operator==(const LinkEvent&, const LinkEvent&) = default;
};

/// Heartbeat-driven neighbor table. A neighbor is believed alive while it has an
/// entry; entries silent for more than k*B are dropped at the next scan.
class NeighborTable {
 public:
  NeighborTable() = default;
  explicit NeighborTable(int owner) : owner_(owner) {}

  int owner() const { return owner_; }
  bool alive(int neighbor) const { return find(neighbor) != nullptr; }
  std::optional<double> last_heard(int neighbor) const;
  /// Alive neighbor ids, ascending.
  std::vector<int> alive_set() const;
  std::size_t size() const { return entries_.size(); }

  /// Refreshes `from`; reports Discovered iff it was not alive.
  std::optional<LinkEvent> on_beacon(int from, double t);

  /// Drops every neighbor with t - last_heard > k*B, ascending by id.
  std::vector<LinkEvent> scan_timeouts(double t, double period, int miss_threshold);

  /// Single removal, used when a caller wants one event per state change.
  bool erase(int neighbor);

 private:
  const std::pair<int, double>* find(int neighbor) const;

  int owner_ = -1;
  std::vector<std::pair<int, double>> entries_;  // sorted by id
};

}  // namespace scalewall
