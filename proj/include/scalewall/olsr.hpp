#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "scalewall/link_estimation.hpp"
#include "scalewall/lsr.hpp"
#include "scalewall/routing_table.hpp"

namespace scalewall {

using TwoHopMap = std::map<int, std::vector<int>>;  // one-hop neighbor -> its advertised neighbors

struct HelloMessage {
  int origin = -1;
  std::vector<int> neighbors;  // origin's alive set, ascending
  std::vector<int> mprs;       // subset of neighbors flagged as chosen MPR
};

struct TcMessage {
  int origin = -1;
  std::uint64_t seq = 0;
  std::vector<int> selectors;  // ascending
};
using TcPtr = std::shared_ptr<const TcMessage>;
using HelloPtr = std::shared_ptr<const HelloMessage>;

/// Strict two-hop set: nodes advertised by one-hop neighbors, excluding self and the one-hop set.
std::vector<int> strict_two_hop(int self, std::span<const int> one_hop, const TwoHopMap& two_hop);

/// Greedy cover: neighbors that alone cover some strict two-hop node first, then the
/// neighbor covering the most uncovered nodes (smallest id on ties) until all are covered.
std::vector<int> select_mprs(int self, std::span<const int> one_hop, const TwoHopMap& two_hop);

/// One node's neighborhood view: link sensing via Hellos plus MPR bookkeeping.
class MprState {
 public:
  MprState() = default;
  explicit MprState(int self) : self_(self), one_hop_(self) {}

  struct HelloEffect {
    std::optional<LinkEvent> discovered;
    bool selectors_changed = false;
  };
  HelloEffect process_hello(const HelloMessage& hello, double t);

  /// Purges neighbors silent for more than k * hello_interval together with derived state.
  std::vector<LinkEvent> scan(double t, double hello_interval, int miss_threshold);

  HelloMessage make_hello() const;

  int self() const { return self_; }
  std::vector<int> one_hop() const { return one_hop_.alive_set(); }
  const NeighborTable& link_table() const { return one_hop_; }
  const TwoHopMap& two_hop() const { return two_hop_; }
  const std::vector<int>& mprs() const { return mprs_; }
  const std::vector<int>& selectors() const { return selectors_; }
  bool is_selector(int node) const;

 private:
  void recompute_mprs();

  int self_ = -1;
  NeighborTable one_hop_;
  TwoHopMap two_hop_;
  std::vector<int> mprs_;
  std::vector<int> selectors_;
};

/// Advertised (origin, selector) links with the newest sequence number per origin.
class TopologyDb {
 public:
  TopologyDb() = default;
  TopologyDb(int owner, int n) : owner_(owner), entries_(static_cast<std::size_t>(n)) {}

  /// Accepted iff newer; forwarded iff accepted and this node relays for `from`
  /// (i.e. it is an MPR of the sender).
  FloodVerdict process_tc(const TcPtr& tc, int from, bool mpr_of_sender, double t, double hold_time);
  /// Drops entries past their hold time; true if anything changed.
  bool expire(double t);

  int owner() const { return owner_; }
  int size() const { return static_cast<int>(entries_.size()); }
  std::uint64_t seq_of(int origin) const;
  std::span<const int> selectors_of(int origin) const;
  bool dirty() const { return dirty_; }
  void mark_clean() { dirty_ = false; }

 private:
  struct Entry {
    TcPtr tc;
    double expires = 0.0;
  };
  int owner_ = -1;
  std::vector<Entry> entries_;
  bool dirty_ = false;
};

/// Shortest paths over own one-hop links plus every advertised TC link (both directions).
RoutingTable compute_olsr_routes(int self, std::span<const int> one_hop, const TopologyDb& db);
void compute_olsr_routes(int self, std::span<const int> one_hop, const TopologyDb& db, RoutingTable& out,
                         BfsScratch& scratch);

class OlsrRouter {
 public:
  OlsrRouter() = default;
  OlsrRouter(int self, int n) : self_(self), mpr_(self), topology_(self, n) {}

  MprState& mpr() { return mpr_; }
  const MprState& mpr() const { return mpr_; }
  TopologyDb& topology() { return topology_; }
  const TopologyDb& topology() const { return topology_; }

  /// Next TC when this node has MPR selectors; nothing otherwise.
  TcPtr make_tc();

 private:
  int self_ = -1;
  MprState mpr_;
  TopologyDb topology_;
  std::uint64_t tc_seq_ = 0;
};

}  // namespace scalewall
