#include "scalewall/lsr.hpp"

#include <stdexcept>

namespace scalewall {

FloodVerdict LinkStateDatabase::process(const LsuPtr& lsu, int /*from_neighbor*/) {
  auto& slot = latest_[static_cast<std::size_t>(lsu->origin)];
  if (slot && lsu->seq <= slot->seq) return {};
  slot = lsu;
  dirty_ = true;
  return {true, true};
}

std::uint64_t LinkStateDatabase::seq_of(int origin) const {
  const auto& slot = latest_[static_cast<std::size_t>(origin)];
  return slot ? slot->seq : 0;
}

std::span<const int> LinkStateDatabase::neighbors_of(int origin) const {
  const auto& slot = latest_[static_cast<std::size_t>(origin)];
  return slot ? std::span<const int>(slot->neighbors) : std::span<const int>();
}

void compute_routes(const LinkStateDatabase& db, RoutingTable& out, BfsScratch& scratch) {
  bfs_next_hops(db.owner(), db.size(), [&db](int u) { return db.neighbors_of(u); }, out, scratch);
}

RoutingTable compute_routes(const LinkStateDatabase& db) {
  RoutingTable table;
  BfsScratch scratch;
  compute_routes(db, table, scratch);
  return table;
}

LsuPtr LsrRouter::on_link_event(const LinkEvent& event) {
  if (event.at_node != self_) throw std::invalid_argument("link event delivered to the wrong router");
  auto lsu = std::make_shared<LinkStateUpdate>();
  lsu->origin = self_;
  lsu->seq = ++seq_;
  lsu->neighbors = table_.alive_set();
  lsu->created_at = event.time;
  LsuPtr out = std::move(lsu);
  db_.process(out, self_);
  return out;
}

std::uint64_t ControlTrafficCounter::total(ControlKind kind) const {
  std::uint64_t sum = 0;
  for (const auto& row : bytes_) sum += row[static_cast<std::size_t>(kind)];
  return sum;
}

std::uint64_t ControlTrafficCounter::total() const {
  std::uint64_t sum = 0;
  for (const auto& row : bytes_) {
    for (const auto b : row) sum += b;
  }
  return sum;
}

void ControlTrafficCounter::scale(std::uint64_t factor) {
  for (auto& row : bytes_) {
    for (auto& b : row) b *= factor;
  }
}

double nlo_fraction(const ControlTrafficCounter& counters, double duration, double channel_capacity) {
  if (!(duration > 0.0)) throw std::invalid_argument("nlo_fraction: duration must be > 0");
  if (counters.nodes() == 0) return 0.0;
  const double bits_per_sec = 8.0 * static_cast<double>(counters.total()) / duration;
  return bits_per_sec / (channel_capacity * counters.nodes());
}

}  // namespace scalewall
