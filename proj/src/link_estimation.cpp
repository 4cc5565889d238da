#include "scalewall/link_estimation.hpp"

#include <algorithm>

namespace scalewall {

namespace {
// Timestamps are sums of phases and periods; absorb rounding at the k*B boundary.
constexpr double kBoundarySlack = 1e-9;
}  // namespace

const std::pair<int, double>* NeighborTable::find(int neighbor) const {
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), neighbor,
                                   [](const auto& e, int id) { return e.first < id; });
  return (it != entries_.end() && it->first == neighbor) ? &*it : nullptr;
}

std::optional<double> NeighborTable::last_heard(int neighbor) const {
  if (const auto* e = find(neighbor)) return e->second;
  return std::nullopt;
}

std::vector<int> NeighborTable::alive_set() const {
  std::vector<int> out;
  out.reserve(entries_.size());
  for (const auto& [id, t] : entries_) out.push_back(id);
  return out;
}

std::optional<LinkEvent> NeighborTable::on_beacon(int from, double t) {
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), from,
                                   [](const auto& e, int id) { return e.first < id; });
  if (it != entries_.end() && it->first == from) {
    it->second = t;
    return std::nullopt;
  }
  entries_.insert(it, {from, t});
  return LinkEvent{owner_, from, LinkEventKind::Discovered, t};
}

std::vector<LinkEvent> NeighborTable::scan_timeouts(double t, double period, int miss_threshold) {
  const double limit = miss_threshold * period + kBoundarySlack;
  std::vector<LinkEvent> lost;
  std::erase_if(entries_, [&](const auto& e) {
    if (t - e.second > limit) {
      lost.push_back({owner_, e.first, LinkEventKind::Lost, t});
      return true;
    }
    return false;
  });
  return lost;
}

bool NeighborTable::erase(int neighbor) {
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), neighbor,
                                   [](const auto& e, int id) { return e.first < id; });
  if (it == entries_.end() || it->first != neighbor) return false;
  entries_.erase(it);
  return true;
}

}  // namespace scalewall
