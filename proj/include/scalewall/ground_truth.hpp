#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "scalewall/mobility.hpp"

namespace scalewall {

using Link = std::pair<int, int>;  // undirected, first < second

/// Symmetric disk-model adjacency; (u,v) present iff distance(u,v) <= radio_range.
class GroundTruthGraph {
 public:
  GroundTruthGraph() = default;
  explicit GroundTruthGraph(int n);
  /// Takes sorted or unsorted adjacency lists; symmetry is checked.
  static GroundTruthGraph from_adjacency(std::vector<std::vector<int>> adjacency);

  int size() const { return n_; }
  bool linked(int u, int v) const {
    return (bits_[static_cast<std::size_t>(u) * words_ + (static_cast<unsigned>(v) >> 6)] >> (v & 63)) & 1U;
  }
  std::span<const int> neighbors(int u) const { return adjacency_[static_cast<std::size_t>(u)]; }
  const std::vector<std::vector<int>>& adjacency() const { return adjacency_; }
  std::size_t link_count() const { return link_count_; }
  std::vector<Link> links() const;

  void add_link(int u, int v, double since = 0.0);
  void remove_link(int u, int v);
  /// Creation time of a present link.
  double link_since(int u, int v) const;

  friend bool operator==(const GroundTruthGraph& a, const GroundTruthGraph& b) {
    return a.n_ == b.n_ && a.adjacency_ == b.adjacency_;
  }

 private:
  static std::uint64_t key(int u, int v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
  }
  void set_bit(int u, int v, bool on);

  int n_ = 0;
  std::size_t words_ = 0;
  std::size_t link_count_ = 0;
  std::vector<std::vector<int>> adjacency_;
  std::vector<std::uint64_t> bits_;
  std::unordered_map<std::uint64_t, double> since_;
};

struct LinkDiff {
  std::vector<Link> added;
  std::vector<Link> removed;
};

/// Exact disk graph; a distance equal to the range counts as linked.
GroundTruthGraph rebuild(std::span<const Vec2> positions, double radio_range, double side);
LinkDiff diff(const GroundTruthGraph& prev, const GroundTruthGraph& next);
void apply(GroundTruthGraph& g, const LinkDiff& d, double t);

/// Component label per node: the smallest node id in its component.
std::vector<int> components(const GroundTruthGraph& g);
std::vector<int> components(const std::vector<std::vector<int>>& adjacency);

struct LinkChurnStats {
  double adds_per_sec = 0.0;
  double removals_per_sec = 0.0;
  double changes_per_node_per_sec = 0.0;  // each undirected change counted at both endpoints
  double window = 0.0;
};

struct DiffRecord {
  double t = 0.0;
  std::size_t adds = 0;
  std::size_t removals = 0;
};

/// Rates over `window` seconds of diff records; requires window >= 10 s.
LinkChurnStats churn(std::span<const DiffRecord> diffs, int n, double window);

/// Accumulates diff records across a run; emits fixed 10 s windows and overall stats.
class ChurnMeter {
 public:
  ChurnMeter(int n, double start, double window = 10.0) : n_(n), start_(start), window_(window) {}

  void record(double t, std::size_t adds, std::size_t removals, std::size_t link_count);

  struct Row {
    double window_start;
    LinkChurnStats stats;
  };
  /// Complete windows only.
  std::vector<Row> rows(double end) const;
  LinkChurnStats overall(double end) const;
  double mean_link_count() const { return samples_ ? link_sum_ / static_cast<double>(samples_) : 0.0; }
  /// Link removals per link per second.
  double theta(double end) const;

 private:
  int n_;
  double start_;
  double window_;
  std::vector<DiffRecord> records_;
  double link_sum_ = 0.0;
  std::size_t samples_ = 0;
};

}  // namespace scalewall
