#pragma once

// Data-parallel kernels. Each has a straightforward serial reference kept for
// tests and benchmarks, and an OpenMP implementation used by the engine.
// Both produce identical results for identical inputs.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "scalewall/ground_truth.hpp"
#include "scalewall/mobility.hpp"
#include "scalewall/paths.hpp"
#include "scalewall/routing_table.hpp"

namespace scalewall::kernels {

using Adjacency = std::vector<std::vector<int>>;

struct HopStats {
  std::uint64_t hop_sum = 0;         // over ordered connected pairs
  std::uint64_t connected_pairs = 0;  // ordered
  bool partitioned = false;
  friend bool operator==(const HopStats&, const HopStats&) = default;
};

using RouteJob = std::function<void(int node, BfsScratch& scratch)>;

namespace serial {

/// O(n^2) all-pairs distance test.
Adjacency disk_graph(std::span<const Vec2> positions, double radio_range);

/// Per-pair traverse().
void classify_pairs(const PairSet& pairs, std::span<const RoutingTable> tables, const GroundTruthGraph& truth,
                    std::span<const int> component, std::span<PairStatus> out);

HopStats all_pairs_hops(const Adjacency& adjacency);

void refresh_routes(std::span<const int> nodes, const RouteJob& job);

}  // namespace serial

namespace parallel {

/// Uniform grid with cell = radio_range, one adjacency row per thread iteration.
Adjacency disk_graph(std::span<const Vec2> positions, double radio_range, double side);

/// Per-destination memoised walk over the next-hop forest; destinations in parallel.
void classify_pairs(const PairSet& pairs, std::span<const RoutingTable> tables, const GroundTruthGraph& truth,
                    std::span<const int> component, std::span<PairStatus> out);

HopStats all_pairs_hops(const Adjacency& adjacency);

void refresh_routes(std::span<const int> nodes, const RouteJob& job);

}  // namespace parallel

}  // namespace scalewall::kernels
