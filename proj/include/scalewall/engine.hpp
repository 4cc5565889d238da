#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "scalewall/config.hpp"
#include "scalewall/ground_truth.hpp"
#include "scalewall/lsr.hpp"
#include "scalewall/metrics.hpp"

namespace scalewall {

struct RunSummary {
  SimConfig config;
  double mean_reachability = 0.0;
  double median_reachability = 0.0;
  double nlo_fraction = 0.0;
  LinkChurnStats churn;
  double theta = 0.0;  // link removals per link per second
  double mean_link_count = 0.0;
  double mean_degree = 0.0;
  double connectivity_median = 0.0;
  double connectivity_mean = 0.0;
  std::uint64_t connectivity_count = 0;
  double repair_median = 0.0;
  double repair_mean = 0.0;
  std::uint64_t repair_count = 0;
  double path_failure_rate = 0.0;  // connected->broken transitions per tracked path per second
  std::uint64_t tracked_pairs = 0;
  std::uint64_t link_events = 0;
  std::uint64_t lsus_originated = 0;
  std::uint64_t transmissions = 0;
  std::uint64_t events_fired = 0;
  std::vector<std::string> artifacts;
};

struct RunResult {
  RunSummary summary;
  DurationCounts connectivity;
  DurationCounts repair;
  std::vector<std::pair<double, double>> reachability;  // (t, fraction)
  std::vector<ChurnMeter::Row> churn_rows;
  ControlTrafficCounter control;
};

/// Simulates [0, duration] for one configuration. With an output directory, every
/// CSV artifact is written there; identical configs produce byte-identical files.
RunResult run(const SimConfig& config, const std::optional<std::filesystem::path>& out_dir = std::nullopt);

/// Writes the per-run artifacts of a finished run.
std::vector<std::string> write_run(const RunResult& result, const std::filesystem::path& dir);

/// Reads back the parts of a run directory that analysis consumes.
RunResult load_run(const std::filesystem::path& dir);

}  // namespace scalewall
