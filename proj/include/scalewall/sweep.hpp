#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scalewall/config.hpp"
#include "scalewall/engine.hpp"

namespace scalewall {

struct SweepAxis {
  std::string key;
  std::vector<std::string> values;
};

/// Parses `name=v1,v2,...`.
SweepAxis parse_axis(std::string_view text);
std::vector<std::uint64_t> parse_seeds(std::string_view text);

struct SweepRun {
  SimConfig config;
  std::string label;  // also the run's directory name under the sweep root
};

/// Cartesian product of all axes, crossed with the seeds. No axes means one run per seed;
/// no seeds means the base seed.
std::vector<SweepRun> plan_sweep(const SimConfig& base, std::span<const SweepAxis> axes,
                                 std::span<const std::uint64_t> seeds);

/// Runs every configuration, in parallel when threads > 1 (0 = OpenMP default).
/// A failing run raises std::runtime_error naming its label.
std::vector<RunResult> run_sweep(std::span<const SweepRun> runs, const std::optional<std::filesystem::path>& out_root,
                                 int threads = 0);

}  // namespace scalewall
