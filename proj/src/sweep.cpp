#include "scalewall/sweep.hpp"

#include <exception>
#include <stdexcept>

#include <omp.h>

#include "scalewall/csv.hpp"

namespace scalewall {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::string sanitize(std::string s) {
  for (char& c : s) {
    if (c == '/' || c == ' ' || c == ',' || c == '=') c = '_';
  }
  return s;
}

}  // namespace

SweepAxis parse_axis(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) throw std::invalid_argument("axis must look like name=v1,v2: '" + std::string(text) + "'");
  SweepAxis axis;
  axis.key = trim(text.substr(0, eq));
  for (auto& v : csv::split(text.substr(eq + 1))) {
    auto t = trim(v);
    if (!t.empty()) axis.values.push_back(std::move(t));
  }
  if (axis.key.empty() || axis.values.empty()) {
    throw std::invalid_argument("axis needs a name and at least one value: '" + std::string(text) + "'");
  }
  return axis;
}

std::vector<std::uint64_t> parse_seeds(std::string_view text) {
  std::vector<std::uint64_t> seeds;
  for (const auto& v : csv::split(text)) {
    const auto t = trim(v);
    if (t.empty()) continue;
    std::size_t used = 0;
    const auto s = std::stoull(t, &used);
    if (used != t.size()) throw std::invalid_argument("bad seed '" + t + "'");
    seeds.push_back(s);
  }
  return seeds;
}

std::vector<SweepRun> plan_sweep(const SimConfig& base, std::span<const SweepAxis> axes,
                                 std::span<const std::uint64_t> seeds) {
  std::vector<std::pair<SimConfig, std::string>> combos{{base, ""}};
  for (const auto& axis : axes) {
    std::vector<std::pair<SimConfig, std::string>> next;
    for (const auto& [cfg, label] : combos) {
      for (const auto& value : axis.values) {
        SimConfig c = cfg;
        set_config_value(c, axis.key, value);
        next.emplace_back(std::move(c), label + sanitize(axis.key) + "-" + sanitize(value) + "_");
      }
    }
    combos = std::move(next);
  }
  const std::vector<std::uint64_t> use_seeds = seeds.empty() ? std::vector<std::uint64_t>{base.seed}
                                                             : std::vector<std::uint64_t>(seeds.begin(), seeds.end());
  std::vector<SweepRun> runs;
  for (const auto& [cfg, label] : combos) {
    for (const auto seed : use_seeds) {
      SweepRun r{cfg, label + "seed-" + std::to_string(seed)};
      r.config.seed = seed;
      r.config.validate();
      runs.push_back(std::move(r));
    }
  }
  return runs;
}

std::vector<RunResult> run_sweep(std::span<const SweepRun> runs, const std::optional<std::filesystem::path>& out_root,
                                 int threads) {
  std::vector<RunResult> results(runs.size());
  std::vector<std::exception_ptr> errors(runs.size());
  const int count = static_cast<int>(runs.size());
  const int use = threads > 0 ? threads : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 1) num_threads(use)
  for (int i = 0; i < count; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    try {
      std::optional<std::filesystem::path> dir;
      if (out_root) dir = *out_root / runs[ui].label;
      results[ui] = run(runs[ui].config, dir);
    } catch (...) {
      errors[ui] = std::current_exception();
    }
  }

  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      throw std::runtime_error("sweep run '" + runs[i].label + "' failed: " + e.what());
    }
  }

  if (out_root) {
    std::filesystem::create_directories(*out_root);
    csv::Writer w(*out_root / "sweep_index.csv", "label,n,beacon_period,mobility,speed,protocol,seed");
    for (const auto& r : runs) {
      const auto& c = r.config;
      w.row(r.label, c.node_count, c.beacon_period, std::string(to_string(c.mobility.model)),
            csv::num(c.mobility.v_min) + "-" + csv::num(c.mobility.v_max), std::string(to_string(c.protocol)), c.seed);
    }
    w.close();
  }
  return results;
}

}  // namespace scalewall
