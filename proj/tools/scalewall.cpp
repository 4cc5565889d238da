// Command-line front end: single runs, sweeps, cross-run analysis and closed-form predictions.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scalewall/analysis.hpp"
#include "scalewall/csv.hpp"
#include "scalewall/engine.hpp"
#include "scalewall/sweep.hpp"

using namespace scalewall;

namespace {

SimConfig build_config(const std::string& path, const std::vector<std::string>& overrides) {
  SimConfig cfg = path.empty() ? SimConfig{} : load_config(path);
  for (const auto& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
    set_config_value(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  cfg.validate();
  return cfg;
}

void print_summary(const RunSummary& s) {
  std::printf("n=%d protocol=%s mobility=%s seed=%llu\n", s.config.node_count,
              std::string(to_string(s.config.protocol)).c_str(),
              std::string(to_string(s.config.mobility.model)).c_str(),
              static_cast<unsigned long long>(s.config.seed));
  std::printf("  reachability mean %.4f median %.4f\n", s.mean_reachability, s.median_reachability);
  std::printf("  connectivity median %.3f s (%llu intervals), repair median %.3f s (%llu intervals)\n",
              s.connectivity_median, static_cast<unsigned long long>(s.connectivity_count), s.repair_median,
              static_cast<unsigned long long>(s.repair_count));
  std::printf("  link changes per node per s %.4f, theta %.5f, nlo %.5f\n", s.churn.changes_per_node_per_sec,
              s.theta, s.nlo_fraction);
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& v : csv::split(text)) {
    if (!v.empty()) out.push_back(std::stod(v));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scalewall: MANET routing repair-time scaling simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::vector<std::string> overrides;

  auto* sim = app.add_subcommand("sim", "run one simulation");
  sim->add_option("--config", config_path, "key = value config file")->required()->check(CLI::ExistingFile);
  sim->add_option("--out", out_dir, "output directory")->required();
  sim->add_option("--set", overrides, "override a config key (key=value), repeatable");
  std::optional<std::uint64_t> seed_override;
  sim->add_option("--seed", seed_override, "override the config seed");

  std::vector<std::string> axes;
  std::string seeds_text;
  int threads = 0;
  auto* sweep = app.add_subcommand("sweep", "run a parameter sweep and aggregate it");
  sweep->add_option("--config", config_path, "base config file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--axis", axes, "name=v1,v2,... (repeatable; axes are crossed)");
  sweep->add_option("--seeds", seeds_text, "s1,s2,...");
  sweep->add_option("--out", out_dir, "output root")->default_val("sweep_out");
  sweep->add_option("--threads", threads, "parallel runs (0 = all cores)")->default_val(0);
  sweep->add_option("--set", overrides, "override a base config key (key=value), repeatable");
  sweep->add_option("--seed", seed_override, "override the base seed (used when --seeds is empty)");

  std::string analyze_dir;
  std::string analyze_out;
  auto* analyze_cmd = app.add_subcommand("analyze", "aggregate run directories into curves, fits and walls");
  analyze_cmd->add_option("dir", analyze_dir, "directory containing run outputs")->required()->check(CLI::ExistingDirectory);
  analyze_cmd->add_option("--out", analyze_out, "where to write the report (default: dir)");

  std::string n_text;
  double theta = 0.0;
  double calib_c = 1.0;
  double rho = 8.0;
  double range = 100.0;
  std::uint64_t seed = 1;
  bool path_lengths = false;
  auto* theory = app.add_subcommand("theory", "closed-form connectivity prediction and path-length oracle");
  theory->add_option("--n", n_text, "node counts n1,n2,...")->required();
  theory->add_option("--theta", theta, "link removals per link per second")->required()->check(CLI::PositiveNumber);
  theory->add_option("--calib-c", calib_c, "calibration constant")->default_val(1.0);
  theory->add_option("--rho", rho, "target density for the path-length oracle")->default_val(8.0);
  theory->add_option("--range", range, "radio range for the path-length oracle")->default_val(100.0);
  theory->add_option("--seed", seed, "instance seed")->default_val(1);
  theory->add_flag("--path-length", path_lengths, "also report exact all-pairs mean hop distance");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim) {
      auto cfg = build_config(config_path, overrides);
      if (seed_override) cfg.seed = *seed_override;
      const auto result = run(cfg, std::filesystem::path(out_dir));
      print_summary(result.summary);
    } else if (*sweep) {
      auto base = build_config(config_path, overrides);
      if (seed_override) base.seed = *seed_override;
      std::vector<SweepAxis> parsed;
      for (const auto& a : axes) parsed.push_back(parse_axis(a));
      const auto seeds = parse_seeds(seeds_text);
      const auto plan = plan_sweep(base, parsed, seeds);
      std::fprintf(stderr, "sweep: %zu runs\n", plan.size());
      const auto results = run_sweep(plan, std::filesystem::path(out_dir), threads);
      write_report(analyze(results), out_dir);
      for (const auto& r : results) print_summary(r.summary);
    } else if (*analyze_cmd) {
      const auto runs = load_runs(analyze_dir);
      if (runs.empty()) throw std::runtime_error("no run directories under '" + analyze_dir + "'");
      const auto report = analyze(runs);
      write_report(report, analyze_out.empty() ? analyze_dir : analyze_out);
      for (const auto& w : report.walls) {
        if (w.wall) {
          std::printf("%s: wall n* = %.1f (%s%s)\n", w.id.c_str(), w.wall->n_star,
                      std::string(to_string(w.wall->method)).c_str(), w.wall->extrapolated ? ", extrapolated" : "");
        }
      }
    } else if (*theory) {
      const TheoryParams params{theta, calib_c};
      std::printf(path_lengths ? "n,predicted_connectivity_s,mean_hops,partitioned\n" : "n,predicted_connectivity_s\n");
      for (const double n : parse_list(n_text)) {
        const double pred = theory_connectivity(n, params);
        if (path_lengths) {
          const auto pl = theory_path_length(static_cast<int>(n), rho, range, seed);
          std::printf("%s,%s,%s,%d\n", csv::num(n).c_str(), csv::num(pred).c_str(), csv::num(pl.mean_hops).c_str(),
                      pl.partitioned ? 1 : 0);
        } else {
          std::printf("%s,%s\n", csv::num(n).c_str(), csv::num(pred).c_str());
        }
      }
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
