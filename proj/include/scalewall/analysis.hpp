#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scalewall/engine.hpp"
#include "scalewall/kernels.hpp"

namespace scalewall {

struct CurvePoint {
  double n = 0.0;
  double median = 0.0;  // seconds
  double mean = 0.0;
  std::uint64_t sample_count = 0;
};

enum class CurveField { Median, Mean };

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;  // natural log
  double r_squared = 0.0;
  std::size_t points = 0;
  /// Thresholds are only meaningful on a decent fit.
  bool conclusive() const { return r_squared >= 0.8; }
  double at(double n) const;
};

/// Least squares on (ln n, ln value). Needs >= 3 points, all positive.
SlopeFit fit_loglog(std::span<const CurvePoint> points, CurveField field = CurveField::Median);
SlopeFit fit_loglog(std::span<const double> n, std::span<const double> values);

enum class WallMethod { SegmentIntersection, PowerLawSolve };
std::string_view to_string(WallMethod m);

struct WallEstimate {
  double n_star = 0.0;
  WallMethod method = WallMethod::SegmentIntersection;
  bool extrapolated = false;
  std::string conn_id;
  std::string repair_id;
};

/// First n where the median connectivity curve drops to the repair curve. Interpolates
/// in log-log space between bracketing sizes; without a crossing, intersects the two
/// fitted power laws and flags the result as extrapolated. Repair values are read at
/// the connectivity sizes (log-log interpolation when the grids differ).
WallEstimate find_wall(std::span<const CurvePoint> conn, std::span<const CurvePoint> repair);

struct RepairBound {
  double seconds = 0.0;
  bool extrapolated = false;  // beyond 4x the largest sampled n
  bool from_fit = false;
};

/// Connectivity median expected at n_target, i.e. the repair budget that keeps n_target inside the wall.
RepairBound required_repair_bound(std::span<const CurvePoint> conn, double n_target);
RepairBound required_repair_bound(const SlopeFit& fit, double n_target, double largest_sampled_n);

struct TheoryParams {
  double theta = 0.0;   // link removals per link per second
  double calib_c = 0.0;
};

/// calib_c / (theta * sqrt(n)).
double theory_connectivity(double n, const TheoryParams& p);
/// Picks calib_c so that theory_connectivity(n, .) == median.
TheoryParams calibrate(double n, double median, double theta);

struct PathLengthResult {
  double mean_hops = 0.0;
  std::uint64_t total_hops = 0;  // over ordered connected pairs
  std::uint64_t connected_pairs = 0;
  bool partitioned = false;
  int attempts = 0;
};

/// Exact all-pairs mean BFS distance of a concrete graph.
PathLengthResult mean_hop_distance(const kernels::Adjacency& adjacency);
/// Uniform random disk graph at density rho; partitioned draws are regenerated up to
/// max_attempts times, after which the last instance is used and flagged.
PathLengthResult theory_path_length(int n, double rho, double radio_range, std::uint64_t seed, int max_attempts = 50);

/// Key shared by runs that differ only in node count and seed.
std::string config_id(const SimConfig& c);

struct SizePoint {
  int n = 0;
  int seeds = 0;
  DurationCounts connectivity;
  DurationCounts repair;
  double failure_rate = 0.0;  // means over seeds
  double reachability = 0.0;
  double changes_per_node_per_sec = 0.0;
  double theta = 0.0;
  double nlo_fraction = 0.0;
};

struct ConfigGroup {
  std::string id;
  SimConfig config;  // representative (node count and seed of the first run)
  std::map<int, SizePoint> sizes;

  std::vector<CurvePoint> curve(IntervalKind kind) const;
  std::vector<CurvePoint> failure_curve() const;
};

/// Pools duration multisets across seeds per (config id, n).
std::vector<ConfigGroup> aggregate(std::span<const RunResult> runs);

struct AnalysisReport {
  std::vector<ConfigGroup> groups;
  struct FitRow {
    std::string id;
    std::string kind;
    SlopeFit fit;
  };
  std::vector<FitRow> fits;
  struct WallRow {
    std::string id;
    double estimation_time = 0.0;
    std::optional<WallEstimate> wall;
  };
  std::vector<WallRow> walls;
  struct TheoryRow {
    std::string id;
    int n = 0;
    int calibration_n = 0;
    TheoryParams params;
    double predicted = 0.0;
    double simulated = 0.0;
  };
  std::vector<TheoryRow> theory;
};

AnalysisReport analyze(std::span<const RunResult> runs);
/// Writes curves.csv, rates.csv, fits.csv, wall.csv and theory.csv.
void write_report(const AnalysisReport& report, const std::filesystem::path& dir);
/// Every directory under root (inclusive) holding run.cfg and summary.csv, sorted by path.
std::vector<RunResult> load_runs(const std::filesystem::path& root);

}  // namespace scalewall
