#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scalewall/paths.hpp"

namespace scalewall {

enum class IntervalKind : std::uint8_t { Connectivity, Repair };
std::string_view to_string(IntervalKind k);

struct ClosedInterval {
  std::size_t pair = 0;
  IntervalKind kind = IntervalKind::Connectivity;  // Connected interval or Broken (repair) interval
  std::int64_t start_tick = 0;
  std::int64_t end_tick = 0;
  bool tainted = false;  // touches a partition gap or the start of observation
  std::int64_t ticks() const { return end_tick - start_tick; }
};

/// Per ordered pair: alternating Connected/Broken intervals on the snapshot grid.
/// Timestamps are ticks; tick k is origin + k * step seconds.
class IntervalLedger {
 public:
  IntervalLedger(std::size_t pairs, double origin_s, double step_s);

  /// Feeds the status observed at `tick`; returns the interval this closes, if any.
  /// Ticks must strictly increase per pair (throws std::invalid_argument otherwise).
  std::optional<ClosedInterval> update(std::size_t pair, PairStatus status, std::int64_t tick);

  struct OpenInterval {
    IntervalKind kind;
    std::int64_t start_tick;
    bool tainted;
  };
  std::optional<OpenInterval> open(std::size_t pair) const;

  double time_of(std::int64_t tick) const { return origin_ + static_cast<double>(tick) * step_; }
  double step() const { return step_; }
  std::size_t pairs() const { return slots_.size(); }

 private:
  struct Slot {
    std::int64_t start = 0;
    std::int64_t last = -1;
    std::uint8_t state = 0;  // 0 none, 1 connected, 2 broken
    bool tainted = false;
  };
  std::vector<Slot> slots_;
  double origin_;
  double step_;
};

/// Exact multiset of interval durations, in snapshot ticks.
class DurationCounts {
 public:
  explicit DurationCounts(double step = 0.05) : step_(step) {}
  void add(std::int64_t ticks, std::uint64_t count = 1);
  void merge(const DurationCounts& other);

  std::uint64_t count() const { return total_; }
  bool empty() const { return total_ == 0; }
  double step() const { return step_; }
  const std::map<std::int64_t, std::uint64_t>& counts() const { return counts_; }
  /// Seconds; NaN when empty. Even counts average the two middle values.
  double median() const;
  double mean() const;
  /// Smallest duration d with CDF(d) >= q.
  double quantile(double q) const;

 private:
  double step_;
  std::map<std::int64_t, std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

struct Summary {
  double median = 0.0;
  double mean = 0.0;
  std::size_t count = 0;
};
Summary summarize(std::span<const double> values);

struct HistogramExport {
  double bin_width = 0.5;
  std::vector<double> normalized;  // bin i covers [i*w, (i+1)*w)
  std::vector<std::pair<double, double>> cdf;  // (duration_s, cumulative fraction)
  double median = 0.0;
  double mean = 0.0;
  std::uint64_t count = 0;
};

HistogramExport export_histogram(const DurationCounts& durations, double bin_width = 0.5);
/// Untainted closed intervals of one kind.
HistogramExport export_histograms(std::span<const ClosedInterval> ledger, IntervalKind kind, double step,
                                  double bin_width = 0.5);

/// Snapshot-side bookkeeping: ledger, duration multisets, failure count, reachability series.
class PathRecorder {
 public:
  PathRecorder(std::size_t pairs, double origin_s, double step_s, bool keep_intervals);

  /// Applies one snapshot's statuses; returns the reachable fraction (NaN if every pair is partitioned).
  double record(std::int64_t tick, std::span<const PairStatus> statuses);

  const DurationCounts& durations(IntervalKind k) const {
    return k == IntervalKind::Connectivity ? connectivity_ : repair_;
  }
  std::uint64_t failures() const { return failures_; }
  /// Ordered-pair seconds observed with a ground-truth path.
  double observed_pair_seconds() const { return observed_pair_ticks_ * ledger_.step(); }
  const std::vector<std::pair<double, double>>& reachability() const { return reachability_; }
  const std::vector<ClosedInterval>& intervals() const { return intervals_; }
  const IntervalLedger& ledger() const { return ledger_; }

 private:
  IntervalLedger ledger_;
  DurationCounts connectivity_;
  DurationCounts repair_;
  std::uint64_t failures_ = 0;
  double observed_pair_ticks_ = 0.0;
  bool keep_intervals_;
  std::vector<ClosedInterval> intervals_;
  std::vector<std::pair<double, double>> reachability_;
};

}  // namespace scalewall
