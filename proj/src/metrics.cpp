#include "scalewall/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace scalewall {

std::string_view to_string(IntervalKind k) { return k == IntervalKind::Connectivity ? "connectivity" : "repair"; }

IntervalLedger::IntervalLedger(std::size_t pairs, double origin_s, double step_s)
    : slots_(pairs), origin_(origin_s), step_(step_s) {
  if (!(step_s > 0.0)) throw std::invalid_argument("ledger step must be > 0");
}

std::optional<ClosedInterval> IntervalLedger::update(std::size_t pair, PairStatus status, std::int64_t tick) {
  auto& slot = slots_.at(pair);
  if (tick <= slot.last) {
    throw std::invalid_argument("ledger: snapshot at tick " + std::to_string(tick) + " not after tick " +
                                std::to_string(slot.last) + " for pair " + std::to_string(pair));
  }
  slot.last = tick;

  const std::uint8_t next = status == PairStatus::Connected ? 1 : status == PairStatus::Broken ? 2 : 0;
  if (next == slot.state) return std::nullopt;

  std::optional<ClosedInterval> closed;
  if (slot.state != 0) {
    closed = ClosedInterval{pair, slot.state == 1 ? IntervalKind::Connectivity : IntervalKind::Repair, slot.start,
                            tick, slot.tainted || next == 0};
  }
  // an interval opened from nothing (first observation, end of a partition) has no true start
  slot.tainted = slot.state == 0;
  slot.state = next;
  slot.start = tick;
  return closed;
}

std::optional<IntervalLedger::OpenInterval> IntervalLedger::open(std::size_t pair) const {
  const auto& slot = slots_.at(pair);
  if (slot.state == 0) return std::nullopt;
  return OpenInterval{slot.state == 1 ? IntervalKind::Connectivity : IntervalKind::Repair, slot.start, slot.tainted};
}

void DurationCounts::add(std::int64_t ticks, std::uint64_t count) {
  if (ticks <= 0) throw std::invalid_argument("interval durations must be positive");
  counts_[ticks] += count;
  total_ += count;
}

void DurationCounts::merge(const DurationCounts& other) {
  for (const auto& [ticks, c] : other.counts_) add(ticks, c);
}

double DurationCounts::quantile(double q) const {
  if (total_ == 0) return std::numeric_limits<double>::quiet_NaN();
  const auto target = static_cast<std::uint64_t>(std::ceil(q * static_cast<double>(total_)));
  std::uint64_t seen = 0;
  for (const auto& [ticks, c] : counts_) {
    seen += c;
    if (seen >= std::max<std::uint64_t>(target, 1)) return static_cast<double>(ticks) * step_;
  }
  return static_cast<double>(counts_.rbegin()->first) * step_;
}

double DurationCounts::median() const {
  if (total_ == 0) return std::numeric_limits<double>::quiet_NaN();
  // 0-based ranks of the middle element(s)
  const std::uint64_t lo_rank = (total_ - 1) / 2;
  const std::uint64_t hi_rank = total_ / 2;
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  std::uint64_t seen = 0;
  bool have_lo = false;
  for (const auto& [ticks, c] : counts_) {
    seen += c;
    if (!have_lo && seen > lo_rank) {
      lo = ticks;
      have_lo = true;
    }
    if (seen > hi_rank) {
      hi = ticks;
      break;
    }
  }
  return 0.5 * static_cast<double>(lo + hi) * step_;
}

double DurationCounts::mean() const {
  if (total_ == 0) return std::numeric_limits<double>::quiet_NaN();
  double sum = 0.0;
  for (const auto& [ticks, c] : counts_) sum += static_cast<double>(ticks) * static_cast<double>(c);
  return sum / static_cast<double>(total_) * step_;
}

Summary summarize(std::span<const double> values) {
  Summary s;
  s.count = values.size();
  if (values.empty()) {
    s.median = s.mean = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  s.median = v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
  s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  return s;
}

HistogramExport export_histogram(const DurationCounts& durations, double bin_width) {
  if (!(bin_width > 0.0)) throw std::invalid_argument("histogram bin width must be > 0");
  HistogramExport h;
  h.bin_width = bin_width;
  h.count = durations.count();
  if (durations.empty()) {
    h.median = h.mean = std::numeric_limits<double>::quiet_NaN();
    return h;
  }
  h.median = durations.median();
  h.mean = durations.mean();
  const double total = static_cast<double>(durations.count());
  std::uint64_t cumulative = 0;
  for (const auto& [ticks, c] : durations.counts()) {
    const double seconds = static_cast<double>(ticks) * durations.step();
    // small epsilon keeps exact bin edges (e.g. 0.5 s) in the upper bin despite tick rounding
    const auto bin = static_cast<std::size_t>(std::floor(seconds / bin_width + 1e-9));
    if (h.normalized.size() <= bin) h.normalized.resize(bin + 1, 0.0);
    h.normalized[bin] += static_cast<double>(c) / total;
    cumulative += c;
    h.cdf.emplace_back(seconds, static_cast<double>(cumulative) / total);
  }
  return h;
}

HistogramExport export_histograms(std::span<const ClosedInterval> ledger, IntervalKind kind, double step,
                                  double bin_width) {
  DurationCounts counts(step);
  for (const auto& iv : ledger) {
    if (iv.kind == kind && !iv.tainted) counts.add(iv.ticks());
  }
  return export_histogram(counts, bin_width);
}

PathRecorder::PathRecorder(std::size_t pairs, double origin_s, double step_s, bool keep_intervals)
    : ledger_(pairs, origin_s, step_s), connectivity_(step_s), repair_(step_s), keep_intervals_(keep_intervals) {}

double PathRecorder::record(std::int64_t tick, std::span<const PairStatus> statuses) {
  std::size_t connected = 0;
  std::size_t broken = 0;
  for (std::size_t i = 0; i < statuses.size(); ++i) {
    const PairStatus st = statuses[i];
    connected += st == PairStatus::Connected;
    broken += st == PairStatus::Broken;
    const auto closed = ledger_.update(i, st, tick);
    if (!closed) continue;
    if (closed->kind == IntervalKind::Connectivity && st == PairStatus::Broken) ++failures_;
    if (!closed->tainted) {
      (closed->kind == IntervalKind::Connectivity ? connectivity_ : repair_).add(closed->ticks());
    }
    if (keep_intervals_) intervals_.push_back(*closed);
  }
  observed_pair_ticks_ += static_cast<double>(connected + broken);
  const std::size_t denom = connected + broken;
  const double frac = denom ? static_cast<double>(connected) / static_cast<double>(denom)
                            : std::numeric_limits<double>::quiet_NaN();
  reachability_.emplace_back(ledger_.time_of(tick), frac);
  return frac;
}

}  // namespace scalewall
