#include "scalewall/engine.hpp"

#include <algorithm>
#include <array>
#include <memory>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "scalewall/csv.hpp"
#include "scalewall/kernels.hpp"
#include "scalewall/mobility.hpp"
#include "scalewall/olsr.hpp"
#include "scalewall/paths.hpp"
#include "scalewall/random.hpp"
#include "scalewall/scheduler.hpp"

namespace scalewall {

namespace {

// Stream ids for forked generators. Node streams occupy [kNodeBase, kNodeBase + n).
constexpr std::uint64_t kChannelStream = 1;
constexpr std::uint64_t kPairStream = 2;
constexpr std::uint64_t kPhaseBase = 1ULL << 32;
constexpr std::uint64_t kNodeBase = 1ULL << 40;

struct Transmission {
  int sender = -1;
  ControlKind kind = ControlKind::Beacon;
  std::vector<int> receivers;
  LsuPtr lsu;
  HelloPtr hello;
  TcPtr tc;
};

class Simulation {
 public:
  Simulation(const SimConfig& cfg, const std::optional<std::filesystem::path>& out_dir);
  RunResult run();

 private:
  double now() const { return sched_.now(); }
  void schedule(double t, EventKind kind, int node = -1, std::uint32_t payload = 0) {
    sched_.schedule(Event{t, 0, kind, node, payload});
  }

  void on_mobility();
  void on_beacon(int node);
  void on_hello(int node);
  void on_tc(int node);
  void on_deliver(std::uint32_t slot);
  void on_snapshot();

  void link_event(const LinkEvent& ev);
  void broadcast(int sender, ControlKind kind, std::size_t ids, LsuPtr lsu, HelloPtr hello, TcPtr tc);
  void deliver_to(int r, const Transmission& tx);
  void refresh_routes();

  std::uint64_t message_bytes(std::size_t ids) const {
    return static_cast<std::uint64_t>(cfg_.control_header_bytes) +
           static_cast<std::uint64_t>(cfg_.control_bytes_per_id) * ids;
  }

  const SimConfig cfg_;
  const int n_;
  const Area area_;
  const double heartbeat_;  // beacon period (LSR) or hello interval (OLSR)

  std::vector<Rng> node_rng_;
  Rng channel_rng_;
  std::vector<MotionState> motion_;
  std::vector<Vec2> positions_;
  GroundTruthGraph truth_;
  std::vector<int> component_;

  Scheduler sched_;
  std::vector<double> beacon_phase_;
  std::vector<std::int64_t> beacon_index_;
  std::vector<double> tc_phase_;
  std::vector<std::int64_t> tc_index_;
  std::int64_t mobility_index_ = 0;
  std::int64_t snapshot_index_ = 0;

  std::vector<LsrRouter> lsr_;
  std::vector<OlsrRouter> olsr_;
  std::vector<RoutingTable> tables_;
  std::vector<char> dirty_;

  std::vector<Transmission> pool_;
  std::vector<std::uint32_t> free_slots_;

  ControlTrafficCounter control_;
  ChurnMeter churn_;
  PairSet pairs_;
  PathRecorder recorder_;
  std::vector<PairStatus> statuses_;

  std::uint64_t link_events_ = 0;
  std::uint64_t lsus_originated_ = 0;
  std::uint64_t transmissions_ = 0;

  // per second, per node, per kind
  std::vector<std::vector<std::array<std::uint64_t, 4>>> nlo_bins_;
  std::optional<std::filesystem::path> out_dir_;
  std::unique_ptr<csv::Writer> link_trace_;
  std::unique_ptr<csv::Writer> mobility_trace_;
};

PairSet make_pairs(const SimConfig& cfg) {
  const std::int64_t count = cfg.pair_sample.resolve(cfg.node_count);
  const std::int64_t all = static_cast<std::int64_t>(cfg.node_count) * (cfg.node_count - 1);
  if (count >= all) return PairSet::all(cfg.node_count);
  return PairSet::sample(cfg.node_count, count, Rng(cfg.seed).fork(kPairStream).engine()());
}

Simulation::Simulation(const SimConfig& cfg, const std::optional<std::filesystem::path>& out_dir)
    : cfg_(cfg),
      n_(cfg.node_count),
      area_{cfg.side()},
      heartbeat_(cfg.protocol == Protocol::LSR ? cfg.beacon_period : cfg.olsr.hello_interval),
      channel_rng_(Rng(cfg.seed).fork(kChannelStream)),
      control_(cfg.node_count),
      churn_(cfg.node_count, cfg.warmup),
      pairs_(make_pairs(cfg)),
      recorder_(pairs_.size(), cfg.warmup, cfg.snapshot_interval, cfg.trace_intervals),
      statuses_(pairs_.size(), PairStatus::NoGroundTruthPath),
      out_dir_(out_dir) {
  const Rng root(cfg.seed);
  node_rng_ = fork_streams(root, n_, kNodeBase);
  auto phase_rng = fork_streams(root, n_, kPhaseBase);

  motion_ = init_positions(n_, area_, cfg.mobility, node_rng_);
  positions_.resize(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) positions_[static_cast<std::size_t>(i)] = motion_[static_cast<std::size_t>(i)].position;
  truth_ = rebuild(positions_, cfg.radio_range, area_.side);
  component_ = components(truth_);

  tables_.reserve(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) tables_.emplace_back(i, n_);
  dirty_.assign(static_cast<std::size_t>(n_), 0);
  if (cfg.protocol == Protocol::LSR) {
    for (int i = 0; i < n_; ++i) lsr_.emplace_back(i, n_);
  } else {
    for (int i = 0; i < n_; ++i) olsr_.emplace_back(i, n_);
  }

  beacon_phase_.resize(static_cast<std::size_t>(n_));
  beacon_index_.assign(static_cast<std::size_t>(n_), 0);
  tc_phase_.resize(static_cast<std::size_t>(n_));
  tc_index_.assign(static_cast<std::size_t>(n_), 0);
  for (int i = 0; i < n_; ++i) {
    auto& r = phase_rng[static_cast<std::size_t>(i)];
    beacon_phase_[static_cast<std::size_t>(i)] = r.uniform(0.0, heartbeat_);
    tc_phase_[static_cast<std::size_t>(i)] = r.uniform(0.0, cfg.olsr.tc_interval);
  }

  if (cfg.trace_nlo) {
    nlo_bins_.assign(static_cast<std::size_t>(std::ceil(cfg.duration)) + 1,
                     std::vector<std::array<std::uint64_t, 4>>(static_cast<std::size_t>(n_)));
  }
  if (out_dir_) {
    std::filesystem::create_directories(*out_dir_);
    if (cfg.trace_link_events) {
      link_trace_ = std::make_unique<csv::Writer>(*out_dir_ / "link_events.csv", "t,node,neighbor,kind");
    }
    if (cfg.trace_mobility) {
      mobility_trace_ = std::make_unique<csv::Writer>(*out_dir_ / "mobility.csv", "t,node,x,y");
      for (int i = 0; i < n_; ++i) {
        const auto& p = positions_[static_cast<std::size_t>(i)];
        mobility_trace_->row(0.0, i, p.x, p.y);
      }
    }
  }
}

RunResult Simulation::run() {
  const double tick = cfg_.mobility.tick;
  if (tick <= cfg_.duration) schedule(tick, EventKind::MobilityUpdate);
  for (int i = 0; i < n_; ++i) {
    schedule(beacon_phase_[static_cast<std::size_t>(i)], EventKind::BeaconEmit, i);
    if (cfg_.protocol == Protocol::OLSR) schedule(tc_phase_[static_cast<std::size_t>(i)], EventKind::TcEmit, i);
  }
  if (cfg_.warmup <= cfg_.duration) schedule(cfg_.warmup, EventKind::Snapshot);

  while (auto ev = sched_.pop_until(cfg_.duration)) {
    switch (ev->kind) {
      case EventKind::MobilityUpdate: on_mobility(); break;
      case EventKind::BeaconEmit:
        if (cfg_.protocol == Protocol::LSR) {
          on_beacon(ev->node);
        } else {
          on_hello(ev->node);
        }
        break;
      case EventKind::TcEmit: on_tc(ev->node); break;
      case EventKind::MessageDeliver: on_deliver(ev->payload); break;
      case EventKind::Snapshot: on_snapshot(); break;
      case EventKind::TimeoutScan: break;  // scans ride on the heartbeat event
    }
  }

  RunResult result;
  auto& s = result.summary;
  s.config = cfg_;
  const auto& series = recorder_.reachability();
  std::vector<double> fractions;
  fractions.reserve(series.size());
  for (const auto& [t, f] : series) {
    if (!std::isnan(f)) fractions.push_back(f);
  }
  const auto reach = summarize(fractions);
  s.mean_reachability = reach.mean;
  s.median_reachability = reach.median;
  const double measured = std::max(cfg_.duration - cfg_.warmup, 0.0);
  s.nlo_fraction = cfg_.duration > 0.0 ? nlo_fraction(control_, cfg_.duration, cfg_.channel_capacity) : 0.0;
  if (measured >= 10.0) {
    s.churn = churn_.overall(cfg_.duration);
    s.theta = churn_.theta(cfg_.duration);
  }
  s.mean_link_count = churn_.mean_link_count();
  s.mean_degree = 2.0 * s.mean_link_count / static_cast<double>(n_);
  const auto& conn = recorder_.durations(IntervalKind::Connectivity);
  const auto& rep = recorder_.durations(IntervalKind::Repair);
  s.connectivity_median = conn.median();
  s.connectivity_mean = conn.mean();
  s.connectivity_count = conn.count();
  s.repair_median = rep.median();
  s.repair_mean = rep.mean();
  s.repair_count = rep.count();
  const double pair_seconds = static_cast<double>(pairs_.size()) * static_cast<double>(series.size()) * cfg_.snapshot_interval;
  s.path_failure_rate = pair_seconds > 0.0 ? static_cast<double>(recorder_.failures()) / pair_seconds : 0.0;
  s.tracked_pairs = pairs_.size();
  s.link_events = link_events_;
  s.lsus_originated = lsus_originated_;
  s.transmissions = transmissions_;
  s.events_fired = sched_.fired();

  result.connectivity = conn;
  result.repair = rep;
  result.reachability = series;
  if (measured >= 10.0) result.churn_rows = churn_.rows(cfg_.duration);
  result.control = control_;

  if (out_dir_) {
    if (link_trace_) link_trace_->close();
    if (mobility_trace_) mobility_trace_->close();
    std::vector<std::string> extra;
    if (link_trace_) extra.emplace_back("link_events.csv");
    if (mobility_trace_) extra.emplace_back("mobility.csv");
    if (cfg_.trace_intervals) {
      csv::Writer w(*out_dir_ / "intervals.csv", "pair_src,pair_dst,state,start_s,end_s,tainted");
      const auto& ledger = recorder_.ledger();
      for (const auto& iv : recorder_.intervals()) {
        const auto& p = pairs_.pairs()[iv.pair];
        w.row(p.src, p.dst, std::string(iv.kind == IntervalKind::Connectivity ? "connected" : "broken"),
              ledger.time_of(iv.start_tick), ledger.time_of(iv.end_tick), iv.tainted ? 1 : 0);
      }
      w.close();
      extra.emplace_back("intervals.csv");
    }
    if (cfg_.trace_nlo) {
      csv::Writer w(*out_dir_ / "nlo.csv", "t,node,kind,bytes");
      for (std::size_t sec = 0; sec < nlo_bins_.size(); ++sec) {
        for (int i = 0; i < n_; ++i) {
          for (std::size_t k = 0; k < 4; ++k) {
            const auto b = nlo_bins_[sec][static_cast<std::size_t>(i)][k];
            if (b) w.row(static_cast<double>(sec), i, std::string(kControlKindNames[k]), b);
          }
        }
      }
      w.close();
      extra.emplace_back("nlo.csv");
    }
    s.artifacts = write_run(result, *out_dir_);
    s.artifacts.insert(s.artifacts.end(), extra.begin(), extra.end());
    std::sort(s.artifacts.begin(), s.artifacts.end());
  }
  return result;
}

void Simulation::on_mobility() {
  const double t = now();
  const double dt = cfg_.mobility.tick;
  for (int i = 0; i < n_; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    motion_[ui] = advance(motion_[ui], dt, cfg_.mobility, area_, node_rng_[ui]);
    positions_[ui] = motion_[ui].position;
  }
  auto next = rebuild(positions_, cfg_.radio_range, area_.side);
  const auto d = diff(truth_, next);
  if (!d.added.empty() || !d.removed.empty()) {
    apply(truth_, d, t);
    component_ = components(truth_);
  }
  churn_.record(t, d.added.size(), d.removed.size(), truth_.link_count());
  if (mobility_trace_) {
    for (int i = 0; i < n_; ++i) {
      const auto& p = positions_[static_cast<std::size_t>(i)];
      mobility_trace_->row(t, i, p.x, p.y);
    }
  }
  ++mobility_index_;
  const double next_t = static_cast<double>(mobility_index_ + 1) * dt;
  if (next_t <= cfg_.duration + 1e-9) schedule(next_t, EventKind::MobilityUpdate);
}

void Simulation::link_event(const LinkEvent& ev) {
  ++link_events_;
  if (link_trace_) {
    link_trace_->row(ev.time, ev.at_node, ev.neighbor,
                     std::string(ev.kind == LinkEventKind::Discovered ? "discovered" : "lost"));
  }
  if (cfg_.protocol != Protocol::LSR) return;
  auto& router = lsr_[static_cast<std::size_t>(ev.at_node)];
  LsuPtr lsu = router.on_link_event(ev);
  ++lsus_originated_;
  dirty_[static_cast<std::size_t>(ev.at_node)] = 1;
  broadcast(ev.at_node, ControlKind::Lsu, lsu->neighbors.size(), lsu, nullptr, nullptr);
}

void Simulation::on_beacon(int node) {
  const double t = now();
  const auto ui = static_cast<std::size_t>(node);
  for (const auto& ev : lsr_[ui].neighbors().scan_timeouts(t, cfg_.beacon_period, cfg_.miss_threshold)) {
    link_event(ev);
  }
  broadcast(node, ControlKind::Beacon, 0, nullptr, nullptr, nullptr);
  ++beacon_index_[ui];
  const double next_t = beacon_phase_[ui] + static_cast<double>(beacon_index_[ui]) * cfg_.beacon_period;
  if (next_t <= cfg_.duration) schedule(next_t, EventKind::BeaconEmit, node);
}

void Simulation::on_hello(int node) {
  const double t = now();
  const auto ui = static_cast<std::size_t>(node);
  auto& mpr = olsr_[ui].mpr();
  const auto lost = mpr.scan(t, cfg_.olsr.hello_interval, cfg_.miss_threshold);
  if (!lost.empty()) dirty_[ui] = 1;
  for (const auto& ev : lost) link_event(ev);
  auto hello = std::make_shared<const HelloMessage>(mpr.make_hello());
  broadcast(node, ControlKind::Hello, hello->neighbors.size(), nullptr, hello, nullptr);
  ++beacon_index_[ui];
  const double next_t = beacon_phase_[ui] + static_cast<double>(beacon_index_[ui]) * cfg_.olsr.hello_interval;
  if (next_t <= cfg_.duration) schedule(next_t, EventKind::BeaconEmit, node);
}

void Simulation::on_tc(int node) {
  const auto ui = static_cast<std::size_t>(node);
  if (TcPtr tc = olsr_[ui].make_tc()) broadcast(node, ControlKind::Tc, tc->selectors.size(), nullptr, nullptr, tc);
  ++tc_index_[ui];
  const double next_t = tc_phase_[ui] + static_cast<double>(tc_index_[ui]) * cfg_.olsr.tc_interval;
  if (next_t <= cfg_.duration) schedule(next_t, EventKind::TcEmit, node);
}

void Simulation::broadcast(int sender, ControlKind kind, std::size_t ids, LsuPtr lsu, HelloPtr hello, TcPtr tc) {
  const auto bytes = message_bytes(ids);
  control_.add(sender, kind, bytes);
  if (!nlo_bins_.empty()) {
    const auto sec = std::min(static_cast<std::size_t>(now()), nlo_bins_.size() - 1);
    nlo_bins_[sec][static_cast<std::size_t>(sender)][static_cast<std::size_t>(kind)] += bytes;
  }
  ++transmissions_;

  Transmission tx;
  tx.sender = sender;
  tx.kind = kind;
  for (const int r : truth_.neighbors(sender)) {
    if (cfg_.loss_probability > 0.0 && channel_rng_.bernoulli(cfg_.loss_probability)) continue;
    tx.receivers.push_back(r);
  }
  if (tx.receivers.empty()) return;
  tx.lsu = std::move(lsu);
  tx.hello = std::move(hello);
  tx.tc = std::move(tc);

  const double delay = channel_rng_.uniform(cfg_.per_hop_delay_min, cfg_.per_hop_delay_max);
  std::uint32_t slot;
  if (free_slots_.empty()) {
    slot = static_cast<std::uint32_t>(pool_.size());
    pool_.push_back(std::move(tx));
  } else {
    slot = free_slots_.back();
    free_slots_.pop_back();
    pool_[slot] = std::move(tx);
  }
  const double at = now() + delay;
  if (at <= cfg_.duration) {
    schedule(at, EventKind::MessageDeliver, sender, slot);
  } else {
    pool_[slot] = Transmission{};
    free_slots_.push_back(slot);
  }
}

void Simulation::on_deliver(std::uint32_t slot) {
  Transmission tx = std::move(pool_[slot]);
  pool_[slot] = Transmission{};
  free_slots_.push_back(slot);
  for (const int r : tx.receivers) deliver_to(r, tx);
}

void Simulation::deliver_to(int r, const Transmission& tx) {
  const double t = now();
  const auto ur = static_cast<std::size_t>(r);
  switch (tx.kind) {
    case ControlKind::Beacon: {
      if (auto ev = lsr_[ur].neighbors().on_beacon(tx.sender, t)) link_event(*ev);
      break;
    }
    case ControlKind::Lsu: {
      const auto verdict = lsr_[ur].database().process(tx.lsu, tx.sender);
      if (verdict.accepted) dirty_[ur] = 1;
      if (verdict.forward) broadcast(r, ControlKind::Lsu, tx.lsu->neighbors.size(), tx.lsu, nullptr, nullptr);
      break;
    }
    case ControlKind::Hello: {
      const auto effect = olsr_[ur].mpr().process_hello(*tx.hello, t);
      if (effect.discovered) {
        dirty_[ur] = 1;
        link_event(*effect.discovered);
      }
      break;
    }
    case ControlKind::Tc: {
      auto& router = olsr_[ur];
      const bool relay = router.mpr().is_selector(tx.sender);
      const double hold = 3.0 * cfg_.olsr.tc_interval;
      const auto verdict = router.topology().process_tc(tx.tc, tx.sender, relay, t, hold);
      if (verdict.accepted) dirty_[ur] = 1;
      if (verdict.forward) broadcast(r, ControlKind::Tc, tx.tc->selectors.size(), nullptr, nullptr, tx.tc);
      break;
    }
  }
}

void Simulation::refresh_routes() {
  std::vector<int> stale;
  for (int i = 0; i < n_; ++i) {
    if (dirty_[static_cast<std::size_t>(i)]) stale.push_back(i);
  }
  if (stale.empty()) return;
  const double t = now();
  if (cfg_.protocol == Protocol::LSR) {
    kernels::parallel::refresh_routes(stale, [&](int node, BfsScratch& scratch) {
      auto& table = tables_[static_cast<std::size_t>(node)];
      compute_routes(lsr_[static_cast<std::size_t>(node)].database(), table, scratch);
      table.computed_at = t;
    });
  } else {
    kernels::parallel::refresh_routes(stale, [&](int node, BfsScratch& scratch) {
      const auto& router = olsr_[static_cast<std::size_t>(node)];
      const auto one_hop = router.mpr().one_hop();
      auto& table = tables_[static_cast<std::size_t>(node)];
      compute_olsr_routes(node, one_hop, router.topology(), table, scratch);
      table.computed_at = t;
    });
  }
  for (const int i : stale) dirty_[static_cast<std::size_t>(i)] = 0;
}

void Simulation::on_snapshot() {
  const double t = now();
  if (cfg_.protocol == Protocol::OLSR) {
    for (int i = 0; i < n_; ++i) {
      if (olsr_[static_cast<std::size_t>(i)].topology().expire(t)) dirty_[static_cast<std::size_t>(i)] = 1;
    }
  }
  refresh_routes();
  kernels::parallel::classify_pairs(pairs_, tables_, truth_, component_, statuses_);
  recorder_.record(snapshot_index_, statuses_);
  ++snapshot_index_;
  const double next_t = cfg_.warmup + static_cast<double>(snapshot_index_) * cfg_.snapshot_interval;
  if (next_t <= cfg_.duration + 1e-9) schedule(next_t, EventKind::Snapshot);
}

void write_durations(const std::filesystem::path& path, const DurationCounts& d) {
  csv::Writer w(path, "duration_s,count");
  for (const auto& [ticks, c] : d.counts()) w.row(static_cast<double>(ticks) * d.step(), c);
  w.close();
}

void write_histogram(const std::filesystem::path& hist_path, const std::filesystem::path& cdf_path,
                     const DurationCounts& d) {
  const auto h = export_histogram(d, 0.5);
  csv::Writer w(hist_path, "bin_start_s,normalized_count");
  for (std::size_t i = 0; i < h.normalized.size(); ++i) w.row(static_cast<double>(i) * h.bin_width, h.normalized[i]);
  w.close();
  csv::Writer c(cdf_path, "duration_s,cumulative_fraction");
  for (const auto& [x, f] : h.cdf) c.row(x, f);
  c.close();
}

DurationCounts read_durations(const std::filesystem::path& path, double step) {
  const auto table = csv::read(path);
  const auto dc = table.column("duration_s");
  const auto cc = table.column("count");
  DurationCounts d(step);
  for (const auto& row : table.rows) {
    const double s = std::stod(row[dc]);
    d.add(std::llround(s / step), std::stoull(row[cc]));
  }
  return d;
}

}  // namespace

RunResult run(const SimConfig& config, const std::optional<std::filesystem::path>& out_dir) {
  config.validate();
  Simulation sim(config, out_dir);
  return sim.run();
}

std::vector<std::string> write_run(const RunResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto& s = result.summary;
  {
    std::ofstream cfg(dir / "run.cfg");
    if (!cfg) throw std::runtime_error("cannot open '" + (dir / "run.cfg").string() + "' for writing");
    cfg << to_text(s.config);
    cfg.close();
    if (cfg.fail()) throw std::runtime_error("write failed for '" + (dir / "run.cfg").string() + "'");
  }
  {
    csv::Writer w(dir / "summary.csv", "key,value");
    w.row("mean_reachability", s.mean_reachability);
    w.row("median_reachability", s.median_reachability);
    w.row("nlo_fraction", s.nlo_fraction);
    w.row("nlo_normalization", "bits_per_second_over_capacity_times_n");
    w.row("churn_convention", "each_undirected_change_counted_at_both_endpoints");
    w.row("adds_per_sec", s.churn.adds_per_sec);
    w.row("removals_per_sec", s.churn.removals_per_sec);
    w.row("changes_per_node_per_sec", s.churn.changes_per_node_per_sec);
    w.row("theta", s.theta);
    w.row("mean_link_count", s.mean_link_count);
    w.row("mean_degree", s.mean_degree);
    w.row("connectivity_median_s", s.connectivity_median);
    w.row("connectivity_mean_s", s.connectivity_mean);
    w.row("connectivity_count", s.connectivity_count);
    w.row("repair_median_s", s.repair_median);
    w.row("repair_mean_s", s.repair_mean);
    w.row("repair_count", s.repair_count);
    w.row("path_failure_rate", s.path_failure_rate);
    w.row("tracked_pairs", s.tracked_pairs);
    w.row("link_events", s.link_events);
    w.row("lsus_originated", s.lsus_originated);
    w.row("transmissions", s.transmissions);
    w.row("events_fired", s.events_fired);
    w.close();
  }
  write_durations(dir / "durations_connectivity.csv", result.connectivity);
  write_durations(dir / "durations_repair.csv", result.repair);
  write_histogram(dir / "hist_connectivity.csv", dir / "cdf_connectivity.csv", result.connectivity);
  write_histogram(dir / "hist_repair.csv", dir / "cdf_repair.csv", result.repair);
  {
    csv::Writer w(dir / "reachability.csv", "t,reachable_fraction");
    for (const auto& [t, f] : result.reachability) w.row(t, f);
    w.close();
  }
  {
    csv::Writer w(dir / "churn.csv", "window_start,adds_per_sec,removals_per_sec,changes_per_node_per_sec");
    for (const auto& row : result.churn_rows) {
      w.row(row.window_start, row.stats.adds_per_sec, row.stats.removals_per_sec, row.stats.changes_per_node_per_sec);
    }
    w.close();
  }
  return {"run.cfg",
          "summary.csv",
          "durations_connectivity.csv",
          "durations_repair.csv",
          "hist_connectivity.csv",
          "cdf_connectivity.csv",
          "hist_repair.csv",
          "cdf_repair.csv",
          "reachability.csv",
          "churn.csv"};
}

RunResult load_run(const std::filesystem::path& dir) {
  RunResult r;
  auto& s = r.summary;
  s.config = load_config((dir / "run.cfg").string());
  const auto table = csv::read(dir / "summary.csv");
  auto get = [&](std::string_view key) {
    for (const auto& row : table.rows) {
      if (row[0] == key) return row[1] == "nan" ? std::numeric_limits<double>::quiet_NaN() : std::stod(row[1]);
    }
    throw std::runtime_error("summary.csv in '" + dir.string() + "' lacks '" + std::string(key) + "'");
  };
  s.mean_reachability = get("mean_reachability");
  s.median_reachability = get("median_reachability");
  s.nlo_fraction = get("nlo_fraction");
  s.churn.adds_per_sec = get("adds_per_sec");
  s.churn.removals_per_sec = get("removals_per_sec");
  s.churn.changes_per_node_per_sec = get("changes_per_node_per_sec");
  s.theta = get("theta");
  s.mean_link_count = get("mean_link_count");
  s.mean_degree = get("mean_degree");
  s.connectivity_median = get("connectivity_median_s");
  s.connectivity_mean = get("connectivity_mean_s");
  s.connectivity_count = static_cast<std::uint64_t>(get("connectivity_count"));
  s.repair_median = get("repair_median_s");
  s.repair_mean = get("repair_mean_s");
  s.repair_count = static_cast<std::uint64_t>(get("repair_count"));
  s.path_failure_rate = get("path_failure_rate");
  s.tracked_pairs = static_cast<std::uint64_t>(get("tracked_pairs"));
  s.link_events = static_cast<std::uint64_t>(get("link_events"));
  s.lsus_originated = static_cast<std::uint64_t>(get("lsus_originated"));
  s.transmissions = static_cast<std::uint64_t>(get("transmissions"));
  s.events_fired = static_cast<std::uint64_t>(get("events_fired"));
  const double step = s.config.snapshot_interval;
  r.connectivity = read_durations(dir / "durations_connectivity.csv", step);
  r.repair = read_durations(dir / "durations_repair.csv", step);
  return r;
}

}  // namespace scalewall
