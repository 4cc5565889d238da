#include "scalewall/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "scalewall/csv.hpp"
#include "scalewall/random.hpp"

namespace scalewall {

namespace {

SlopeFit least_squares(std::span<const double> x, std::span<const double> y) {
  const auto m = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / m;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / m;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0.0) throw std::invalid_argument("log-log fit needs at least two distinct n");
  SlopeFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.points = x.size();
  // a perfectly flat series is perfectly explained by a zero slope
  f.r_squared = syy <= 1e-24 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return f;
}

SlopeFit fit_points(std::span<const CurvePoint> points, CurveField field, std::size_t min_points) {
  if (points.size() < min_points) {
    throw std::invalid_argument("log-log fit needs at least " + std::to_string(min_points) + " points");
  }
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& p : points) {
    const double v = field == CurveField::Median ? p.median : p.mean;
    if (!(p.n > 0.0) || !(v > 0.0)) throw std::invalid_argument("log-log fit needs positive n and values");
    x.push_back(std::log(p.n));
    y.push_back(std::log(v));
  }
  return least_squares(x, y);
}

std::vector<CurvePoint> sorted(std::span<const CurvePoint> c) {
  std::vector<CurvePoint> out(c.begin(), c.end());
  std::sort(out.begin(), out.end(), [](const CurvePoint& a, const CurvePoint& b) { return a.n < b.n; });
  return out;
}

// ln(median) at n: exact, log-log interpolated inside the range, fitted power law outside.
double log_median_at(const std::vector<CurvePoint>& curve, double n) {
  for (const auto& p : curve) {
    if (p.n == n) return std::log(p.median);
  }
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    if (curve[i].n < n && n < curve[i + 1].n) {
      const double w = (std::log(n) - std::log(curve[i].n)) / (std::log(curve[i + 1].n) - std::log(curve[i].n));
      return (1.0 - w) * std::log(curve[i].median) + w * std::log(curve[i + 1].median);
    }
  }
  const auto fit = fit_points(curve, CurveField::Median, 2);
  return fit.intercept + fit.slope * std::log(n);
}

std::string fmt(double v) { return csv::num(v); }

}  // namespace

double SlopeFit::at(double n) const { return std::exp(intercept + slope * std::log(n)); }

SlopeFit fit_loglog(std::span<const CurvePoint> points, CurveField field) { return fit_points(points, field, 3); }

SlopeFit fit_loglog(std::span<const double> n, std::span<const double> values) {
  if (n.size() != values.size()) throw std::invalid_argument("fit_loglog: size mismatch");
  std::vector<CurvePoint> pts;
  for (std::size_t i = 0; i < n.size(); ++i) pts.push_back({n[i], values[i], values[i], 1});
  return fit_loglog(pts);
}

std::string_view to_string(WallMethod m) {
  return m == WallMethod::SegmentIntersection ? "segment_intersection" : "power_law_solve";
}

WallEstimate find_wall(std::span<const CurvePoint> conn_in, std::span<const CurvePoint> repair_in) {
  if (conn_in.size() < 2 || repair_in.size() < 2) throw std::invalid_argument("find_wall needs >= 2 points per curve");
  const auto conn = sorted(conn_in);
  const auto repair = sorted(repair_in);
  for (const auto* c : {&conn, &repair}) {
    for (const auto& p : *c) {
      if (!(p.n > 0.0) || !(p.median > 0.0)) throw std::invalid_argument("find_wall needs positive n and medians");
    }
  }

  std::vector<double> gap;
  for (const auto& p : conn) gap.push_back(std::log(p.median) - log_median_at(repair, p.n));

  WallEstimate w;
  for (std::size_t i = 0; i < conn.size(); ++i) {
    if (gap[i] > 0.0) continue;
    if (gap[i] == 0.0) {
      w.n_star = conn[i].n;
      return w;
    }
    if (i == 0) break;  // already below repair at the smallest size
    const double x0 = std::log(conn[i - 1].n);
    const double x1 = std::log(conn[i].n);
    w.n_star = std::exp(x0 + gap[i - 1] / (gap[i - 1] - gap[i]) * (x1 - x0));
    return w;
  }

  const auto fc = fit_points(conn, CurveField::Median, 2);
  const auto fr = fit_points(repair, CurveField::Median, 2);
  w.method = WallMethod::PowerLawSolve;
  w.extrapolated = true;
  w.n_star = fc.slope < fr.slope ? std::exp((fr.intercept - fc.intercept) / (fc.slope - fr.slope))
                                 : std::numeric_limits<double>::infinity();
  return w;
}

RepairBound required_repair_bound(std::span<const CurvePoint> conn_in, double n_target) {
  if (!(n_target > 0.0)) throw std::invalid_argument("required_repair_bound: n_target must be > 0");
  const auto conn = sorted(conn_in);
  if (conn.empty()) throw std::invalid_argument("required_repair_bound: empty curve");
  RepairBound b;
  const bool inside = n_target >= conn.front().n && n_target <= conn.back().n;
  if (!inside && conn.size() < 2) throw std::invalid_argument("required_repair_bound: one point cannot extrapolate");
  b.seconds = std::exp(log_median_at(conn, n_target));
  b.from_fit = !inside;
  b.extrapolated = n_target > 4.0 * conn.back().n;
  return b;
}

RepairBound required_repair_bound(const SlopeFit& fit, double n_target, double largest_sampled_n) {
  if (!(n_target > 0.0)) throw std::invalid_argument("required_repair_bound: n_target must be > 0");
  return {fit.at(n_target), n_target > 4.0 * largest_sampled_n, true};
}

double theory_connectivity(double n, const TheoryParams& p) {
  if (!(n >= 2.0)) throw std::invalid_argument("theory_connectivity: n must be >= 2");
  return p.calib_c / (p.theta * std::sqrt(n));
}

TheoryParams calibrate(double n, double median, double theta) {
  if (!(theta > 0.0) || !(median > 0.0) || !(n >= 2.0)) throw std::invalid_argument("calibrate: bad inputs");
  return {theta, median * theta * std::sqrt(n)};
}

PathLengthResult mean_hop_distance(const kernels::Adjacency& adjacency) {
  const auto hs = kernels::parallel::all_pairs_hops(adjacency);
  PathLengthResult r;
  r.total_hops = hs.hop_sum;
  r.connected_pairs = hs.connected_pairs;
  r.partitioned = hs.partitioned;
  r.attempts = 1;
  r.mean_hops = hs.connected_pairs ? static_cast<double>(hs.hop_sum) / static_cast<double>(hs.connected_pairs) : 0.0;
  return r;
}

PathLengthResult theory_path_length(int n, double rho, double radio_range, std::uint64_t seed, int max_attempts) {
  if (n < 2 || !(rho > 0.0) || !(radio_range > 0.0) || max_attempts < 1) {
    throw std::invalid_argument("theory_path_length: bad parameters");
  }
  const double side = std::sqrt(static_cast<double>(n) * M_PI * radio_range * radio_range / rho);
  Rng rng(seed);
  PathLengthResult r;
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    std::vector<Vec2> pos(static_cast<std::size_t>(n));
    for (auto& p : pos) p = {rng.uniform(0.0, side), rng.uniform(0.0, side)};
    r = mean_hop_distance(kernels::parallel::disk_graph(pos, radio_range, side));
    r.attempts = attempt;
    if (!r.partitioned) break;
  }
  return r;
}

std::string config_id(const SimConfig& c) {
  std::string id = std::string(to_string(c.protocol));
  if (c.protocol == Protocol::LSR) {
    id += "_B" + fmt(c.beacon_period);
  } else {
    id += "_hello" + fmt(c.olsr.hello_interval) + "_tc" + fmt(c.olsr.tc_interval);
  }
  id += "_k" + std::to_string(c.miss_threshold);
  id += "_" + std::string(to_string(c.mobility.model));
  id += "_v" + fmt(c.mobility.v_min) + "-" + fmt(c.mobility.v_max);
  id += "_rho" + fmt(c.target_density);
  return id;
}

std::vector<CurvePoint> ConfigGroup::curve(IntervalKind kind) const {
  std::vector<CurvePoint> out;
  for (const auto& [n, sp] : sizes) {
    const auto& d = kind == IntervalKind::Connectivity ? sp.connectivity : sp.repair;
    if (d.empty()) continue;
    out.push_back({static_cast<double>(n), d.median(), d.mean(), d.count()});
  }
  return out;
}

std::vector<CurvePoint> ConfigGroup::failure_curve() const {
  std::vector<CurvePoint> out;
  for (const auto& [n, sp] : sizes) {
    out.push_back({static_cast<double>(n), sp.failure_rate, sp.failure_rate, static_cast<std::uint64_t>(sp.seeds)});
  }
  return out;
}

std::vector<ConfigGroup> aggregate(std::span<const RunResult> runs) {
  std::map<std::string, ConfigGroup> groups;
  for (const auto& r : runs) {
    const auto& c = r.summary.config;
    const auto id = config_id(c);
    auto [it, fresh] = groups.try_emplace(id);
    auto& g = it->second;
    if (fresh) {
      g.id = id;
      g.config = c;
    }
    auto [sit, new_size] = g.sizes.try_emplace(c.node_count);
    auto& sp = sit->second;
    if (new_size) {
      sp.n = c.node_count;
      sp.connectivity = DurationCounts(c.snapshot_interval);
      sp.repair = DurationCounts(c.snapshot_interval);
    }
    sp.connectivity.merge(r.connectivity);
    sp.repair.merge(r.repair);
    const double k = static_cast<double>(sp.seeds);
    auto running_mean = [&](double& acc, double v) { acc = (acc * k + v) / (k + 1.0); };
    running_mean(sp.failure_rate, r.summary.path_failure_rate);
    running_mean(sp.reachability, r.summary.mean_reachability);
    running_mean(sp.changes_per_node_per_sec, r.summary.churn.changes_per_node_per_sec);
    running_mean(sp.theta, r.summary.theta);
    running_mean(sp.nlo_fraction, r.summary.nlo_fraction);
    ++sp.seeds;
  }
  std::vector<ConfigGroup> out;
  for (auto& [id, g] : groups) out.push_back(std::move(g));
  return out;
}

AnalysisReport analyze(std::span<const RunResult> runs) {
  AnalysisReport rep;
  rep.groups = aggregate(runs);
  for (const auto& g : rep.groups) {
    const auto conn = g.curve(IntervalKind::Connectivity);
    const auto repair = g.curve(IntervalKind::Repair);
    const auto failure = g.failure_curve();
    auto try_fit = [&](const std::vector<CurvePoint>& pts, CurveField f, const char* kind) {
      try {
        rep.fits.push_back({g.id, kind, fit_loglog(pts, f)});
      } catch (const std::invalid_argument&) {
        // fewer than three sizes or a zero value: no fit row
      }
    };
    try_fit(conn, CurveField::Median, "connectivity_median");
    try_fit(conn, CurveField::Mean, "connectivity_mean");
    try_fit(repair, CurveField::Median, "repair_median");
    try_fit(failure, CurveField::Median, "failure_rate");

    AnalysisReport::WallRow wall{g.id, g.config.failure_estimation_time(), std::nullopt};
    if (conn.size() >= 2 && repair.size() >= 2) {
      wall.wall = find_wall(conn, repair);
      wall.wall->conn_id = g.id + "/connectivity";
      wall.wall->repair_id = g.id + "/repair";
    }
    rep.walls.push_back(wall);

    if (!conn.empty()) {
      int cal_n = g.sizes.count(100) && !g.sizes.at(100).connectivity.empty() ? 100 : static_cast<int>(conn.front().n);
      const auto& cal = g.sizes.at(cal_n);
      if (cal.theta > 0.0) {
        const auto params = calibrate(cal_n, cal.connectivity.median(), cal.theta);
        for (const auto& p : conn) {
          const auto& sp = g.sizes.at(static_cast<int>(p.n));
          if (!(sp.theta > 0.0)) continue;
          TheoryParams at_n{sp.theta, params.calib_c};
          rep.theory.push_back({g.id, static_cast<int>(p.n), cal_n, at_n, theory_connectivity(p.n, at_n), p.median});
        }
      }
    }
  }
  return rep;
}

void write_report(const AnalysisReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    csv::Writer w(dir / "curves.csv", "config_id,n,kind,median_s,mean_s,sample_count");
    for (const auto& g : report.groups) {
      for (const auto kind : {IntervalKind::Connectivity, IntervalKind::Repair}) {
        for (const auto& p : g.curve(kind)) {
          w.row(g.id, static_cast<int>(p.n), std::string(to_string(kind)), p.median, p.mean, p.sample_count);
        }
      }
    }
    w.close();
  }
  {
    csv::Writer w(dir / "rates.csv",
                  "config_id,n,seeds,path_failure_rate,mean_reachability,changes_per_node_per_sec,theta,nlo_fraction");
    for (const auto& g : report.groups) {
      for (const auto& [n, sp] : g.sizes) {
        w.row(g.id, n, sp.seeds, sp.failure_rate, sp.reachability, sp.changes_per_node_per_sec, sp.theta,
              sp.nlo_fraction);
      }
    }
    w.close();
  }
  {
    csv::Writer w(dir / "fits.csv", "config_id,kind,slope,intercept,r2,points,conclusive");
    for (const auto& f : report.fits) {
      w.row(f.id, f.kind, f.fit.slope, f.fit.intercept, f.fit.r_squared, f.fit.points, f.fit.conclusive() ? 1 : 0);
    }
    w.close();
  }
  {
    csv::Writer w(dir / "wall.csv", "config_id,estimation_time_s,n_star,method,extrapolated");
    for (const auto& row : report.walls) {
      if (row.wall) {
        w.row(row.id, row.estimation_time, row.wall->n_star, std::string(to_string(row.wall->method)),
              row.wall->extrapolated ? 1 : 0);
      } else {
        w.row(row.id, row.estimation_time, "nan", "insufficient_data", 0);
      }
    }
    w.close();
  }
  {
    csv::Writer w(dir / "theory.csv", "config_id,n,calibration_n,theta,calib_c,predicted_s,simulated_s,relative_error");
    for (const auto& t : report.theory) {
      w.row(t.id, t.n, t.calibration_n, t.params.theta, t.params.calib_c, t.predicted, t.simulated,
            (t.predicted - t.simulated) / t.simulated);
    }
    w.close();
  }
}

std::vector<RunResult> load_runs(const std::filesystem::path& root) {
  std::vector<std::filesystem::path> dirs;
  auto consider = [&](const std::filesystem::path& d) {
    if (std::filesystem::exists(d / "run.cfg") && std::filesystem::exists(d / "summary.csv")) dirs.push_back(d);
  };
  if (!std::filesystem::is_directory(root)) throw std::runtime_error("not a directory: '" + root.string() + "'");
  consider(root);
  for (const auto& e : std::filesystem::recursive_directory_iterator(root)) {
    if (e.is_directory()) consider(e.path());
  }
  std::sort(dirs.begin(), dirs.end());
  std::vector<RunResult> runs;
  for (const auto& d : dirs) runs.push_back(load_run(d));
  return runs;
}

}  // namespace scalewall
