#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "scalewall/engine.hpp"
#include "scalewall/sweep.hpp"

using namespace scalewall;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("scalewall_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

SimConfig small(int n, double duration) {
  SimConfig c;
  c.node_count = n;
  c.duration = duration;
  c.warmup = 5.0;
  return c;
}

}  // namespace

TEST_CASE("two nodes that never leave range stay reachable") {
  auto c = small(2, 20.0);
  c.area = 50.0;  // diagonal < radio range
  const auto r = run(c);
  CHECK(r.summary.mean_reachability == doctest::Approx(1.0));
  CHECK(r.summary.repair_count == 0);
  CHECK(r.summary.link_events == 2);
  CHECK(r.summary.lsus_originated == 2);
  CHECK(r.summary.tracked_pairs == 2);
  CHECK(r.summary.path_failure_rate == 0.0);
  CHECK(r.reachability.size() == 301);  // snapshots at 5.00, 5.05, ..., 20.00
}

TEST_CASE("beacon and Hello transmissions follow the period") {
  auto c = small(2, 20.0);
  c.area = 50.0;
  const auto lsr = run(c);
  // per node: beacons at phase + iB <= 20, plus one flooded LSU per discovery at each node
  const auto beacons = lsr.control.total(ControlKind::Beacon);
  CHECK(beacons >= 2 * 40 * static_cast<std::uint64_t>(c.control_header_bytes));
  CHECK(beacons <= 2 * 41 * static_cast<std::uint64_t>(c.control_header_bytes));

  c.protocol = Protocol::OLSR;
  const auto olsr = run(c);
  CHECK(olsr.control.total(ControlKind::Beacon) == 0);
  CHECK(olsr.control.total(ControlKind::Hello) > 0);
  CHECK(olsr.summary.mean_reachability == doctest::Approx(1.0));
}

TEST_CASE("identical seeds give byte-identical artifacts, different seeds do not") {
  auto c = small(30, 30.0);
  c.trace_intervals = c.trace_nlo = c.trace_link_events = true;
  const auto a = scratch("det_a");
  const auto b = scratch("det_b");
  const auto d = scratch("det_d");
  run(c, a);
  run(c, b);
  auto other = c;
  other.seed = 2;
  run(other, d);
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(a)) {
    ++files;
    const auto name = e.path().filename();
    REQUIRE(fs::exists(b / name));
    CHECK_MESSAGE(slurp(a / name) == slurp(b / name), name.string());
  }
  CHECK(files >= 10);
  CHECK(slurp(a / "durations_connectivity.csv") != slurp(d / "durations_connectivity.csv"));
}

TEST_CASE("run directory round trip through load_run") {
  const auto c = small(20, 20.0);
  const auto dir = scratch("roundtrip");
  const auto r = run(c, dir);
  const auto back = load_run(dir);
  CHECK(back.summary.config.node_count == 20);
  CHECK(back.summary.config.seed == c.seed);
  CHECK(back.connectivity.counts() == r.connectivity.counts());
  CHECK(back.repair.counts() == r.repair.counts());
  CHECK(back.summary.theta == doctest::Approx(r.summary.theta));
  CHECK(back.summary.path_failure_rate == doctest::Approx(r.summary.path_failure_rate));
}

TEST_CASE("OLSR does not beat LSR on matched seeds") {
  auto c = small(50, 40.0);
  const auto lsr = run(c);
  c.protocol = Protocol::OLSR;
  const auto olsr = run(c);
  CHECK(olsr.summary.mean_reachability <= lsr.summary.mean_reachability);
}

TEST_CASE("unwritable output directory is reported") {
  const auto blocker = scratch("blocker");
  std::ofstream(blocker) << "x";
  CHECK_THROWS(run(small(5, 6.0), blocker / "run"));
  fs::remove(blocker);
}

TEST_CASE("sweep planning: axes, seeds, labels") {
  const auto base = small(10, 10.0);
  CHECK(plan_sweep(base, {}, {}).size() == 1);
  const std::vector<SweepAxis> axes{parse_axis("n=50,100"), parse_axis("B=0.5,1.0")};
  const std::vector<std::uint64_t> seeds{1, 2, 3};
  const auto plan = plan_sweep(base, axes, seeds);
  CHECK(plan.size() == 12);
  CHECK(plan.front().label == "n-50_B-0.5_seed-1");
  CHECK(plan.back().config.node_count == 100);
  CHECK(plan.back().config.beacon_period == 1.0);
  CHECK(plan.back().config.seed == 3);
  CHECK_THROWS(parse_axis("n"));
  CHECK_THROWS(plan_sweep(base, std::vector<SweepAxis>{parse_axis("bogus=1")}, seeds));
  CHECK(parse_seeds("1, 2,7") == std::vector<std::uint64_t>{1, 2, 7});
}

TEST_CASE("sweep runs in parallel and names a failing run") {
  const auto base = small(10, 8.0);
  const std::vector<SweepAxis> axes{parse_axis("n=6,8")};
  const std::vector<std::uint64_t> seeds{1, 2};
  const auto plan = plan_sweep(base, axes, seeds);
  const auto root = scratch("sweep");
  const auto results = run_sweep(plan, root, 2);
  REQUIRE(results.size() == 4);
  CHECK(fs::exists(root / "sweep_index.csv"));
  for (std::size_t i = 0; i < plan.size(); ++i) {
    CHECK(results[i].summary.config.node_count == plan[i].config.node_count);
    CHECK(fs::exists(root / plan[i].label / "summary.csv"));
    const auto solo = run(plan[i].config);
    CHECK(solo.connectivity.counts() == results[i].connectivity.counts());
  }

  const auto bad_root = scratch("sweep_bad");
  fs::create_directories(bad_root);
  std::ofstream(bad_root / plan[2].label) << "in the way";
  try {
    run_sweep(plan, bad_root, 2);
    FAIL("expected failure");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find(plan[2].label) != std::string::npos);
  }
}
