#include <doctest.h>

#include <algorithm>
#include <map>

#include "scalewall/link_estimation.hpp"
#include "scalewall/random.hpp"

using namespace scalewall;

TEST_CASE("on_beacon: first contact and refresh") {
  NeighborTable t(0);
  const auto ev = t.on_beacon(7, 1.0);
  REQUIRE(ev);
  CHECK(ev->kind == LinkEventKind::Discovered);
  CHECK(ev->neighbor == 7);
  CHECK(ev->at_node == 0);
  CHECK(*t.last_heard(7) == 1.0);
  CHECK_FALSE(t.on_beacon(7, 1.5));
  CHECK(*t.last_heard(7) == 1.5);
}

TEST_CASE("scan_timeouts: k*B boundary is inclusive") {
  NeighborTable t(0);
  t.on_beacon(3, 0.0);
  CHECK(t.scan_timeouts(1.5, 0.5, 3).empty());
  CHECK(t.alive(3));
  const auto lost = t.scan_timeouts(1.6, 0.5, 3);
  REQUIRE(lost.size() == 1);
  CHECK(lost[0].kind == LinkEventKind::Lost);
  CHECK(lost[0].time == 1.6);
  CHECK_FALSE(t.alive(3));
}

TEST_CASE("silent neighbour is lost at scan, then rediscovered") {
  NeighborTable t(0);
  t.on_beacon(5, 0.0);
  CHECK(t.scan_timeouts(1.6, 0.5, 3).size() == 1);
  const auto ev = t.on_beacon(5, 1.7);
  REQUIRE(ev);
  CHECK(ev->kind == LinkEventKind::Discovered);
}

TEST_CASE("scan drops every stale neighbour at once, ascending") {
  NeighborTable t(9);
  t.on_beacon(4, 0.0);
  t.on_beacon(1, 0.0);
  t.on_beacon(2, 1.0);
  const auto lost = t.scan_timeouts(1.6, 0.5, 3);
  REQUIRE(lost.size() == 2);
  CHECK(lost[0].neighbor == 1);
  CHECK(lost[1].neighbor == 4);
  CHECK(t.alive_set() == std::vector<int>{2});
}

TEST_CASE("discovered and lost alternate per neighbour under random traffic") {
  NeighborTable t(0);
  Rng rng(13);
  std::map<int, LinkEventKind> last;
  for (int step = 1; step < 5000; ++step) {
    const double now = 0.1 * step;
    for (int nb = 1; nb <= 5; ++nb) {
      if (rng.uniform() < 0.3) {
        if (auto ev = t.on_beacon(nb, now)) {
          if (last.count(nb)) CHECK(last[nb] == LinkEventKind::Lost);
          last[nb] = ev->kind;
        }
      }
    }
    if (step % 5 == 0) {
      for (const auto& ev : t.scan_timeouts(now, 0.5, 3)) {
        CHECK(last.at(ev.neighbor) == LinkEventKind::Discovered);
        last[ev.neighbor] = ev.kind;
      }
    }
  }
}

TEST_CASE("detection latency after a true break spans [(k-1)B, (k+1)B] with median kB") {
  // Neighbour beacons at phase_b + iB; observer scans at phase_s + jB. A break at time
  // t_break silences the neighbour. Latency from the break to the Lost event:
  const double B = 0.5;
  Rng rng(1);
  std::vector<double> latency;
  for (int trial = 0; trial < 20000; ++trial) {
    const double phase_b = rng.uniform(0.0, B);
    const double phase_s = rng.uniform(0.0, B);
    const double t_break = 20.0 + rng.uniform(0.0, B);
    NeighborTable t(0);
    double lost_at = -1.0;
    for (int i = 0; i < 200 && lost_at < 0.0; ++i) {
      const double tb = phase_b + i * B;
      const double ts = phase_s + i * B;
      // process in time order within this period
      auto beacon = [&] {
        if (tb < t_break) t.on_beacon(1, tb);
      };
      auto scan = [&] {
        if (!t.scan_timeouts(ts, B, 3).empty()) lost_at = ts;
      };
      if (tb <= ts) {
        beacon();
        scan();
      } else {
        scan();
        beacon();
      }
    }
    REQUIRE(lost_at > 0.0);
    latency.push_back(lost_at - t_break);
  }
  std::sort(latency.begin(), latency.end());
  CHECK(latency.front() >= 2.0 * B - 1e-9);  // the last beacon precedes the break by up to B
  CHECK(latency.back() <= 4.0 * B + 1e-9);
  // triangular on [2B, 4B]: the median sits at 3B
  const double median = latency[latency.size() / 2];
  CHECK(median == doctest::Approx(3.0 * B).epsilon(0.03));
}
