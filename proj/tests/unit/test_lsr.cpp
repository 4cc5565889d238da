#include <doctest.h>

#include <deque>

#include "oracles.hpp"
#include "scalewall/lsr.hpp"

using namespace scalewall;

namespace {

LsuPtr lsu(int origin, std::uint64_t seq, std::vector<int> nb) {
  return std::make_shared<LinkStateUpdate>(LinkStateUpdate{origin, seq, std::move(nb), 0.0});
}

LinkStateDatabase db_from(const oracle::Adjacency& adj, int owner) {
  LinkStateDatabase db(owner, static_cast<int>(adj.size()));
  for (int u = 0; u < static_cast<int>(adj.size()); ++u) db.process(lsu(u, 1, adj[u]), u);
  return db;
}

}  // namespace

TEST_CASE("on_link_event: one LSU per event with the current alive set") {
  LsrRouter r(3, 10);
  r.set_last_seq(4);
  const auto d = r.neighbors().on_beacon(7, 1.0);
  REQUIRE(d);
  const auto a = r.on_link_event(*d);
  CHECK(a->origin == 3);
  CHECK(a->seq == 5);
  CHECK(a->neighbors == std::vector<int>{7});
  CHECK(r.database().seq_of(3) == 5);
  const auto lost = r.neighbors().scan_timeouts(5.0, 0.5, 3);
  REQUIRE(lost.size() == 1);
  const auto b = r.on_link_event(lost[0]);
  CHECK(b->seq == 6);
  CHECK(b->neighbors.empty());
  CHECK_THROWS(r.on_link_event(LinkEvent{4, 1, LinkEventKind::Discovered, 0.0}));
}

TEST_CASE("process: newer accepted and forwarded, duplicates dropped") {
  LinkStateDatabase db(0, 5);
  CHECK(db.process(lsu(2, 5, {1}), 1) == FloodVerdict{true, true});
  CHECK(db.process(lsu(2, 6, {1, 3}), 1) == FloodVerdict{true, true});
  db.mark_clean();
  CHECK(db.process(lsu(2, 6, {}), 3) == FloodVerdict{false, false});
  CHECK(db.process(lsu(2, 4, {}), 3) == FloodVerdict{false, false});
  CHECK_FALSE(db.dirty());
  CHECK(db.neighbors_of(2).size() == 2);
}

TEST_CASE("compute_routes: line, tie-break, unreachable") {
  const oracle::Adjacency line{{1}, {0, 2}, {1}};
  const auto t = compute_routes(db_from(line, 0));
  CHECK(t.next(2) == 1);
  CHECK(t.hop_count(2) == 2);

  // 0 -> {4, 1} -> 3: equal-length routes through 1 and 4
  const oracle::Adjacency diamond{{1, 4}, {0, 3}, {}, {1, 4}, {0, 3}};
  const auto d = compute_routes(db_from(diamond, 0));
  CHECK(d.next(3) == 1);
  CHECK(d.hop_count(3) == 2);
  CHECK_FALSE(d.contains(2));
  CHECK_FALSE(d.contains(0));
}

TEST_CASE("compute_routes agrees with Dijkstra on 100 random belief graphs") {
  Rng rng(2024);
  for (int g = 0; g < 100; ++g) {
    const int n = 10 + static_cast<int>(rng.below(40));
    const double p = rng.uniform(0.02, 0.25);
    const auto adj = oracle::random_digraph(n, p, rng);
    const int owner = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    const auto table = compute_routes(db_from(adj, owner));
    const auto dist = oracle::dijkstra(adj, owner);
    for (int d = 0; d < n; ++d) {
      if (d == owner) continue;
      if (dist[d] < 0) {
        REQUIRE_FALSE(table.contains(d));
        continue;
      }
      REQUIRE(table.hop_count(d) == dist[d]);
      const int nh = table.next(d);
      // the next hop is an out-neighbour one step closer to d, and the smallest such one
      REQUIRE(std::find(adj[owner].begin(), adj[owner].end(), nh) != adj[owner].end());
      const auto from_nh = oracle::dijkstra(adj, nh);
      REQUIRE(from_nh[d] == dist[d] - 1);
      for (int alt : adj[owner]) {
        if (alt < nh && alt != owner) {
          const auto from_alt = oracle::dijkstra(adj, alt);
          REQUIRE_FALSE((alt == d ? 0 : from_alt[d]) == dist[d] - 1);
        }
      }
    }
  }
}

TEST_CASE("LSU flood reaches every node of a static connected graph, once per node") {
  Rng rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 40;
    const auto adj = oracle::random_connected_disk_graph(n, 400.0, 100.0, rng);
    std::vector<LinkStateDatabase> dbs;
    for (int i = 0; i < n; ++i) dbs.emplace_back(i, n);
    const int origin = static_cast<int>(rng.below(n));
    const auto msg = lsu(origin, 1, adj[origin]);
    dbs[origin].process(msg, origin);
    std::deque<std::pair<int, int>> in_flight;  // (receiver, sender)
    int transmissions = 1;
    for (int v : adj[origin]) in_flight.push_back({v, origin});
    while (!in_flight.empty()) {
      const auto [r, s] = in_flight.front();
      in_flight.pop_front();
      if (dbs[r].process(msg, s).forward) {
        ++transmissions;
        for (int v : adj[r]) in_flight.push_back({v, r});
      }
    }
    for (int i = 0; i < n; ++i) CHECK(dbs[i].seq_of(origin) == 1);
    CHECK(transmissions == n);
  }
}

TEST_CASE("nlo_fraction: zero, definition and linearity") {
  ControlTrafficCounter c(100);
  CHECK(nlo_fraction(c, 180.0, 2e6) == 0.0);
  CHECK_THROWS(nlo_fraction(c, 0.0, 2e6));
  for (int i = 0; i < 100; ++i) c.add(i, ControlKind::Hello, 1000);
  const double f = nlo_fraction(c, 10.0, 2e6);
  CHECK(f == doctest::Approx(8.0 * 100000.0 / 10.0 / (2e6 * 100)));
  c.scale(2);
  CHECK(nlo_fraction(c, 10.0, 2e6) == doctest::Approx(2.0 * f));
  CHECK(c.total(ControlKind::Hello) == 200000);
  CHECK(c.total(ControlKind::Tc) == 0);
}
