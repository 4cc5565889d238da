#include <doctest.h>

#include <cmath>
#include <deque>
#include <set>

#include "oracles.hpp"
#include "scalewall/lsr.hpp"
#include "scalewall/olsr.hpp"

using namespace scalewall;

namespace {

bool covers_all(int self, const std::vector<int>& one_hop, const TwoHopMap& two_hop, const std::vector<int>& mprs) {
  std::set<int> covered;
  for (int m : mprs) {
    if (std::find(one_hop.begin(), one_hop.end(), m) == one_hop.end()) return false;
    const auto it = two_hop.find(m);
    if (it != two_hop.end()) covered.insert(it->second.begin(), it->second.end());
  }
  for (int t : strict_two_hop(self, one_hop, two_hop)) {
    if (!covered.count(t)) return false;
  }
  return true;
}

// Two-hop view of `self` in a static graph.
TwoHopMap view_of(const oracle::Adjacency& adj, int self) {
  TwoHopMap m;
  for (int v : adj[self]) {
    std::vector<int> adv;
    for (int w : adj[v]) {
      if (w != self) adv.push_back(w);
    }
    m[v] = adv;
  }
  return m;
}

// Exchanges Hellos until the MPR/selector state settles on a static graph.
std::vector<OlsrRouter> converge(const oracle::Adjacency& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<OlsrRouter> routers;
  for (int i = 0; i < n; ++i) routers.emplace_back(i, n);
  for (int round = 0; round < 4; ++round) {
    std::vector<HelloMessage> hellos;
    for (int i = 0; i < n; ++i) hellos.push_back(routers[i].mpr().make_hello());
    for (int i = 0; i < n; ++i) {
      for (int v : adj[i]) routers[v].mpr().process_hello(hellos[i], 1.0 + round);
    }
  }
  return routers;
}

}  // namespace

TEST_CASE("select_mprs: empty, forced cover, tie-break") {
  TwoHopMap none{{1, {}}, {2, {}}};
  CHECK(select_mprs(0, std::vector<int>{1, 2}, none).empty());

  TwoHopMap forced{{1, {5, 6}}, {2, {}}};
  CHECK(select_mprs(0, std::vector<int>{1, 2}, forced) == std::vector<int>{1});

  // 3 and 4 cover {7} equally; smallest id wins
  TwoHopMap tie{{3, {7}}, {4, {7}}};
  CHECK(select_mprs(0, std::vector<int>{3, 4}, tie) == std::vector<int>{3});

  // one-hop neighbours and self are not two-hop targets
  TwoHopMap own{{1, {0, 2}}, {2, {1}}};
  CHECK(select_mprs(0, std::vector<int>{1, 2}, own).empty());
}

TEST_CASE("MPR cover invariant and ln-factor bound against exhaustive minimum cover") {
  Rng rng(99);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int one = 2 + static_cast<int>(rng.below(11));  // at most 12 candidates
    std::vector<int> one_hop;
    for (int i = 1; i <= one; ++i) one_hop.push_back(i);
    const int targets = 1 + static_cast<int>(rng.below(15));
    TwoHopMap two;
    std::vector<std::vector<int>> covers;
    for (int v : one_hop) {
      std::vector<int> adv;
      for (int t = 0; t < targets; ++t) {
        if (rng.uniform() < 0.25) adv.push_back(100 + t);
      }
      two[v] = adv;
      covers.push_back(adv);
    }
    const auto mprs = select_mprs(0, one_hop, two);
    REQUIRE(covers_all(0, one_hop, two, mprs));
    const auto strict = strict_two_hop(0, one_hop, two);
    const auto best = oracle::minimum_cover_size(one_hop, covers, strict);
    const double h = std::log(static_cast<double>(std::max<std::size_t>(strict.size(), 1))) + 1.0;
    REQUIRE(static_cast<double>(mprs.size()) <= h * static_cast<double>(best) + 1e-9);
    checked += strict.empty() ? 0 : 1;
  }
  CHECK(checked > 200);
}

TEST_CASE("process_hello: one-hop, two-hop and selector bookkeeping") {
  MprState s(0);
  const auto e = s.process_hello(HelloMessage{1, {0, 2}, {}}, 1.0);
  REQUIRE(e.discovered);
  CHECK(s.one_hop() == std::vector<int>{1});
  CHECK(s.two_hop().at(1) == std::vector<int>{2});
  CHECK(s.mprs() == std::vector<int>{1});
  CHECK_FALSE(s.is_selector(1));

  const auto f = s.process_hello(HelloMessage{1, {0, 2}, {0}}, 2.0);
  CHECK_FALSE(f.discovered);
  CHECK(f.selectors_changed);
  CHECK(s.is_selector(1));

  const auto lost = s.scan(2.0 + 3.0 * 2.0 + 0.1, 2.0, 3);
  REQUIRE(lost.size() == 1);
  CHECK(s.one_hop().empty());
  CHECK(s.two_hop().empty());
  CHECK(s.mprs().empty());
  CHECK(s.selectors().empty());
}

TEST_CASE("MPR cover holds after hello convergence on random graphs") {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto adj = oracle::random_connected_disk_graph(40, 450.0, 100.0, rng);
    const auto routers = converge(adj);
    for (int i = 0; i < 40; ++i) {
      const auto& m = routers[i].mpr();
      CHECK(m.one_hop() == adj[i]);
      CHECK(covers_all(i, m.one_hop(), m.two_hop(), m.mprs()));
      CHECK(m.two_hop().size() == view_of(adj, i).size());
    }
  }
}

TEST_CASE("process_tc: MPR forwarding rule and duplicates") {
  TopologyDb db(0, 5);
  auto tc = std::make_shared<TcMessage>(TcMessage{3, 1, {2}});
  CHECK(db.process_tc(tc, 3, false, 0.0, 15.0) == FloodVerdict{true, false});
  CHECK(db.process_tc(tc, 2, true, 0.1, 15.0) == FloodVerdict{false, false});
  auto newer = std::make_shared<TcMessage>(TcMessage{3, 2, {2, 4}});
  CHECK(db.process_tc(newer, 2, true, 0.2, 15.0) == FloodVerdict{true, true});
  auto own = std::make_shared<TcMessage>(TcMessage{0, 9, {1}});
  CHECK_FALSE(db.process_tc(own, 1, true, 0.3, 15.0).accepted);
  CHECK(db.expire(20.0));
  CHECK(db.selectors_of(3).empty());
  CHECK(db.seq_of(3) == 2);
  CHECK_FALSE(db.process_tc(newer, 2, true, 21.0, 15.0).accepted);
}

TEST_CASE("TC flood over MPRs reaches every node of a connected 50-node graph") {
  Rng rng(314);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 50;
    const auto adj = oracle::random_connected_disk_graph(n, 500.0, 100.0, rng);
    auto routers = converge(adj);
    for (int origin = 0; origin < n; ++origin) {
      auto tc = std::make_shared<TcMessage>(TcMessage{origin, 1, routers[origin].mpr().selectors()});
      std::vector<TopologyDb> dbs;
      for (int i = 0; i < n; ++i) dbs.emplace_back(i, n);
      std::deque<std::pair<int, int>> q;
      for (int v : adj[origin]) q.push_back({v, origin});
      std::vector<bool> got(n, false);
      got[origin] = true;
      while (!q.empty()) {
        const auto [r, s] = q.front();
        q.pop_front();
        const auto v = dbs[r].process_tc(tc, s, routers[r].mpr().is_selector(s), 1.0, 15.0);
        if (v.accepted) got[r] = true;
        if (v.forward) {
          for (int w : adj[r]) q.push_back({w, r});
        }
      }
      for (int i = 0; i < n; ++i) REQUIRE(got[i]);
    }
  }
}

TEST_CASE("compute_olsr_routes: one-hop only, TC-only destination, full advertisement") {
  TopologyDb empty(0, 4);
  const auto t = compute_olsr_routes(0, std::vector<int>{1, 2}, empty);
  CHECK(t.size() == 2);
  CHECK(t.next(1) == 1);
  CHECK(t.hop_count(2) == 1);

  TopologyDb db(0, 4);
  db.process_tc(std::make_shared<TcMessage>(TcMessage{3, 1, {2}}), 2, false, 0.0, 15.0);
  const auto u = compute_olsr_routes(0, std::vector<int>{1, 2}, db);
  CHECK(u.next(3) == 2);
  CHECK(u.hop_count(3) == 2);

  // every node advertises all of its neighbours: identical to LSR on the same graph
  Rng rng(8);
  const auto adj = oracle::random_connected_disk_graph(30, 350.0, 100.0, rng);
  for (int owner = 0; owner < 30; owner += 7) {
    TopologyDb full(owner, 30);
    LinkStateDatabase lsdb(owner, 30);
    for (int o = 0; o < 30; ++o) {
      full.process_tc(std::make_shared<TcMessage>(TcMessage{o, 1, adj[o]}), o, false, 0.0, 15.0);
      lsdb.process(std::make_shared<LinkStateUpdate>(LinkStateUpdate{o, 1, adj[o], 0.0}), o);
    }
    CHECK(compute_olsr_routes(owner, adj[owner], full) == compute_routes(lsdb));
    const auto dist = oracle::dijkstra(adj, owner);
    const auto table = compute_olsr_routes(owner, adj[owner], full);
    for (int d = 0; d < 30; ++d) {
      if (d != owner) CHECK(table.hop_count(d) == dist[d]);
    }
  }
}

TEST_CASE("make_tc only with selectors, sequence increases") {
  OlsrRouter r(0, 4);
  CHECK_FALSE(r.make_tc());
  r.mpr().process_hello(HelloMessage{1, {0}, {0}}, 1.0);
  const auto a = r.make_tc();
  const auto b = r.make_tc();
  REQUIRE(a);
  CHECK(a->selectors == std::vector<int>{1});
  CHECK(b->seq > a->seq);
}
