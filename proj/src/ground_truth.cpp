#include "scalewall/ground_truth.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "scalewall/kernels.hpp"

namespace scalewall {

GroundTruthGraph::GroundTruthGraph(int n)
    : n_(n),
      words_((static_cast<std::size_t>(n) + 63) / 64),
      adjacency_(static_cast<std::size_t>(n)),
      bits_(static_cast<std::size_t>(n) * words_, 0) {}

GroundTruthGraph GroundTruthGraph::from_adjacency(std::vector<std::vector<int>> adjacency) {
  GroundTruthGraph g(static_cast<int>(adjacency.size()));
  std::size_t degree_sum = 0;
  for (int u = 0; u < g.n_; ++u) {
    auto& row = adjacency[static_cast<std::size_t>(u)];
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    for (const int v : row) {
      if (v == u) throw std::invalid_argument("ground truth: self-link at node " + std::to_string(u));
      if (v < 0 || v >= g.n_) throw std::invalid_argument("ground truth: neighbor id out of range");
      g.set_bit(u, v, true);
    }
    degree_sum += row.size();
  }
  for (int u = 0; u < g.n_; ++u) {
    for (const int v : adjacency[static_cast<std::size_t>(u)]) {
      if (!g.linked(v, u)) throw std::invalid_argument("ground truth: asymmetric adjacency");
    }
  }
  g.adjacency_ = std::move(adjacency);
  g.link_count_ = degree_sum / 2;
  return g;
}

void GroundTruthGraph::set_bit(int u, int v, bool on) {
  auto& word = bits_[static_cast<std::size_t>(u) * words_ + (static_cast<unsigned>(v) >> 6)];
  const std::uint64_t mask = std::uint64_t{1} << (v & 63);
  word = on ? (word | mask) : (word & ~mask);
}

std::vector<Link> GroundTruthGraph::links() const {
  std::vector<Link> out;
  out.reserve(link_count_);
  for (int u = 0; u < n_; ++u) {
    for (const int v : adjacency_[static_cast<std::size_t>(u)]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

void GroundTruthGraph::add_link(int u, int v, double since) {
  if (u == v) throw std::invalid_argument("ground truth: self-link");
  if (linked(u, v)) return;
  for (const auto& [a, b] : {std::pair{u, v}, std::pair{v, u}}) {
    auto& row = adjacency_[static_cast<std::size_t>(a)];
    row.insert(std::lower_bound(row.begin(), row.end(), b), b);
    set_bit(a, b, true);
  }
  since_[key(u, v)] = since;
  ++link_count_;
}

void GroundTruthGraph::remove_link(int u, int v) {
  if (!linked(u, v)) return;
  for (const auto& [a, b] : {std::pair{u, v}, std::pair{v, u}}) {
    auto& row = adjacency_[static_cast<std::size_t>(a)];
    row.erase(std::lower_bound(row.begin(), row.end(), b));
    set_bit(a, b, false);
  }
  since_.erase(key(u, v));
  --link_count_;
}

double GroundTruthGraph::link_since(int u, int v) const {
  const auto it = since_.find(key(u, v));
  return it == since_.end() ? 0.0 : it->second;
}

GroundTruthGraph rebuild(std::span<const Vec2> positions, double radio_range, double side) {
  return GroundTruthGraph::from_adjacency(kernels::parallel::disk_graph(positions, radio_range, side));
}

LinkDiff diff(const GroundTruthGraph& prev, const GroundTruthGraph& next) {
  if (prev.size() != next.size()) throw std::invalid_argument("diff: graphs over different node sets");
  LinkDiff d;
  for (int u = 0; u < prev.size(); ++u) {
    const auto a = prev.neighbors(u);
    const auto b = next.neighbors(u);
    // merge of two sorted rows, keeping u < v
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i] < b[j])) {
        if (u < a[i]) d.removed.emplace_back(u, a[i]);
        ++i;
      } else if (i == a.size() || b[j] < a[i]) {
        if (u < b[j]) d.added.emplace_back(u, b[j]);
        ++j;
      } else {
        ++i;
        ++j;
      }
    }
  }
  return d;
}

void apply(GroundTruthGraph& g, const LinkDiff& d, double t) {
  for (const auto& [u, v] : d.removed) g.remove_link(u, v);
  for (const auto& [u, v] : d.added) g.add_link(u, v, t);
}

std::vector<int> components(const std::vector<std::vector<int>>& adjacency) {
  const int n = static_cast<int>(adjacency.size());
  std::vector<int> label(static_cast<std::size_t>(n), -1);
  std::vector<int> stack;
  for (int root = 0; root < n; ++root) {
    if (label[static_cast<std::size_t>(root)] >= 0) continue;
    label[static_cast<std::size_t>(root)] = root;
    stack.push_back(root);
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (const int v : adjacency[static_cast<std::size_t>(u)]) {
        if (label[static_cast<std::size_t>(v)] < 0) {
          label[static_cast<std::size_t>(v)] = root;
          stack.push_back(v);
        }
      }
    }
  }
  return label;
}

std::vector<int> components(const GroundTruthGraph& g) { return components(g.adjacency()); }

LinkChurnStats churn(std::span<const DiffRecord> diffs, int n, double window) {
  if (window < 10.0) throw std::invalid_argument("churn: window must be >= 10 s");
  if (n <= 0) throw std::invalid_argument("churn: node count must be positive");
  double adds = 0.0;
  double removals = 0.0;
  for (const auto& r : diffs) {
    adds += static_cast<double>(r.adds);
    removals += static_cast<double>(r.removals);
  }
  LinkChurnStats s;
  s.window = window;
  s.adds_per_sec = adds / window;
  s.removals_per_sec = removals / window;
  s.changes_per_node_per_sec = (adds + removals) * 2.0 / (n * window);
  return s;
}

void ChurnMeter::record(double t, std::size_t adds, std::size_t removals, std::size_t link_count) {
  if (t <= start_ + 1e-9) return;  // windows are (start, start + w]
  records_.push_back({t, adds, removals});
  link_sum_ += static_cast<double>(link_count);
  ++samples_;
}

std::vector<ChurnMeter::Row> ChurnMeter::rows(double end) const {
  std::vector<Row> out;
  std::size_t i = 0;
  for (int w = 0;; ++w) {
    const double lo = start_ + w * window_;
    const double hi = lo + window_;
    if (hi > end + 1e-9) break;
    const std::size_t begin = i;
    while (i < records_.size() && records_[i].t <= hi + 1e-9) ++i;
    out.push_back({lo, churn(std::span(records_).subspan(begin, i - begin), n_, window_)});
  }
  return out;
}

LinkChurnStats ChurnMeter::overall(double end) const {
  const double span = std::max(end - start_, 10.0);
  return churn(records_, n_, span);
}

double ChurnMeter::theta(double end) const {
  const double links = mean_link_count();
  return links > 0.0 ? overall(end).removals_per_sec / links : 0.0;
}

}  // namespace scalewall
