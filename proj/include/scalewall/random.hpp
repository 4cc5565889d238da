#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace scalewall {

/// Seeded random stream. Sub-streams are forked by id so that adding a node
/// never reshuffles the draws of unrelated nodes.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

  Rng fork(std::uint64_t stream_id) const { return Rng(mix(seed_ ^ mix(stream_id + 0x9e3779b97f4a7c15ULL))); }

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  double uniform(double lo, double hi) { return lo == hi ? lo : std::uniform_real_distribution<double>(lo, hi)(engine_); }
  double normal(double mean, double sigma) {
    return sigma == 0.0 ? mean : std::normal_distribution<double>(mean, sigma)(engine_);
  }
  std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_); }
  bool bernoulli(double p) { return p > 0.0 && uniform() < p; }

  std::mt19937_64& engine() { return engine_; }

  // splitmix64 finaliser
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

inline std::vector<Rng> fork_streams(const Rng& base, int count, std::uint64_t offset = 0) {
  std::vector<Rng> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(base.fork(offset + static_cast<std::uint64_t>(i)));
  return out;
}

}  // namespace scalewall
