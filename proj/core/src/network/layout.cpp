#include "snawb/network/layout.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace snawb::net {

namespace {

// splitmix64: tiny, portable and fully specified, unlike the standard
// distributions whose output differs between library implementations.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

struct WeightedPair {
  std::size_t a;
  std::size_t b;
  double weight;
};

constexpr double kMargin = 0.05;
constexpr double kGravity = 2.0;
constexpr double kInitialTemperature = 0.1;

}  // namespace

Layout compute_layout(const RawRosterGraph& raw, std::uint64_t seed) {
  Layout layout;
  layout.population = raw.population();
  layout.seed = seed;
  const std::size_t n = layout.population.size();
  if (n == 0) return layout;
  if (n == 1) {
    layout.coordinates[layout.population[0]] = Point{0.5, 0.5};
    return layout;
  }

  // Undirected pair strength = sum of both directed weights.
  std::map<std::pair<std::size_t, std::size_t>, double> strength;
  for (const auto& [key, weight] : raw.arcs()) {
    std::size_t i = raw.index_of(key.first);
    std::size_t j = raw.index_of(key.second);
    if (i > j) std::swap(i, j);
    strength[{i, j}] += weight;
  }
  double max_strength = 0.0;
  for (const auto& [key, s] : strength) max_strength = std::max(max_strength, s);
  std::vector<WeightedPair> pairs;
  pairs.reserve(strength.size());
  for (const auto& [key, s] : strength) pairs.push_back({key.first, key.second, s / max_strength});

  SplitMix64 rng(seed);
  std::vector<double> x(n), y(n), dx(n), dy(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = rng.unit();
    y[i] = rng.unit();
  }

  const double k = 1.0 / std::sqrt(static_cast<double>(n));
  for (int iter = 0; iter < kLayoutIterations; ++iter) {
    std::fill(dx.begin(), dx.end(), 0.0);
    std::fill(dy.begin(), dy.end(), 0.0);

    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        double ddx = x[i] - x[j];
        double ddy = y[i] - y[j];
        double dist = std::hypot(ddx, ddy);
        if (dist < 1e-9) {
          // Coincident nodes: push apart along a direction fixed by index.
          const double angle = static_cast<double>(i * 7919 + j) * 0.61803398875;
          ddx = std::cos(angle) * 1e-9;
          ddy = std::sin(angle) * 1e-9;
          dist = 1e-9;
        }
        const double force = k * k / dist;
        dx[i] += ddx / dist * force;
        dy[i] += ddy / dist * force;
        dx[j] -= ddx / dist * force;
        dy[j] -= ddy / dist * force;
      }
    }

    for (const auto& p : pairs) {
      const double ddx = x[p.a] - x[p.b];
      const double ddy = y[p.a] - y[p.b];
      const double dist = std::max(std::hypot(ddx, ddy), 1e-9);
      const double force = p.weight * dist * dist / k;
      dx[p.a] -= ddx / dist * force;
      dy[p.a] -= ddy / dist * force;
      dx[p.b] += ddx / dist * force;
      dy[p.b] += ddy / dist * force;
    }

    // Pull toward the centre so disconnected components stay in frame.
    for (std::size_t i = 0; i < n; ++i) {
      dx[i] -= (x[i] - 0.5) * kGravity * k;
      dy[i] -= (y[i] - 0.5) * kGravity * k;
    }

    const double temperature = kInitialTemperature * (1.0 - static_cast<double>(iter) / kLayoutIterations);
    for (std::size_t i = 0; i < n; ++i) {
      const double len = std::hypot(dx[i], dy[i]);
      if (len <= 0.0) continue;
      const double step = std::min(len, temperature);
      x[i] += dx[i] / len * step;
      y[i] += dy[i] / len * step;
    }
  }

  const auto [min_x, max_x] = std::minmax_element(x.begin(), x.end());
  const auto [min_y, max_y] = std::minmax_element(y.begin(), y.end());
  const double span = std::max(*max_x - *min_x, *max_y - *min_y);
  const double scale = span > 0.0 ? (1.0 - 2.0 * kMargin) / span : 0.0;
  const double cx = (*min_x + *max_x) / 2.0;
  const double cy = (*min_y + *max_y) / 2.0;
  for (std::size_t i = 0; i < n; ++i) {
    layout.coordinates[layout.population[i]] = Point{0.5 + (x[i] - cx) * scale, 0.5 + (y[i] - cy) * scale};
  }
  return layout;
}

}  // namespace snawb::net
