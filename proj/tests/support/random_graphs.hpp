#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "unobs/grid.hpp"

namespace unobs::testing {

inline std::string data_path(const std::string& name) { return std::string(UNOBS_DATA_DIR) + "/" + name; }

/// Random spanning tree plus each remaining pair with probability `density`;
/// reactances uniform in [lo, hi].
inline Grid random_connected_grid(std::mt19937_64& rng, int n, double density, double lo = 0.8, double hi = 1.2) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 1);
  std::shuffle(order.begin(), order.end(), rng);
  std::uniform_real_distribution<double> x(lo, hi);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  std::vector<Bus> buses;
  for (int i = 1; i <= n; ++i) buses.push_back({i, true});
  std::vector<Line> lines;
  std::vector<std::vector<char>> used(n + 1, std::vector<char>(n + 1, 0));
  for (int k = 1; k < n; ++k) {
    int parent = order[std::uniform_int_distribution<int>(0, k - 1)(rng)];
    int child = order[k];
    lines.push_back({parent, child, x(rng)});
    used[parent][child] = used[child][parent] = 1;
  }
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      if (!used[a][b] && coin(rng) < density) lines.push_back({a, b, x(rng)});
  return Grid(std::move(buses), std::move(lines));
}

inline BusSet random_subset(std::mt19937_64& rng, int n, int size) {
  std::vector<int> ids(n);
  std::iota(ids.begin(), ids.end(), 1);
  std::shuffle(ids.begin(), ids.end(), rng);
  return BusSet(ids.begin(), ids.begin() + size);
}

struct Trial {
  Grid grid;
  BusSet pmus;
  BusSet unalterable;
};

/// N in [n_min, n_max], 1 ≤ |M| ≤ N−1, each bus unalterable with a per-trial
/// probability in [0, 0.5].
inline Trial random_trial(std::uint64_t seed, int n_min = 5, int n_max = 10) {
  std::mt19937_64 rng(seed);
  const int n = std::uniform_int_distribution<int>(n_min, n_max)(rng);
  const double density = std::uniform_real_distribution<double>(0.0, 0.5)(rng);
  Grid grid = random_connected_grid(rng, n, density);
  const int m = std::uniform_int_distribution<int>(1, n - 1)(rng);
  BusSet pmus = random_subset(rng, n, m);
  const double p_locked = std::uniform_real_distribution<double>(0.0, 0.5)(rng);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  BusSet unalterable;
  for (int i = 1; i <= n; ++i)
    if (coin(rng) < p_locked) unalterable.insert(i);
  return {std::move(grid), std::move(pmus), std::move(unalterable)};
}

}  // namespace unobs::testing
