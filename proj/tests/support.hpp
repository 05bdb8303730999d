#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "lgv/qubit.hpp"
#include "lgv/sequential.hpp"

namespace lgv::testsupport {

inline constexpr double kPi = 3.14159265358979323846;

// Seeded draws that stay identical across standard library implementations:
// raw engine words only, no distribution objects.
struct Draws {
  std::mt19937_64 rng;
  explicit Draws(uint64_t seed) : rng(seed) {}

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * ((rng() >> 11) * 0x1.0p-53);
  }

  int integer(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(rng() % static_cast<uint64_t>(hi - lo + 1));
  }

  PureState state() { return PureState(uniform(0, kPi), uniform(0, 2 * kPi)); }

  Schedule schedule(int n) {
    std::vector<double> g;
    for (int i = 0; i + 1 < n; ++i) g.push_back(uniform(0, kPi));
    return Schedule(g);
  }

  // k distinct slot indices from 1..n, increasing.
  std::vector<int> subset(int n, int k) {
    std::vector<int> pool(static_cast<size_t>(n));
    std::iota(pool.begin(), pool.end(), 1);
    for (int i = 0; i < k; ++i) {
      int j = integer(i, n - 1);
      std::swap(pool[static_cast<size_t>(i)], pool[static_cast<size_t>(j)]);
    }
    pool.resize(static_cast<size_t>(k));
    std::sort(pool.begin(), pool.end());
    return pool;
  }
};

}  // namespace lgv::testsupport
