#pragma once

#include <cstdint>

namespace sinebeta::detail {

inline constexpr int kLanes = 8;

inline std::uint64_t splitmix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::uint64_t path_key(std::uint64_t seed, std::uint64_t path) {
  return splitmix(splitmix(seed) ^ path);
}

struct BlockJob {
  const std::uint64_t* keys;  // kLanes path keys
  int n_lambda;
  const double* lambda;       // ascending
  const int* first_step;      // step index at which each lambda starts, ascending with lambda
  const double* drift;        // drift[j] = integral of (beta/4) e^{beta u/4} over step j
  double delta_dt;
  double sqrt_dt;
  double* alpha;              // n_lambda * kLanes, row per lambda
};

// Runs steps first_step[last] .. 1 for one block of paths. Step j covers
// u in [-j dt, -(j-1) dt] and draws its Gaussians from counters 2j, 2j+1.
void advance_block(const BlockJob& job);

}  // namespace sinebeta::detail
