#include "sde_kernel.hpp"

#include <cmath>

namespace sinebeta::detail {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

__attribute__((noinline)) void normals(const std::uint64_t* __restrict keys, std::uint64_t j,
                                       double sdt, double* __restrict d1, double* __restrict d2) {
  alignas(64) double u1[kLanes], u2[kLanes], r[kLanes];
  for (int p = 0; p < kLanes; ++p) {
    const std::uint64_t x = splitmix(keys[p] + (2 * j) * kGolden);
    u1[p] = double(std::int64_t(x >> 11)) * 0x1p-53 + 0x1p-54;
  }
  for (int p = 0; p < kLanes; ++p) {
    const std::uint64_t x = splitmix(keys[p] + (2 * j + 1) * kGolden);
    u2[p] = double(std::int64_t(x >> 11)) * 0x1p-53;
  }
  for (int p = 0; p < kLanes; ++p) r[p] = std::sqrt(-2.0 * std::log(u1[p])) * sdt;
  for (int p = 0; p < kLanes; ++p) d1[p] = r[p] * std::cos(6.283185307179586 * u2[p]);
  for (int p = 0; p < kLanes; ++p) d2[p] = r[p] * std::sin(6.283185307179586 * u2[p]);
}

__attribute__((noinline)) void euler(double* __restrict a, const double* __restrict d1,
                                     const double* __restrict d2, double push, double ddt) {
  alignas(64) double s[kLanes], c[kLanes];
  for (int p = 0; p < kLanes; ++p) s[p] = std::sin(a[p]);
  for (int p = 0; p < kLanes; ++p) c[p] = std::cos(a[p]);
  for (int p = 0; p < kLanes; ++p) a[p] += push - ddt * s[p] + (c[p] - 1.0) * d1[p] + s[p] * d2[p];
}

}  // namespace

void advance_block(const BlockJob& job) {
  const int L = job.n_lambda;
  for (int l = 0; l < L * kLanes; ++l) job.alpha[l] = 0.0;
  if (L == 0) return;
  alignas(64) double d1[kLanes], d2[kLanes];
  const int top = job.first_step[L - 1];
  // lambdas are ascending, so the largest starts first
  int lo = L;
  for (int j = top; j >= 1; --j) {
    while (lo > 0 && job.first_step[lo - 1] >= j) --lo;
    normals(job.keys, static_cast<std::uint64_t>(j), job.sqrt_dt, d1, d2);
    const double g = job.drift[j];
    for (int l = lo; l < L; ++l) euler(job.alpha + l * kLanes, d1, d2, job.lambda[l] * g, job.delta_dt);
  }
}

}  // namespace sinebeta::detail
