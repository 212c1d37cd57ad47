// NEON kernel variants (aarch64). Same contracts as the scalar reference.

#if defined(__aarch64__) || defined(__ARM_NEON)

#include <arm_neon.h>

#include <cmath>
#include <cstdint>

#include "kernels_internal.hpp"

namespace zonempc::kernels::detail {

namespace {
constexpr std::size_t kWidth = 2;  // doubles per 128-bit register
}

void axpy_neon(double a, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  const std::size_t end = n - n % kWidth;
  for (std::size_t i = 0; i < end; i += kWidth) {
    float64x2_t vy = vld1q_f64(y + i);
    vy = vaddq_f64(vy, vmulq_f64(va, vld1q_f64(x + i)));
    vst1q_f64(y + i, vy);
  }
  for (std::size_t i = end; i < n; ++i) y[i] += a * x[i];
}

void scale_neon(double* x, double a, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  const std::size_t end = n - n % kWidth;
  for (std::size_t i = 0; i < end; i += kWidth) {
    vst1q_f64(x + i, vmulq_f64(vld1q_f64(x + i), va));
  }
  for (std::size_t i = end; i < n; ++i) x[i] *= a;
}

double dot_neon(const double* x, const double* y, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  const std::size_t end = n - n % kWidth;
  for (std::size_t i = 0; i < end; i += kWidth) {
    acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));
  }
  double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (std::size_t i = end; i < n; ++i) s += x[i] * y[i];
  return s;
}

double sum_abs_neon(const double* x, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  const std::size_t end = n - n % kWidth;
  for (std::size_t i = 0; i < end; i += kWidth) {
    acc = vaddq_f64(acc, vabsq_f64(vld1q_f64(x + i)));
  }
  double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (std::size_t i = end; i < n; ++i) s += std::fabs(x[i]);
  return s;
}

std::size_t argmin_neon(const double* x, std::size_t n) {
  if (n < 2 * kWidth) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (x[i] < x[best]) best = i;
    return best;
  }
  float64x2_t best_val = vld1q_f64(x);
  uint64x2_t best_idx = {0, 1};
  uint64x2_t idx = best_idx;
  const uint64x2_t step = vdupq_n_u64(kWidth);
  const std::size_t end = n - n % kWidth;
  for (std::size_t i = kWidth; i < end; i += kWidth) {
    idx = vaddq_u64(idx, step);
    const float64x2_t v = vld1q_f64(x + i);
    const uint64x2_t lt = vcltq_f64(v, best_val);
    best_val = vbslq_f64(lt, v, best_val);
    best_idx = vbslq_u64(lt, idx, best_idx);
  }
  double v0 = vgetq_lane_f64(best_val, 0);
  double v1 = vgetq_lane_f64(best_val, 1);
  std::size_t i0 = vgetq_lane_u64(best_idx, 0);
  std::size_t i1 = vgetq_lane_u64(best_idx, 1);
  double bv = v0;
  std::size_t bi = i0;
  if (v1 < bv || (v1 == bv && i1 < bi)) {
    bv = v1;
    bi = i1;
  }
  for (std::size_t i = end; i < n; ++i) {
    if (x[i] < bv) {
      bv = x[i];
      bi = i;
    }
  }
  return bi;
}

double band_excess_neon(const double* x, const double* lo, const double* hi,
                        std::size_t n) {
  const float64x2_t zero = vdupq_n_f64(0.0);
  float64x2_t acc = vdupq_n_f64(0.0);
  const std::size_t end = n - n % kWidth;
  for (std::size_t i = 0; i < end; i += kWidth) {
    const float64x2_t v = vld1q_f64(x + i);
    const float64x2_t below = vsubq_f64(vld1q_f64(lo + i), v);
    const float64x2_t above = vsubq_f64(v, vld1q_f64(hi + i));
    acc = vaddq_f64(acc, vmaxq_f64(below, zero));
    acc = vaddq_f64(acc, vmaxq_f64(above, zero));
  }
  double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (std::size_t i = end; i < n; ++i) {
    const double below = lo[i] - x[i];
    const double above = x[i] - hi[i];
    if (below > 0.0) s += below;
    if (above > 0.0) s += above;
  }
  return s;
}

}  // namespace zonempc::kernels::detail

#endif  // aarch64 / NEON
