// AVX2 kernel variants. This translation unit is compiled with -mavx2 and
// is only dispatched to after a runtime CPU check.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <cstdint>

#include "kernels_internal.hpp"

namespace zonempc::kernels::detail {

namespace {
constexpr std::size_t kWidth = 4;  // doubles per 256-bit register
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  const std::size_t end = n - n % kWidth;
  for (std::size_t i = 0; i < end; i += kWidth) {
    __m256d vx = _mm256_loadu_pd(x + i);
    __m256d vy = _mm256_loadu_pd(y + i);
    vy = _mm256_add_pd(vy, _mm256_mul_pd(va, vx));
    _mm256_storeu_pd(y + i, vy);
  }
  for (std::size_t i = end; i < n; ++i) y[i] += a * x[i];
}

void scale_avx2(double* x, double a, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  const std::size_t end = n - n % kWidth;
  for (std::size_t i = 0; i < end; i += kWidth) {
    _mm256_storeu_pd(x + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), va));
  }
  for (std::size_t i = end; i < n; ++i) x[i] *= a;
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t end = n - n % kWidth;
  for (std::size_t i = 0; i < end; i += kWidth) {
    acc = _mm256_add_pd(
        acc, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  alignas(32) double lanes[kWidth];
  _mm256_store_pd(lanes, acc);
  double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (std::size_t i = end; i < n; ++i) s += x[i] * y[i];
  return s;
}

double sum_abs_avx2(const double* x, std::size_t n) {
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  const std::size_t end = n - n % kWidth;
  for (std::size_t i = 0; i < end; i += kWidth) {
    acc = _mm256_add_pd(acc,
                        _mm256_andnot_pd(sign_mask, _mm256_loadu_pd(x + i)));
  }
  alignas(32) double lanes[kWidth];
  _mm256_store_pd(lanes, acc);
  double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (std::size_t i = end; i < n; ++i) s += std::fabs(x[i]);
  return s;
}

std::size_t argmin_avx2(const double* x, std::size_t n) {
  if (n < 2 * kWidth) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (x[i] < x[best]) best = i;
    return best;
  }
  // Per-lane running minimum plus the first index where it occurred. On a
  // strict "<" the lane keeps its earliest index, so the cross-lane merge
  // below recovers the global first occurrence.
  __m256d best_val = _mm256_loadu_pd(x);
  __m256i best_idx = _mm256_set_epi64x(3, 2, 1, 0);
  __m256i idx = best_idx;
  const __m256i step = _mm256_set1_epi64x(static_cast<long long>(kWidth));
  const std::size_t end = n - n % kWidth;
  for (std::size_t i = kWidth; i < end; i += kWidth) {
    idx = _mm256_add_epi64(idx, step);
    const __m256d v = _mm256_loadu_pd(x + i);
    const __m256d lt = _mm256_cmp_pd(v, best_val, _CMP_LT_OQ);
    best_val = _mm256_blendv_pd(best_val, v, lt);
    best_idx = _mm256_blendv_epi8(best_idx, idx, _mm256_castpd_si256(lt));
  }
  alignas(32) double vals[kWidth];
  alignas(32) std::int64_t idxs[kWidth];
  _mm256_store_pd(vals, best_val);
  _mm256_store_si256(reinterpret_cast<__m256i*>(idxs), best_idx);
  double bv = vals[0];
  std::size_t bi = static_cast<std::size_t>(idxs[0]);
  for (std::size_t l = 1; l < kWidth; ++l) {
    const auto i = static_cast<std::size_t>(idxs[l]);
    if (vals[l] < bv || (vals[l] == bv && i < bi)) {
      bv = vals[l];
      bi = i;
    }
  }
  for (std::size_t i = end; i < n; ++i) {
    if (x[i] < bv) {
      bv = x[i];
      bi = i;
    }
  }
  return bi;
}

double band_excess_avx2(const double* x, const double* lo, const double* hi,
                        std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  __m256d acc = _mm256_setzero_pd();
  const std::size_t end = n - n % kWidth;
  for (std::size_t i = 0; i < end; i += kWidth) {
    const __m256d v = _mm256_loadu_pd(x + i);
    const __m256d below = _mm256_sub_pd(_mm256_loadu_pd(lo + i), v);
    const __m256d above = _mm256_sub_pd(v, _mm256_loadu_pd(hi + i));
    acc = _mm256_add_pd(acc, _mm256_max_pd(below, zero));
    acc = _mm256_add_pd(acc, _mm256_max_pd(above, zero));
  }
  alignas(32) double lanes[kWidth];
  _mm256_store_pd(lanes, acc);
  double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (std::size_t i = end; i < n; ++i) {
    const double below = lo[i] - x[i];
    const double above = x[i] - hi[i];
    if (below > 0.0) s += below;
    if (above > 0.0) s += above;
  }
  return s;
}

}  // namespace zonempc::kernels::detail

#endif  // x86-64
