// Scalar reference kernels. These define the semantics the SIMD variants
// must reproduce.

#include <cmath>

#include "kernels_internal.hpp"

namespace zonempc::kernels::detail {

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale_scalar(double* x, double a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

double sum_abs_scalar(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::fabs(x[i]);
  return s;
}

std::size_t argmin_scalar(const double* x, std::size_t n) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (x[i] < x[best]) best = i;
  }
  return best;
}

double band_excess_scalar(const double* x, const double* lo, const double* hi,
                          std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double below = lo[i] - x[i];
    const double above = x[i] - hi[i];
    if (below > 0.0) s += below;
    if (above > 0.0) s += above;
  }
  return s;
}

}  // namespace zonempc::kernels::detail
