#pragma once

#include <cstddef>

// Vector kernels behind the numeric hot loops: simplex tableau row
// operations and trajectory-metric reductions. A scalar reference
// implementation is always available; AVX2 (x86-64) and NEON (aarch64)
// variants are selected once at startup and must be interchangeable with
// the scalar path (exact for elementwise ops and argmin, within roundoff
// for reductions). The ZONEMPC_SIMD environment variable ("scalar",
// "avx2", "neon") overrides autodetection.
namespace zonempc::kernels {

enum class Backend { Scalar, Avx2, Neon };

Backend active_backend();
const char* backend_name(Backend b);

// Switches the active backend. Returns false (keeping the current one)
// if the CPU does not support the request. Intended for tests and the
// env override; not thread-safe against concurrent kernel calls.
bool set_backend(Backend b);

// y[i] += a * x[i]
void axpy(double a, const double* x, double* y, std::size_t n);

// x[i] *= a
void scale(double* x, double a, std::size_t n);

double dot(const double* x, const double* y, std::size_t n);

double sum_abs(const double* x, std::size_t n);

// Index of the smallest element; first occurrence wins ties.
// Precondition: n > 0 and no NaN entries.
std::size_t argmin(const double* x, std::size_t n);

// Sum of max(0, lo[i] - x[i]) + max(0, x[i] - hi[i]).
double band_excess(const double* x, const double* lo, const double* hi,
                   std::size_t n);

}  // namespace zonempc::kernels
