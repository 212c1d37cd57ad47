#pragma once

#include <cstddef>

// Per-backend entry points. Only the dispatcher includes this header.
namespace zonempc::kernels::detail {

void axpy_scalar(double a, const double* x, double* y, std::size_t n);
void scale_scalar(double* x, double a, std::size_t n);
double dot_scalar(const double* x, const double* y, std::size_t n);
double sum_abs_scalar(const double* x, std::size_t n);
std::size_t argmin_scalar(const double* x, std::size_t n);
double band_excess_scalar(const double* x, const double* lo, const double* hi,
                          std::size_t n);

#if defined(__x86_64__) || defined(_M_X64)
#define ZONEMPC_HAVE_AVX2_BACKEND 1
void axpy_avx2(double a, const double* x, double* y, std::size_t n);
void scale_avx2(double* x, double a, std::size_t n);
double dot_avx2(const double* x, const double* y, std::size_t n);
double sum_abs_avx2(const double* x, std::size_t n);
std::size_t argmin_avx2(const double* x, std::size_t n);
double band_excess_avx2(const double* x, const double* lo, const double* hi,
                        std::size_t n);
#endif

#if defined(__aarch64__) || defined(__ARM_NEON)
#define ZONEMPC_HAVE_NEON_BACKEND 1
void axpy_neon(double a, const double* x, double* y, std::size_t n);
void scale_neon(double* x, double a, std::size_t n);
double dot_neon(const double* x, const double* y, std::size_t n);
double sum_abs_neon(const double* x, std::size_t n);
std::size_t argmin_neon(const double* x, std::size_t n);
double band_excess_neon(const double* x, const double* lo, const double* hi,
                        std::size_t n);
#endif

}  // namespace zonempc::kernels::detail
