// Backend selection and dispatch.

#include "zonempc/kernels.hpp"

#include <cstdlib>
#include <cstring>

#include "kernels_internal.hpp"

namespace zonempc::kernels {

namespace {

struct Ops {
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*scale)(double*, double, std::size_t);
  double (*dot)(const double*, const double*, std::size_t);
  double (*sum_abs)(const double*, std::size_t);
  std::size_t (*argmin)(const double*, std::size_t);
  double (*band_excess)(const double*, const double*, const double*,
                        std::size_t);
};

constexpr Ops kScalarOps = {detail::axpy_scalar,    detail::scale_scalar,
                            detail::dot_scalar,     detail::sum_abs_scalar,
                            detail::argmin_scalar,  detail::band_excess_scalar};

#ifdef ZONEMPC_HAVE_AVX2_BACKEND
constexpr Ops kAvx2Ops = {detail::axpy_avx2,   detail::scale_avx2,
                          detail::dot_avx2,    detail::sum_abs_avx2,
                          detail::argmin_avx2, detail::band_excess_avx2};
#endif
#ifdef ZONEMPC_HAVE_NEON_BACKEND
constexpr Ops kNeonOps = {detail::axpy_neon,   detail::scale_neon,
                          detail::dot_neon,    detail::sum_abs_neon,
                          detail::argmin_neon, detail::band_excess_neon};
#endif

bool backend_supported(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return true;
    case Backend::Avx2:
#ifdef ZONEMPC_HAVE_AVX2_BACKEND
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Backend::Neon:
#ifdef ZONEMPC_HAVE_NEON_BACKEND
      return true;  // baseline on aarch64
#else
      return false;
#endif
  }
  return false;
}

Backend detect_backend() {
  if (const char* env = std::getenv("ZONEMPC_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::Scalar;
    if (std::strcmp(env, "avx2") == 0 && backend_supported(Backend::Avx2))
      return Backend::Avx2;
    if (std::strcmp(env, "neon") == 0 && backend_supported(Backend::Neon))
      return Backend::Neon;
  }
  if (backend_supported(Backend::Avx2)) return Backend::Avx2;
  if (backend_supported(Backend::Neon)) return Backend::Neon;
  return Backend::Scalar;
}

const Ops& ops_for(Backend b) {
  switch (b) {
#ifdef ZONEMPC_HAVE_AVX2_BACKEND
    case Backend::Avx2:
      return kAvx2Ops;
#endif
#ifdef ZONEMPC_HAVE_NEON_BACKEND
    case Backend::Neon:
      return kNeonOps;
#endif
    default:
      return kScalarOps;
  }
}

struct State {
  Backend backend = detect_backend();
  const Ops* ops = &ops_for(backend);
};

State& state() {
  static State s;
  return s;
}

}  // namespace

Backend active_backend() { return state().backend; }

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return "scalar";
    case Backend::Avx2:
      return "avx2";
    case Backend::Neon:
      return "neon";
  }
  return "?";
}

bool set_backend(Backend b) {
  if (!backend_supported(b)) return false;
  state().backend = b;
  state().ops = &ops_for(b);
  return true;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  state().ops->axpy(a, x, y, n);
}

void scale(double* x, double a, std::size_t n) { state().ops->scale(x, a, n); }

double dot(const double* x, const double* y, std::size_t n) {
  return state().ops->dot(x, y, n);
}

double sum_abs(const double* x, std::size_t n) {
  return state().ops->sum_abs(x, n);
}

std::size_t argmin(const double* x, std::size_t n) {
  return state().ops->argmin(x, n);
}

double band_excess(const double* x, const double* lo, const double* hi,
                   std::size_t n) {
  return state().ops->band_excess(x, lo, hi, n);
}

}  // namespace zonempc::kernels
