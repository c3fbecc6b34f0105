#include <atomic>
#include <stdexcept>
#include <string>

#include "netpair/simd/kernels.hpp"

namespace netpair::simd {
namespace {

Backend probe() {
#if NETPAIR_HAVE_AVX2_KERNELS
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
    return Backend::avx2;
#endif
  return Backend::scalar;
}

std::atomic<Backend>& active() {
  static std::atomic<Backend> backend{probe()};
  return backend;
}

void require_equal(std::size_t a, std::size_t b, const char* what) {
  if (a != b)
    throw std::invalid_argument(std::string("simd::") + what +
                                ": length mismatch (" + std::to_string(a) +
                                " vs " + std::to_string(b) + ")");
}

}  // namespace

std::string_view backend_name(Backend backend) {
  switch (backend) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
  }
  return "unknown";
}

bool backend_supported(Backend backend) {
  if (backend == Backend::scalar) return true;
  return probe() == Backend::avx2;
}

Backend detected_backend() { return probe(); }

Backend active_backend() { return active().load(std::memory_order_relaxed); }

void set_backend(Backend backend) {
  if (!backend_supported(backend))
    throw std::invalid_argument("simd backend '" +
                                std::string(backend_name(backend)) +
                                "' is not supported on this CPU");
  active().store(backend, std::memory_order_relaxed);
}

double dot(std::span<const double> a, std::span<const double> b) {
  require_equal(a.size(), b.size(), "dot");
#if NETPAIR_HAVE_AVX2_KERNELS
  if (active_backend() == Backend::avx2) return avx2::dot(a.data(), b.data(), a.size());
#endif
  return scalar::dot(a.data(), b.data(), a.size());
}

double weighted_dot(std::span<const double> w, std::span<const double> a,
                    std::span<const double> b) {
  require_equal(w.size(), a.size(), "weighted_dot");
  require_equal(a.size(), b.size(), "weighted_dot");
#if NETPAIR_HAVE_AVX2_KERNELS
  if (active_backend() == Backend::avx2)
    return avx2::weighted_dot(w.data(), a.data(), b.data(), a.size());
#endif
  return scalar::weighted_dot(w.data(), a.data(), b.data(), a.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  require_equal(x.size(), y.size(), "axpy");
#if NETPAIR_HAVE_AVX2_KERNELS
  if (active_backend() == Backend::avx2) return avx2::axpy(alpha, x.data(), y.data(), x.size());
#endif
  scalar::axpy(alpha, x.data(), y.data(), x.size());
}

void xpby(std::span<const double> x, double beta, std::span<double> y) {
  require_equal(x.size(), y.size(), "xpby");
#if NETPAIR_HAVE_AVX2_KERNELS
  if (active_backend() == Backend::avx2) return avx2::xpby(x.data(), beta, y.data(), x.size());
#endif
  scalar::xpby(x.data(), beta, y.data(), x.size());
}

double edge_energy(std::span<const std::int32_t> tail,
                   std::span<const std::int32_t> head,
                   std::span<const double> c, std::span<const double> u,
                   std::span<const double> v) {
  require_equal(tail.size(), head.size(), "edge_energy");
  require_equal(tail.size(), c.size(), "edge_energy");
  require_equal(u.size(), v.size(), "edge_energy");
#if NETPAIR_HAVE_AVX2_KERNELS
  if (active_backend() == Backend::avx2)
    return avx2::edge_energy(tail.data(), head.data(), c.data(), u.data(),
                             v.data(), c.size());
#endif
  return scalar::edge_energy(tail.data(), head.data(), c.data(), u.data(),
                             v.data(), c.size());
}

void laplacian_spmv(std::span<const std::int32_t> offsets,
                    std::span<const std::int32_t> cols,
                    std::span<const double> weights,
                    std::span<const double> diag, std::span<const double> x,
                    std::span<double> y) {
  require_equal(offsets.size(), y.size() + 1, "laplacian_spmv");
  require_equal(cols.size(), weights.size(), "laplacian_spmv");
  require_equal(diag.size(), y.size(), "laplacian_spmv");
  require_equal(x.size(), y.size(), "laplacian_spmv");
#if NETPAIR_HAVE_AVX2_KERNELS
  if (active_backend() == Backend::avx2)
    return avx2::laplacian_spmv(offsets.data(), cols.data(), weights.data(),
                                diag.data(), x.data(), y.data(), y.size());
#endif
  scalar::laplacian_spmv(offsets.data(), cols.data(), weights.data(),
                         diag.data(), x.data(), y.data(), y.size());
}

}  // namespace netpair::simd
