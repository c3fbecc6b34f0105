#pragma once

// Data-parallel inner loops shared by the energy form, the network Laplacian
// and the conjugate-gradient solver.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant. The public entry points in `netpair::simd` dispatch at runtime to
// the best backend the CPU supports; the per-backend namespaces are exposed
// so the two paths can be compared directly.

#include <cstdint>
#include <span>
#include <string_view>

namespace netpair::simd {

enum class Backend { scalar, avx2 };

std::string_view backend_name(Backend backend);

/// True when the running CPU can execute `backend`.
bool backend_supported(Backend backend);

/// Best backend supported by the running CPU.
Backend detected_backend();

/// Backend currently used by the dispatching entry points.
Backend active_backend();

/// Overrides the dispatch target. Throws std::invalid_argument when the CPU
/// does not support the requested backend.
void set_backend(Backend backend);

// All span arguments of one call must have matching lengths; the dispatching
// wrappers check this and throw std::invalid_argument.

double dot(std::span<const double> a, std::span<const double> b);

/// sum_i w[i] * a[i] * b[i]
double weighted_dot(std::span<const double> w, std::span<const double> a,
                    std::span<const double> b);

/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);

/// y = x + beta * y
void xpby(std::span<const double> x, double beta, std::span<double> y);

/// sum_e c[e] * (u[tail[e]] - u[head[e]]) * (v[tail[e]] - v[head[e]])
double edge_energy(std::span<const std::int32_t> tail,
                   std::span<const std::int32_t> head,
                   std::span<const double> c, std::span<const double> u,
                   std::span<const double> v);

/// y[i] = diag[i] * x[i] - sum_{j in row i} weights[j] * x[cols[j]]
///
/// CSR layout: row i owns entries offsets[i] .. offsets[i+1]-1, so
/// offsets.size() == y.size() + 1.
void laplacian_spmv(std::span<const std::int32_t> offsets,
                    std::span<const std::int32_t> cols,
                    std::span<const double> weights,
                    std::span<const double> diag, std::span<const double> x,
                    std::span<double> y);

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double weighted_dot(const double* w, const double* a, const double* b,
                    std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void xpby(const double* x, double beta, double* y, std::size_t n);
double edge_energy(const std::int32_t* tail, const std::int32_t* head,
                   const double* c, const double* u, const double* v,
                   std::size_t edges);
void laplacian_spmv(const std::int32_t* offsets, const std::int32_t* cols,
                    const double* weights, const double* diag, const double* x,
                    double* y, std::size_t rows);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define NETPAIR_HAVE_AVX2_KERNELS 1
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
double weighted_dot(const double* w, const double* a, const double* b,
                    std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void xpby(const double* x, double beta, double* y, std::size_t n);
double edge_energy(const std::int32_t* tail, const std::int32_t* head,
                   const double* c, const double* u, const double* v,
                   std::size_t edges);
void laplacian_spmv(const std::int32_t* offsets, const std::int32_t* cols,
                    const double* weights, const double* diag, const double* x,
                    double* y, std::size_t rows);
}  // namespace avx2
#else
#define NETPAIR_HAVE_AVX2_KERNELS 0
#endif

}  // namespace netpair::simd
