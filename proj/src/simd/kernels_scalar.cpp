#include "netpair/simd/kernels.hpp"

namespace netpair::simd::scalar {

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double weighted_dot(const double* w, const double* a, const double* b,
                    std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += w[i] * a[i] * b[i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void xpby(const double* x, double beta, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + beta * y[i];
}

double edge_energy(const std::int32_t* tail, const std::int32_t* head,
                   const double* c, const double* u, const double* v,
                   std::size_t edges) {
  double s = 0.0;
  for (std::size_t e = 0; e < edges; ++e) {
    const double du = u[tail[e]] - u[head[e]];
    const double dv = v[tail[e]] - v[head[e]];
    s += c[e] * du * dv;
  }
  return s;
}

void laplacian_spmv(const std::int32_t* offsets, const std::int32_t* cols,
                    const double* weights, const double* diag, const double* x,
                    double* y, std::size_t rows) {
  for (std::size_t i = 0; i < rows; ++i) {
    double acc = 0.0;
    for (std::int32_t j = offsets[i]; j < offsets[i + 1]; ++j)
      acc += weights[j] * x[cols[j]];
    y[i] = diag[i] * x[i] - acc;
  }
}

}  // namespace netpair::simd::scalar
