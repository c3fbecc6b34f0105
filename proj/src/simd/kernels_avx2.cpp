#include "netpair/simd/kernels.hpp"

#if NETPAIR_HAVE_AVX2_KERNELS

#include <immintrin.h>

#define NETPAIR_AVX2 __attribute__((target("avx2,fma")))

namespace netpair::simd::avx2 {
namespace {

NETPAIR_AVX2 inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

NETPAIR_AVX2 double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4),
                           _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

NETPAIR_AVX2 double weighted_dot(const double* w, const double* a,
                                 const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d wa0 = _mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(a + i));
    const __m256d wa1 =
        _mm256_mul_pd(_mm256_loadu_pd(w + i + 4), _mm256_loadu_pd(a + i + 4));
    acc0 = _mm256_fmadd_pd(wa0, _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(wa1, _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d wa = _mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(a + i));
    acc0 = _mm256_fmadd_pd(wa, _mm256_loadu_pd(b + i), acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += w[i] * a[i] * b[i];
  return s;
}

NETPAIR_AVX2 void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i),
                                            _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) y[i] += alpha * x[i];
}

NETPAIR_AVX2 void xpby(const double* x, double beta, double* y, std::size_t n) {
  const __m256d vb = _mm256_set1_pd(beta);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(vb, _mm256_loadu_pd(y + i),
                                            _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) y[i] = x[i] + beta * y[i];
}

NETPAIR_AVX2 double edge_energy(const std::int32_t* tail, const std::int32_t* head,
                                const double* c, const double* u, const double* v,
                                std::size_t edges) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t e = 0;
  for (; e + 4 <= edges; e += 4) {
    const __m128i it = _mm_loadu_si128(reinterpret_cast<const __m128i*>(tail + e));
    const __m128i ih = _mm_loadu_si128(reinterpret_cast<const __m128i*>(head + e));
    const __m256d du = _mm256_sub_pd(_mm256_i32gather_pd(u, it, 8),
                                     _mm256_i32gather_pd(u, ih, 8));
    const __m256d dv = _mm256_sub_pd(_mm256_i32gather_pd(v, it, 8),
                                     _mm256_i32gather_pd(v, ih, 8));
    acc = _mm256_fmadd_pd(_mm256_mul_pd(_mm256_loadu_pd(c + e), du), dv, acc);
  }
  double s = hsum(acc);
  for (; e < edges; ++e) {
    const double du = u[tail[e]] - u[head[e]];
    const double dv = v[tail[e]] - v[head[e]];
    s += c[e] * du * dv;
  }
  return s;
}

NETPAIR_AVX2 void laplacian_spmv(const std::int32_t* offsets,
                                 const std::int32_t* cols, const double* weights,
                                 const double* diag, const double* x, double* y,
                                 std::size_t rows) {
  for (std::size_t i = 0; i < rows; ++i) {
    std::int32_t j = offsets[i];
    const std::int32_t end = offsets[i + 1];
    double acc = 0.0;
    if (end - j >= 4) {
      __m256d vacc = _mm256_setzero_pd();
      for (; j + 4 <= end; j += 4) {
        const __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(cols + j));
        vacc = _mm256_fmadd_pd(_mm256_loadu_pd(weights + j),
                               _mm256_i32gather_pd(x, idx, 8), vacc);
      }
      acc = hsum(vacc);
    }
    for (; j < end; ++j) acc += weights[j] * x[cols[j]];
    y[i] = diag[i] * x[i] - acc;
  }
}

}  // namespace netpair::simd::avx2

#endif
