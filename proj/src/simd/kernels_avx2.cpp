// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include <cmath>
#include <limits>

#include "intentdbn/simd/kernels.hpp"

namespace intentdbn::simd {
namespace {

void mul_avx2(double* dst, const double* a, const double* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(dst + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  for (; i < n; ++i) dst[i] = a[i] * b[i];
}

void scale_avx2(double* dst, const double* a, double s, std::size_t n) {
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(dst + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), vs));
  }
  for (; i < n; ++i) dst[i] = a[i] * s;
}

void add_avx2(double* dst, const double* a, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(dst + i, _mm256_add_pd(_mm256_loadu_pd(dst + i), _mm256_loadu_pd(a + i)));
  }
  for (; i < n; ++i) dst[i] += a[i];
}

double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double hmin(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m = _mm_min_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_min_sd(m, _mm_unpackhi_pd(m, m)));
}

double hmax(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(m, _mm_unpackhi_pd(m, m)));
}

double sum_avx2(const double* a, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(a + i));
    acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(a + i + 4));
  }
  for (; i + 4 <= n; i += 4) acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(a + i));
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i];
  return s;
}

double max_avx2(const double* a, std::size_t n) {
  double m = -std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  if (n >= 4) {
    __m256d acc = _mm256_set1_pd(m);
    for (; i + 4 <= n; i += 4) acc = _mm256_max_pd(acc, _mm256_loadu_pd(a + i));
    m = hmax(acc);
  }
  for (; i < n; ++i) m = a[i] > m ? a[i] : m;
  return m;
}

double sector_min_dist2_avx2(const double* xs, const double* ys, std::size_t n,
                             const SectorQuery& q) {
  const double inf = std::numeric_limits<double>::infinity();
  const __m256d px = _mm256_set1_pd(q.px);
  const __m256d py = _mm256_set1_pd(q.py);
  const __m256d sx = _mm256_set1_pd(q.start_x);
  const __m256d sy = _mm256_set1_pd(q.start_y);
  const __m256d ex = _mm256_set1_pd(q.end_x);
  const __m256d ey = _mm256_set1_pd(q.end_y);
  const __m256d tol = _mm256_set1_pd(q.tol);
  const __m256d vinf = _mm256_set1_pd(inf);
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d best = vinf;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), px);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + i), py);
    const __m256d d2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    const __m256d slack = _mm256_mul_pd(tol, _mm256_sqrt_pd(d2));
    const __m256d c_start = _mm256_sub_pd(_mm256_mul_pd(sx, dy), _mm256_mul_pd(sy, dx));
    const __m256d c_end = _mm256_sub_pd(_mm256_mul_pd(ex, dy), _mm256_mul_pd(ey, dx));
    const __m256d in_start = _mm256_cmp_pd(c_start, slack, _CMP_LE_OQ);
    const __m256d in_end = _mm256_cmp_pd(c_end, _mm256_xor_pd(slack, sign), _CMP_GE_OQ);
    const __m256d inside = _mm256_and_pd(in_start, in_end);
    best = _mm256_min_pd(best, _mm256_blendv_pd(vinf, d2, inside));
  }
  double m = hmin(best);
  for (; i < n; ++i) {
    const double dx = xs[i] - q.px;
    const double dy = ys[i] - q.py;
    const double d2 = dx * dx + dy * dy;
    const double slack = q.tol * std::sqrt(d2);
    const double c_start = q.start_x * dy - q.start_y * dx;
    const double c_end = q.end_x * dy - q.end_y * dx;
    if (c_start <= slack && c_end >= -slack && d2 < m) m = d2;
  }
  return m;
}

}  // namespace

const KernelTable& avx2_kernel_table() {
  static const KernelTable table{mul_avx2, scale_avx2, add_avx2,
                                 sum_avx2, max_avx2, sector_min_dist2_avx2};
  return table;
}

}  // namespace intentdbn::simd
