#include "intentdbn/simd/kernels.hpp"

#include <cmath>
#include <limits>

namespace intentdbn::simd {
namespace {

void mul_scalar(double* dst, const double* a, const double* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] * b[i];
}

void scale_scalar(double* dst, const double* a, double s, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] * s;
}

void add_scalar(double* dst, const double* a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] += a[i];
}

double sum_scalar(const double* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i];
  return s;
}

double max_scalar(const double* a, std::size_t n) {
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) m = a[i] > m ? a[i] : m;
  return m;
}

double sector_min_dist2_scalar(const double* xs, const double* ys, std::size_t n,
                               const SectorQuery& q) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - q.px;
    const double dy = ys[i] - q.py;
    const double d2 = dx * dx + dy * dy;
    const double slack = q.tol * std::sqrt(d2);
    // clockwise of start: cross(start, d) <= 0; counter-clockwise of end: cross(end, d) >= 0
    const double c_start = q.start_x * dy - q.start_y * dx;
    const double c_end = q.end_x * dy - q.end_y * dx;
    if (c_start <= slack && c_end >= -slack && d2 < best) best = d2;
  }
  return best;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{mul_scalar, scale_scalar, add_scalar,
                                 sum_scalar, max_scalar, sector_min_dist2_scalar};
  return table;
}

}  // namespace intentdbn::simd
