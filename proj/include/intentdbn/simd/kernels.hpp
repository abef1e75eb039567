#pragma once

// Data-parallel inner loops used by the factor algebra and the grounding
// vertex scan. Every kernel has a scalar reference implementation; wider
// variants are selected once at startup from the detected CPU features.

#include <cstddef>
#include <string_view>

namespace intentdbn::simd {

enum class Isa { kScalar, kAvx2 };

/// Points in a half-open sector given by two unit direction vectors.
/// A point d (relative to the vessel) is inside when it is clockwise of
/// `start` and counter-clockwise of `end`, within `tol` (scaled by |d|).
struct SectorQuery {
  double px = 0.0, py = 0.0;
  double start_x = 0.0, start_y = 0.0;
  double end_x = 0.0, end_y = 0.0;
  double tol = 1e-12;
};

struct KernelTable {
  // dst[i] = a[i] * b[i]
  void (*mul)(double* dst, const double* a, const double* b, std::size_t n);
  // dst[i] = a[i] * s
  void (*scale)(double* dst, const double* a, double s, std::size_t n);
  // dst[i] += a[i]
  void (*add)(double* dst, const double* a, std::size_t n);
  double (*sum)(const double* a, std::size_t n);
  double (*max)(const double* a, std::size_t n);
  // Minimum squared distance from (px, py) to the points inside the sector;
  // +inf when none qualifies.
  double (*sector_min_dist2)(const double* xs, const double* ys, std::size_t n,
                             const SectorQuery& q);
};

const KernelTable& scalar_kernels();
/// nullptr when the variant was not compiled in or the CPU lacks support.
const KernelTable* avx2_kernels();

/// Active table. Honors INTENTDBN_SIMD=scalar to force the reference path.
const KernelTable& kernels();
Isa active_isa();
std::string_view isa_name(Isa isa);

/// Override the active table (tests and benchmarks).
void force_isa(Isa isa);

}  // namespace intentdbn::simd
