#include <atomic>
#include <cstdlib>
#include <string_view>

#include "intentdbn/simd/kernels.hpp"

namespace intentdbn::simd {

#if defined(INTENTDBN_HAVE_AVX2)
const KernelTable& avx2_kernel_table();
#endif

namespace {

bool cpu_has_avx2() {
#if defined(INTENTDBN_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa detect() {
  if (const char* env = std::getenv("INTENTDBN_SIMD")) {
    if (std::string_view(env) == "scalar") return Isa::kScalar;
  }
  return cpu_has_avx2() ? Isa::kAvx2 : Isa::kScalar;
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

const KernelTable* avx2_kernels() {
#if defined(INTENTDBN_HAVE_AVX2)
  if (cpu_has_avx2()) return &avx2_kernel_table();
#endif
  return nullptr;
}

const KernelTable& kernels() {
  if (active().load(std::memory_order_relaxed) == Isa::kAvx2) {
    if (const KernelTable* t = avx2_kernels()) return *t;
  }
  return scalar_kernels();
}

Isa active_isa() {
  const Isa isa = active().load(std::memory_order_relaxed);
  return (isa == Isa::kAvx2 && avx2_kernels() == nullptr) ? Isa::kScalar : isa;
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
  }
  return "unknown";
}

void force_isa(Isa isa) { active().store(isa, std::memory_order_relaxed); }

}  // namespace intentdbn::simd
