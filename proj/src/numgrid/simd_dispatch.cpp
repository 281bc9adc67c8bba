#include <cstdlib>
#include <string_view>

#include "pss/numgrid/simd.hpp"

namespace pss::numgrid::simd {

const Kernels& active() {
  static const Kernels* chosen = [] {
    const char* env = std::getenv("PSS_SIMD");
    const std::string_view want = env ? env : "";
    if (want == "scalar") return &scalar_kernels();
    if (want == "avx2" && avx2_kernels()) return avx2_kernels();
    if (want == "neon" && neon_kernels()) return neon_kernels();
    if (const Kernels* k = avx2_kernels()) return k;
    if (const Kernels* k = neon_kernels()) return k;
    return &scalar_kernels();
  }();
  return *chosen;
}

std::string active_name() { return active().name; }

}  // namespace pss::numgrid::simd
