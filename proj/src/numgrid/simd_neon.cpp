#include "pss/numgrid/simd.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON)

#include <arm_neon.h>

namespace pss::numgrid::simd {

namespace {

void d1(const double* c, double* out, std::size_t n, double s) {
  const float64x2_t vs = vdupq_n_f64(s);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(out + i, vmulq_f64(vsubq_f64(vld1q_f64(c + i + 1), vld1q_f64(c + i - 1)), vs));
  for (; i < n; ++i) out[i] = (c[i + 1] - c[i - 1]) * s;
}

void d2(const double* c, double* out, std::size_t n, double s) {
  const float64x2_t vs = vdupq_n_f64(s);
  const float64x2_t two = vdupq_n_f64(2.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t t =
        vaddq_f64(vsubq_f64(vld1q_f64(c + i + 1), vmulq_f64(two, vld1q_f64(c + i))), vld1q_f64(c + i - 1));
    vst1q_f64(out + i, vmulq_f64(t, vs));
  }
  for (; i < n; ++i) out[i] = ((c[i + 1] - 2.0 * c[i]) + c[i - 1]) * s;
}

void d3(const double* c, double* out, std::size_t n, double s) {
  const float64x2_t vs = vdupq_n_f64(s);
  const float64x2_t two = vdupq_n_f64(2.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t a = vsubq_f64(vld1q_f64(c + i + 2), vmulq_f64(two, vld1q_f64(c + i + 1)));
    const float64x2_t b = vsubq_f64(vmulq_f64(two, vld1q_f64(c + i - 1)), vld1q_f64(c + i - 2));
    vst1q_f64(out + i, vmulq_f64(vaddq_f64(a, b), vs));
  }
  for (; i < n; ++i) out[i] = ((c[i + 2] - 2.0 * c[i + 1]) + (2.0 * c[i - 1] - c[i - 2])) * s;
}

void diff(const double* a, const double* b, double* out, std::size_t n, double s) {
  const float64x2_t vs = vdupq_n_f64(s);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(out + i, vmulq_f64(vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i)), vs));
  for (; i < n; ++i) out[i] = (a[i] - b[i]) * s;
}

}  // namespace

const Kernels* neon_kernels() {
  // The residual assembly stays scalar here; only the stencils are vectorized.
  static const Kernels k{"neon", d1, d2, d3, diff, scalar_kernels().residual};
  return &k;
}

}  // namespace pss::numgrid::simd

#else

namespace pss::numgrid::simd {
const Kernels* neon_kernels() { return nullptr; }
}  // namespace pss::numgrid::simd

#endif
