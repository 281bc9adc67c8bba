#include "pss/numgrid/simd.hpp"

#if defined(PSS_HAVE_AVX2)

#include <immintrin.h>

namespace pss::numgrid::simd {

namespace {

inline __m256d ld(const double* p) { return _mm256_loadu_pd(p); }

void d1(const double* c, double* out, std::size_t n, double s) {
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_sub_pd(ld(c + i + 1), ld(c + i - 1)), vs));
  for (; i < n; ++i) out[i] = (c[i + 1] - c[i - 1]) * s;
}

void d2(const double* c, double* out, std::size_t n, double s) {
  const __m256d vs = _mm256_set1_pd(s);
  const __m256d two = _mm256_set1_pd(2.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d t = _mm256_add_pd(_mm256_sub_pd(ld(c + i + 1), _mm256_mul_pd(two, ld(c + i))), ld(c + i - 1));
    _mm256_storeu_pd(out + i, _mm256_mul_pd(t, vs));
  }
  for (; i < n; ++i) out[i] = ((c[i + 1] - 2.0 * c[i]) + c[i - 1]) * s;
}

void d3(const double* c, double* out, std::size_t n, double s) {
  const __m256d vs = _mm256_set1_pd(s);
  const __m256d two = _mm256_set1_pd(2.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_sub_pd(ld(c + i + 2), _mm256_mul_pd(two, ld(c + i + 1)));
    const __m256d b = _mm256_sub_pd(_mm256_mul_pd(two, ld(c + i - 1)), ld(c + i - 2));
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_add_pd(a, b), vs));
  }
  for (; i < n; ++i) out[i] = ((c[i + 2] - 2.0 * c[i + 1]) + (2.0 * c[i - 1] - c[i - 2])) * s;
}

void diff(const double* a, const double* b, double* out, std::size_t n, double s) {
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_sub_pd(ld(a + i), ld(b + i)), vs));
  for (; i < n; ++i) out[i] = (a[i] - b[i]) * s;
}

void residual(const RowInputs& in, double* r1, double* r2, std::size_t n) {
  const __m256d half = _mm256_set1_pd(0.5);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d u = ld(in.u + i), ux = ld(in.ux + i), uxx = ld(in.uxx + i), uxxx = ld(in.uxxx + i);
    const __m256d v = ld(in.v + i), vx = ld(in.vx + i), vxx = ld(in.vxx + i), vxxx = ld(in.vxxx + i);
    const __m256d m = _mm256_sub_pd(u, uxx);
    const __m256d nn = _mm256_sub_pd(v, vxx);
    const __m256d mx = _mm256_sub_pd(ux, uxxx);
    const __m256d nx = _mm256_sub_pd(vx, vxxx);
    const __m256d mt = _mm256_sub_pd(ld(in.ut + i), ld(in.uxxt + i));
    const __m256d nt = _mm256_sub_pd(ld(in.vt + i), ld(in.vxxt + i));
    const __m256d beta = _mm256_sub_pd(_mm256_mul_pd(u, v), _mm256_mul_pd(ux, vx));
    const __m256d beta_x = _mm256_sub_pd(_mm256_add_pd(_mm256_mul_pd(ux, v), _mm256_mul_pd(u, vx)),
                                         _mm256_add_pd(_mm256_mul_pd(uxx, vx), _mm256_mul_pd(ux, vxx)));
    const __m256d a = _mm256_sub_pd(_mm256_mul_pd(u, vx), _mm256_mul_pd(ux, v));
    const __m256d f1 = _mm256_sub_pd(_mm256_add_pd(_mm256_mul_pd(mx, beta), _mm256_mul_pd(m, beta_x)), _mm256_mul_pd(m, a));
    const __m256d f2 =
        _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(nx, beta), _mm256_mul_pd(nn, beta_x)), _mm256_mul_pd(nn, a));
    _mm256_storeu_pd(r1 + i, _mm256_sub_pd(mt, _mm256_mul_pd(half, f1)));
    _mm256_storeu_pd(r2 + i, _mm256_sub_pd(nt, _mm256_mul_pd(half, f2)));
  }
  if (i < n) {
    RowInputs tail = in;
    for (const double** p : {&tail.u, &tail.ux, &tail.uxx, &tail.uxxx, &tail.ut, &tail.uxxt, &tail.v, &tail.vx,
                             &tail.vxx, &tail.vxxx, &tail.vt, &tail.vxxt}) {
      *p += i;
    }
    scalar_kernels().residual(tail, r1 + i, r2 + i, n - i);
  }
}

}  // namespace

const Kernels* avx2_kernels() {
  static const Kernels k{"avx2", d1, d2, d3, diff, residual};
  static const bool ok = __builtin_cpu_supports("avx2");
  return ok ? &k : nullptr;
}

}  // namespace pss::numgrid::simd

#else

namespace pss::numgrid::simd {
const Kernels* avx2_kernels() { return nullptr; }
}  // namespace pss::numgrid::simd

#endif
