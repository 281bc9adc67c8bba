#pragma once

#include <cstddef>
#include <string>

namespace pss::numgrid::simd {

// Per-point derivative data for one grid row.
struct RowInputs {
  const double* u;
  const double* ux;
  const double* uxx;
  const double* uxxx;
  const double* ut;
  const double* uxxt;
  const double* v;
  const double* vx;
  const double* vxx;
  const double* vxxx;
  const double* vt;
  const double* vxxt;
};

// Stencil kernels read c[i - 1], c[i + 1] (d3: c[i - 2] .. c[i + 2]) and write out[i], 0 <= i < n.
struct Kernels {
  const char* name;
  void (*d1)(const double* c, double* out, std::size_t n, double inv_2h);
  void (*d2)(const double* c, double* out, std::size_t n, double inv_h2);
  void (*d3)(const double* c, double* out, std::size_t n, double inv_2h3);
  // out[i] = (a[i] - b[i]) * scale
  void (*diff)(const double* a, const double* b, double* out, std::size_t n, double scale);
  // Residuals of both momentum equations written through u, v derivatives.
  void (*residual)(const RowInputs& in, double* r1, double* r2, std::size_t n);
};

const Kernels& scalar_kernels();
// nullptr when not compiled in or not supported by this CPU.
const Kernels* avx2_kernels();
const Kernels* neon_kernels();

// Best available set; PSS_SIMD=scalar (or avx2, neon) in the environment overrides.
const Kernels& active();
std::string active_name();

}  // namespace pss::numgrid::simd
