#include "pss/numgrid/simd.hpp"

namespace pss::numgrid::simd {

namespace {

void d1(const double* c, double* out, std::size_t n, double s) {
  for (std::size_t i = 0; i < n; ++i) out[i] = (c[i + 1] - c[i - 1]) * s;
}

void d2(const double* c, double* out, std::size_t n, double s) {
  for (std::size_t i = 0; i < n; ++i) out[i] = ((c[i + 1] - 2.0 * c[i]) + c[i - 1]) * s;
}

void d3(const double* c, double* out, std::size_t n, double s) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = ((c[i + 2] - 2.0 * c[i + 1]) + (2.0 * c[i - 1] - c[i - 2])) * s;
  }
}

void diff(const double* a, const double* b, double* out, std::size_t n, double s) {
  for (std::size_t i = 0; i < n; ++i) out[i] = (a[i] - b[i]) * s;
}

void residual(const RowInputs& in, double* r1, double* r2, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double m = in.u[i] - in.uxx[i];
    const double nn = in.v[i] - in.vxx[i];
    const double mx = in.ux[i] - in.uxxx[i];
    const double nx = in.vx[i] - in.vxxx[i];
    const double mt = in.ut[i] - in.uxxt[i];
    const double nt = in.vt[i] - in.vxxt[i];
    const double beta = in.u[i] * in.v[i] - in.ux[i] * in.vx[i];
    const double beta_x = (in.ux[i] * in.v[i] + in.u[i] * in.vx[i]) - (in.uxx[i] * in.vx[i] + in.ux[i] * in.vxx[i]);
    const double a = in.u[i] * in.vx[i] - in.ux[i] * in.v[i];
    r1[i] = mt - 0.5 * ((mx * beta + m * beta_x) - m * a);
    r2[i] = nt - 0.5 * ((nx * beta + nn * beta_x) + nn * a);
  }
}

}  // namespace

const Kernels& scalar_kernels() {
  static const Kernels k{"scalar", d1, d2, d3, diff, residual};
  return k;
}

}  // namespace pss::numgrid::simd
