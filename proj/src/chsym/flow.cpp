#include <algorithm>
#include <cmath>

#include <boost/array.hpp>
#include <boost/numeric/odeint.hpp>

#include "pss/chsym/chsym.hpp"

namespace pss::ch2 {

namespace {

namespace odeint = boost::numeric::odeint;

// x, u, v, ux, vx, m, n, phi1, phi2, p; t is not moved by the flow.
using State = std::array<double, 10>;

EnlargedState unpack(const State& y, double t) {
  EnlargedState s;
  s.x = y[0];
  s.t = t;
  s.u = y[1];
  s.v = y[2];
  s.ux = y[3];
  s.vx = y[4];
  s.m = y[5];
  s.n = y[6];
  s.phi1 = y[7];
  s.phi2 = y[8];
  s.p = y[9];
  return s;
}

State pack(const EnlargedState& s) { return {s.x, s.u, s.v, s.ux, s.vx, s.m, s.n, s.phi1, s.phi2, s.p}; }

using Heun = odeint::explicit_generic_rk<2, 2, State, double>;

Heun heun() {
  const boost::array<double, 1> a1 = {{1.0}};
  const boost::array<double, 2> b = {{0.5, 0.5}};
  const boost::array<double, 2> c = {{0.0, 1.0}};
  return Heun(Heun::coef_a_type(a1), b, c);
}

State integrate(const State& y0, double t, double eta, double eps, int steps) {
  State y = y0;
  if (steps == 0) return y;
  auto rhs = [&](const State& s, State& dyde, double) {
    const auto g = generator_numeric(unpack(s, t), eta);
    dyde = {g[0], g[2], g[3], g[4], g[5], g[6], g[7], g[8], g[9], g[10]};
  };
  odeint::integrate_n_steps(heun(), rhs, y, 0.0, eps / steps, steps);
  return y;
}

double rel_error(const State& y, const State& exact) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    num = std::max(num, std::abs(y[i] - exact[i]));
    den = std::max(den, std::abs(exact[i]));
  }
  return den > 0 ? num / den : num;
}

}  // namespace

FlowReport flow_check(const Parameters& prm, const std::vector<double>& eps_samples, int base_steps, double x,
                      double t, double tol) {
  const EnlargedState seed = seed_state(x, t, prm.eta, prm.u0);
  const State y0 = pack(seed);
  FlowReport report;
  for (double eps : eps_samples) {
    const State exact = pack(finite_transform(seed, prm.eta, eps, prm.eps_div));
    const int n = std::max(1, static_cast<int>(std::ceil(base_steps * std::abs(eps))));
    const State coarse = integrate(y0, t, prm.eta, eps, n);
    const State fine = integrate(y0, t, prm.eta, eps, 2 * n);
    State rich;
    for (std::size_t i = 0; i < rich.size(); ++i) rich[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
    FlowSample s;
    s.eps = eps;
    s.rel_err_coarse = rel_error(coarse, exact);
    s.rel_err_fine = rel_error(fine, exact);
    s.rel_err_richardson = rel_error(rich, exact);
    s.observed_order = (s.rel_err_fine > 0 && s.rel_err_coarse > 0) ? std::log2(s.rel_err_coarse / s.rel_err_fine) : 0.0;
    report.max_richardson_error = std::max(report.max_richardson_error, s.rel_err_richardson);
    report.samples.push_back(s);
  }
  report.pass = !report.samples.empty() && report.max_richardson_error < tol;
  return report;
}

}  // namespace pss::ch2
