#include <algorithm>
#include <cmath>

#include "pss/numgrid/numgrid.hpp"

namespace pss::numgrid {

namespace {

FieldValues values_at(const ch2::ExactSolution& sol, double x, double t) {
  FieldValues v;
  v.u = sol.u(x, t);
  v.v = sol.v(x, t);
  v.m = sol.m(x, t);
  v.n = sol.n(x, t);
  v.denominator = sol.min_denominator(x, t);
  v.x_param = x;
  return v;
}

}  // namespace

Fields constant_fields(double u0, double v0) {
  Fields f;
  f.label = "constant";
  f.has_momentum = true;
  f.row = [u0, v0](double, const std::vector<double>& xs, std::vector<FieldValues>& out) {
    out.assign(xs.size(), FieldValues{});
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = {u0, v0, u0, v0, std::numeric_limits<double>::infinity(), xs[i]};
  };
  return f;
}

Fields parametric_fields(const ch2::ExactSolution& sol) {
  Fields f;
  f.label = "tilded";
  f.has_momentum = true;
  const double k = sol.k;
  // Bound on |x_tilde - x| when |theta| <= 1.
  const double l1 = std::abs(std::log(std::abs(1.0 - k)));
  const double shift = l1 + std::max(l1, std::abs(std::log(1.0 + k))) + 5.0;
  f.row = [sol, shift](double t, const std::vector<double>& xs, std::vector<FieldValues>& out) {
    const Evaluator xt = [&sol](double x, double tt) { return sol.x_tilde(x, tt); };
    const std::vector<double> pre = invert_row(xt, t, xs, xs.front() - shift, xs.back() + shift);
    out.resize(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = values_at(sol, pre[i], t);
  };
  return f;
}

Fields untilded_fields(const ch2::ExactSolution& sol) {
  Fields f;
  f.label = "untilded";
  f.has_momentum = true;
  f.row = [sol](double t, const std::vector<double>& xs, std::vector<FieldValues>& out) {
    out.resize(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = values_at(sol, xs[i], t);
  };
  return f;
}

Fields perturbed(Fields f, double amplitude) {
  auto inner = f.row;
  f.label += "+perturbed";
  f.row = [inner, amplitude](double t, const std::vector<double>& xs, std::vector<FieldValues>& out) {
    inner(t, xs, out);
    for (std::size_t i = 0; i < xs.size(); ++i) out[i].u += amplitude * std::sin(xs[i]);
  };
  return f;
}

}  // namespace pss::numgrid
