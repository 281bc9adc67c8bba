#include "pss/classify/classify.hpp"

namespace pss {

HypothesisViolation::HypothesisViolation(std::string condition, const Expr& residual, const std::string& detail)
    : std::invalid_argument("hypothesis violated: " + condition + (detail.empty() ? "" : " (" + detail + ")") +
                            "; residual = " + print(residual)),
      condition_(std::move(condition)),
      residual_(residual) {}

namespace {

const DerivationRules kNoRules;

Expr Dx(const Expr& e) { return total_dx(e, kNoRules); }

int max_order(const Expr& e, JetBase b) {
  int top = -1;
  for (int k = 0; k <= kMaxJetOrder; ++k)
    if (e.depends_on(Coord::jet(b, k))) top = k;
  return top;
}

bool only_parameters(const Expr& e) {
  const VarSet vs = e.vars();
  for (int k = 0; k < kNumVars; ++k)
    if (vs.test(k) && Coord(static_cast<std::uint8_t>(k)).kind() != CoordKind::parameter) return false;
  return true;
}

void require_constant(const Expr& eta) {
  if (!only_parameters(eta)) throw HypothesisViolation("eta is a constant", eta, "eta depends on a coordinate");
}

void require_nonzero(const std::string& condition, const Expr& e) {
  if (is_identically_zero(e)) throw HypothesisViolation(condition, e, "expression vanishes identically");
}

void require_zero(const std::string& condition, const Expr& e) {
  if (!is_identically_zero(e)) throw HypothesisViolation(condition, e);
}

void require_no_aux(const std::string& name, const Expr& e) {
  const VarSet vs = e.vars();
  for (int k = 0; k < kNumVars; ++k) {
    const Coord c(static_cast<std::uint8_t>(k));
    if (!vs.test(k)) continue;
    const bool momentum = c.is_jet() && (c.jet_base() == JetBase::m || c.jet_base() == JetBase::n);
    if (c.kind() == CoordKind::auxiliary || c == Coord::z() || momentum) {
      throw HypothesisViolation(name + " depends only on x, t and u, v jets", Expr::coord(c), "found " + c.name());
    }
  }
}

// g depends on u, u2, v, v2 only through u - u2, v - v2 and on no other jets.
void require_factored(const std::string& name, const Expr& g) {
  require_no_aux(name, g);
  for (JetBase b : {JetBase::u, JetBase::v}) {
    for (int k = 0; k <= kMaxJetOrder; ++k) {
      if (k == 0 || k == 2) continue;
      const Coord c = Coord::jet(b, k);
      if (g.depends_on(c)) throw HypothesisViolation(name + " depends on (x, t, u - u2, v - v2)", diff(g, c));
    }
    require_zero(name + " depends on (x, t, u - u2, v - v2)",
                 diff(g, Coord::jet(b, 0)) + diff(g, Coord::jet(b, 2)));
  }
}

void require_orders(const std::string& name, const Expr& e, int mu, int nu) {
  require_no_aux(name, e);
  if (max_order(e, JetBase::u) > mu || max_order(e, JetBase::v) > nu) {
    throw HypothesisViolation(name + " has jet order at most (" + std::to_string(mu) + ", " + std::to_string(nu) + ")",
                              e);
  }
}

void require_delta(int delta) {
  if (delta != 1 && delta != -1) throw HypothesisViolation("delta is +1 or -1", Expr(static_cast<long>(delta)));
}

// F, G from the two structure equations that carry g and h.
std::pair<Expr, Expr> solve_for_flux(const Expr& g, const Expr& h, const Expr& R1, const Expr& R2) {
  const Expr W = wronskian(g, h);
  const Expr gu = diff(g, Coord::u()), gv = diff(g, Coord::v());
  const Expr hu = diff(h, Coord::u()), hv = diff(h, Coord::v());
  return {(hv * R1 - gv * R2) / W, (-hu * R1 + gu * R2) / W};
}

void check_generic(const Expr& L, const Expr& N, int m, int n) {
  const Coord um = Coord::u(m - 1), vn = Coord::v(n - 1);
  const Expr a = diff(L, um), b = diff(N, um), c = diff(L, vn), d = diff(N, vn);
  require_nonzero("generic condition on the top jets of L and N", (a * a + b * b) * (c * c + d * d));
}

void check_surface_common(const SurfaceData& in) {
  require_delta(in.delta);
  require_constant(in.eta);
  if (in.m < 2 || in.n < 2) throw std::invalid_argument("system orders must be at least 2");
  require_factored("g", in.g);
  require_factored("h", in.h);
  require_nonzero("W = g_u h_v - g_v h_u is nonzero", wronskian(in.g, in.h));
  require_orders("L", in.L, in.m - 1, in.n - 1);
  // For second-order systems g itself carries u2, v2, so M only has to stay below the top jets.
  require_orders("M", in.M, in.m >= 3 ? in.m - 2 : 1, in.n >= 3 ? in.n - 2 : 1);
}

}  // namespace

Expr wronskian(const Expr& g, const Expr& h) {
  return diff(g, Coord::u()) * diff(h, Coord::v()) - diff(g, Coord::v()) * diff(h, Coord::u());
}

Construction build_eta_in_omega2(const SurfaceData& in) {
  check_surface_common(in);
  require_nonzero("g M - eta L is nonzero", in.g * in.M - in.eta * in.L);
  const Expr N = (Dx(in.M) + in.h * in.L) / in.g;
  check_generic(in.L, N, in.m, in.n);
  const Expr d(static_cast<long>(in.delta));
  const Expr R1 = -diff(in.g, Coord::t()) + Dx(in.L) - in.h * in.M + in.eta * N;
  const Expr R2 = -diff(in.h, Coord::t()) + Dx(N) - d * in.g * in.M + d * in.eta * in.L;
  Construction out;
  std::tie(out.system.F, out.system.G) = solve_for_flux(in.g, in.h, R1, R2);
  out.system.order_u = in.m;
  out.system.order_v = in.n;
  out.system.delta = in.delta;
  out.forms.f = {{{in.g, in.L}, {in.eta, in.M}, {in.h, N}}};
  out.forms.delta = in.delta;
  out.forms.eta_role = 1;
  out.N = N;
  return out;
}

Construction build_eta_in_omega3(const SurfaceData& in) {
  check_surface_common(in);
  if (in.M.is_constant()) throw HypothesisViolation("M is non-constant", in.M);
  const Expr d(static_cast<long>(in.delta));
  const Expr N = (d * Dx(in.M) + in.h * in.L) / in.g;
  check_generic(in.L, N, in.m, in.n);
  const Expr R1 = -diff(in.g, Coord::t()) + Dx(in.L) - in.eta * N + in.h * in.M;
  const Expr R2 = -diff(in.h, Coord::t()) + Dx(N) - in.g * in.M + in.eta * in.L;
  Construction out;
  std::tie(out.system.F, out.system.G) = solve_for_flux(in.g, in.h, R1, R2);
  out.system.order_u = in.m;
  out.system.order_v = in.n;
  out.system.delta = in.delta;
  out.forms.f = {{{in.g, in.L}, {in.h, N}, {in.eta, in.M}}};
  out.forms.delta = in.delta;
  out.forms.eta_role = 2;
  out.N = N;
  return out;
}

Expr mixed_derivative_constraint(const ThirdOrderData& in) {
  const Expr k = in.g * in.N1 - in.h * in.L1;
  return diff(diff(k, Coord::u(2)), Coord::v(1)) - diff(diff(k, Coord::u(1)), Coord::v(2));
}

namespace {

void check_third_order_common(const ThirdOrderData& in) {
  require_delta(in.delta);
  require_constant(in.eta);
  require_factored("g", in.g);
  require_factored("h", in.h);
  for (const auto* e : {&in.g, &in.h, &in.A, &in.L1, &in.N1, &in.M}) {
    if (e->depends_on(Coord::t())) throw HypothesisViolation("data is free of t", *e);
  }
  require_orders("A", in.A, 1, 1);
  require_orders("L1", in.L1, 1, 1);
  require_orders("N1", in.N1, 1, 1);
  require_orders("M", in.M, 1, 1);
  require_nonzero("W = g_u h_v - g_v h_u is nonzero", wronskian(in.g, in.h));
}

Construction finish_third_order(Construction c, const ThirdOrderData& in, int eta_row) {
  const Expr N = -in.A * in.h + in.N1;
  c.forms.f[eta_row == 1 ? 2 : 1][1] = N;
  c.N = N;
  c.lax = from_forms(c.forms, in.delta == 1 ? Algebra::sl2 : Algebra::su2);
  return c;
}

}  // namespace

Construction build_third_order_eta_in_omega2(const ThirdOrderData& in) {
  check_third_order_common(in);
  require_nonzero("L1 differs from (g/eta)(M + eta A)", in.g * (in.M + in.eta * in.A) - in.eta * in.L1);
  require_zero("mixed-derivative constraint (g N1 - h L1)_{u2 v1} = (g N1 - h L1)_{u1 v2}",
               mixed_derivative_constraint(in));
  require_zero("compatibility constraint D_x M + h L1 - g N1 = 0", Dx(in.M) + in.h * in.L1 - in.g * in.N1);
  SurfaceData s{in.g, in.h, -in.A * in.g + in.L1, in.M, in.eta, in.delta, 3, 3};
  return finish_third_order(build_eta_in_omega2(s), in, 1);
}

Construction build_third_order_eta_in_omega3(const ThirdOrderData& in) {
  check_third_order_common(in);
  if (in.M.is_constant()) throw HypothesisViolation("M is non-constant", in.M);
  const Expr d(static_cast<long>(in.delta));
  require_zero("compatibility constraint delta D_x M + h L1 - g N1 = 0",
               d * Dx(in.M) + in.h * in.L1 - in.g * in.N1);
  SurfaceData s{in.g, in.h, -in.A * in.g + in.L1, in.M, in.eta, in.delta, 3, 3};
  return finish_third_order(build_eta_in_omega3(s), in, 2);
}

std::pair<Expr, Expr> third_order_rhs_eta_in_omega2(const ThirdOrderData& in) {
  const Expr W = wronskian(in.g, in.h);
  const Expr& g = in.g;
  const Expr& h = in.h;
  const Expr d(static_cast<long>(in.delta));
  const Expr gu = diff(g, Coord::u()), gv = diff(g, Coord::v());
  const Expr hu = diff(h, Coord::u()), hv = diff(h, Coord::v());
  const Expr DA = Dx(in.A), DL = Dx(in.L1), DN = Dx(in.N1);
  const Expr c = (in.eta * in.A + in.M) / (Expr(2) * W);
  const Expr q = h * h - d * g * g;
  const Expr k = d * g * in.L1 - h * in.N1;
  const Expr F = in.A * Expr::coord(Coord::u(3)) - DA / W * (g * hv - h * gv) - in.A * Expr::coord(Coord::u(1)) +
                 (hv * DL - gv * DN) / W - c * diff(q, Coord::v()) + in.eta / W * diff(k, Coord::v(2));
  const Expr G = in.A * Expr::coord(Coord::v(3)) - DA / W * (-g * hu + h * gu) - in.A * Expr::coord(Coord::v(1)) +
                 (-hu * DL + gu * DN) / W - c * diff(-q, Coord::u()) + in.eta / W * diff(-k, Coord::u(2));
  return {F, G};
}

std::pair<Expr, Expr> third_order_rhs_eta_in_omega3(const ThirdOrderData& in) {
  const Expr W = wronskian(in.g, in.h);
  const Expr& g = in.g;
  const Expr& h = in.h;
  const Expr gu = diff(g, Coord::u()), gv = diff(g, Coord::v());
  const Expr hu = diff(h, Coord::u()), hv = diff(h, Coord::v());
  const Expr DA = Dx(in.A), DL = Dx(in.L1), DN = Dx(in.N1);
  const Expr c = (in.eta * in.A + in.M) / (Expr(2) * W);
  const Expr q = h * h + g * g;
  const Expr k = h * in.N1 + g * in.L1;
  const Expr F = in.A * Expr::coord(Coord::u(3)) - DA / W * (g * hv - h * gv) - in.A * Expr::coord(Coord::u(1)) +
                 (hv * DL - gv * DN) / W + c * diff(q, Coord::v()) - in.eta / W * (-diff(k, Coord::v(2)));
  const Expr G = in.A * Expr::coord(Coord::v(3)) - DA / W * (-g * hu + h * gu) - in.A * Expr::coord(Coord::v(1)) +
                 (-hu * DL + gu * DN) / W + c * (-diff(q, Coord::u())) - in.eta / W * diff(k, Coord::u(2));
  return {F, G};
}

bool is_linear_in_top_jets(const PdeSystem& sys) {
  const Coord um = Coord::u(sys.order_u), vn = Coord::v(sys.order_v);
  for (const Expr* e : {&sys.F, &sys.G}) {
    const Expr du = diff(*e, um), dv = diff(*e, vn);
    if (!is_identically_zero(diff(du, um)) || !is_identically_zero(diff(du, vn)) ||
        !is_identically_zero(diff(dv, vn)))
      return false;
  }
  return true;
}

std::pair<int, int> system_orders(const Expr& F, const Expr& G) {
  return {std::max({2, max_order(F, JetBase::u), max_order(G, JetBase::u)}),
          std::max({2, max_order(F, JetBase::v), max_order(G, JetBase::v)})};
}

std::pair<Expr, Expr> reduce_system(const PdeSystem& sys, const Expr& image) {
  const int top = std::max(max_order(sys.F, JetBase::v), max_order(sys.G, JetBase::v));
  Bindings b;
  Expr cur = image;
  for (int k = 0; k <= top; ++k) {
    b[Coord::v(k)] = cur;
    if (k < top) cur = Dx(cur);
  }
  return {substitute(sys.F, b), substitute(sys.G, b)};
}

}  // namespace pss
