#include "pss/chsym/chsym.hpp"

#include <cmath>
#include <sstream>

namespace pss::ch2 {

ParseOptions options() {
  ParseOptions o;
  o.momentum_first_class = true;
  return o;
}

Expr P(std::string_view text) { return parse(text, options()); }

namespace {

const DerivationRules& jets_only() {
  static const DerivationRules r(MomentumMode::first_class, {});
  return r;
}

Expr half() { return Expr::rational(1, 2); }

Expr flux(const Expr& mom, int sign, const DerivationRules& r, const ParseOptions& o) {
  const Expr beta = parse("u*v - u1*v1", o);
  const Expr a = parse("u*v1 - u1*v", o);
  return half() * total_dx(mom * beta, r) + Expr(sign) * half() * mom * a;
}

LinearProblem make_linear_problem() {
  LinearProblem lp;
  lp.M = {{{P("-1/2"), P("1/2*eta*m")}, {P("-1/2*eta*n"), P("1/2")}}};
  const Expr alpha = P("1/(2*eta^2) + 1/4*(u*v - u1*v1 + u*v1 - u1*v)");
  const Expr beta = P("u*v - u1*v1");
  lp.N = {{{-alpha, P("1/4*eta*m") * beta + P("(u - u1)/(2*eta)")},
           {P("-1/4*eta*n") * beta - P("(v + v1)/(2*eta)"), alpha}}};

  const Expr f1 = P("phi1"), f2 = P("phi2"), h1 = P("phih1"), h2 = P("phih2");
  auto column = [&](const Mat2& A, int row) { return A[row][0] * f1 + A[row][1] * f2; };
  auto adjoint = [&](const Mat2& A, int col) { return -(h1 * A[0][col] + h2 * A[1][col]); };

  std::map<Coord, Expr> x{{Coord::phi1(), column(lp.M, 0)},
                          {Coord::phi2(), column(lp.M, 1)},
                          {Coord::phih1(), adjoint(lp.M, 0)},
                          {Coord::phih2(), adjoint(lp.M, 1)},
                          {Coord::p(), P("-1/2*eta^2*m*phi2^2")}};
  std::map<Coord, Expr> t{{Coord::m(), m_flux()},
                          {Coord::n(), n_flux()},
                          {Coord::phi1(), column(lp.N, 0)},
                          {Coord::phi2(), column(lp.N, 1)},
                          {Coord::phih1(), adjoint(lp.N, 0)},
                          {Coord::phih2(), adjoint(lp.N, 1)},
                          {Coord::p(), P("-1/eta*phi1*phi2 + 1/2*(v + v1)*phi1^2 - 1/4*eta^2*(u*v - u1*v1)*m*phi2^2")}};
  lp.rules = DerivationRules(MomentumMode::first_class, std::move(x), std::move(t));
  return lp;
}

Expr at_zero(const Expr& e) { return substitute(e, {{Coord::eps(), Expr()}}); }

Expr eps_slope(const Expr& e) { return at_zero(diff(e, Coord::eps())); }

}  // namespace

Expr m_flux() { return flux(P("m"), -1, jets_only(), options()); }
Expr n_flux() { return flux(P("n"), 1, jets_only(), options()); }

Expr m_flux_in_jets() { return flux(parse("u - u2"), -1, DerivationRules(), {}); }
Expr n_flux_in_jets() { return flux(parse("v - v2"), 1, DerivationRules(), {}); }

const LinearProblem& linear_problem() {
  static const LinearProblem lp = make_linear_problem();
  return lp;
}

const DerivationRules& rules() { return linear_problem().rules; }

const PdeSystem& system() {
  static const PdeSystem s = [] {
    PdeSystem out;
    out.order_u = out.order_v = 3;
    return out;
  }();
  return s;
}

Expr reduce_hatted(const Expr& e) {
  return substitute(e, {{Coord::phih1(), P("phi2")}, {Coord::phih2(), P("-phi1")}});
}

std::vector<RuleResidual> adjoint_reduction_residuals() {
  const auto& r = rules();
  std::vector<RuleResidual> out;
  for (bool t_side : {false, true}) {
    auto rule = [&](Coord c) { return t_side ? *r.t_rule(c) : *r.x_rule(c); };
    out.push_back({Coord::phih1(), reduce_hatted(rule(Coord::phih1())) - rule(Coord::phi2())});
    out.push_back({Coord::phih2(), reduce_hatted(rule(Coord::phih2())) + rule(Coord::phi1())});
  }
  return out;
}

std::array<Expr, 2> spectral_gradient() { return {P("phih1*phi2"), P("-phi1*phih2")}; }

std::array<Expr, 2> apply_d1(const Expr& a, const Expr& b, const DerivationRules& r) {
  return {total_dx_n(b, 2, r) - b, a - total_dx_n(a, 2, r)};
}

SymmetryTuple nonlocal_symmetry(bool reduced) {
  SymmetryTuple s;
  if (reduced) {
    s.u = P("-phi1^2");
    s.v = P("phi2^2");
    s.m = P("eta*(m1 - m)*phi1*phi2 + 1/2*eta^2*m*(m*phi2^2 - n*phi1^2)");
    s.n = P("eta*(n1 + n)*phi1*phi2 + 1/2*eta^2*n*(m*phi2^2 - n*phi1^2)");
  } else {
    s.u = P("phi1*phih2");
    s.v = P("phih1*phi2");
    s.m = P("1/2*eta*(m1 - m)*(phi1*phih1 - phi2*phih2) + 1/2*eta^2*m*(n*phi1*phih2 + m*phi2*phih1)");
    s.n = P("1/2*eta*(n1 + n)*(phi1*phih1 - phi2*phih2) + 1/2*eta^2*n*(n*phi1*phih2 + m*phi2*phih1)");
  }
  return s;
}

Expr linearize(const Expr& e, const SymmetryTuple& s, const DerivationRules& r) {
  Expr out;
  const VarSet vs = e.vars();
  for (int id = 0; id < kNumVars; ++id) {
    if (!vs.test(id)) continue;
    const Coord c(static_cast<std::uint8_t>(id));
    const Expr d = diff(e, c);
    if (c.is_jet()) {
      const Expr* w = nullptr;
      switch (c.jet_base()) {
        case JetBase::u: w = &s.u; break;
        case JetBase::v: w = &s.v; break;
        case JetBase::m: w = &s.m; break;
        case JetBase::n: w = &s.n; break;
      }
      out += d * total_dx_n(*w, c.order(), r);
      continue;
    }
    if (c.kind() != CoordKind::auxiliary) continue;
    const std::optional<Expr>* w = c == Coord::phi1()   ? &s.phi1
                                   : c == Coord::phi2() ? &s.phi2
                                   : c == Coord::p()    ? &s.p
                                                        : nullptr;
    if (!w || !w->has_value()) throw std::invalid_argument("symmetry tuple has no component for " + c.name());
    out += d * **w;
  }
  return out;
}

std::array<Expr, 2> check_symmetry_residual(const SymmetryTuple& s) {
  const auto& r = rules();
  return {total_dt_mod_system(s.m, system(), r) - linearize(m_flux(), s, r),
          total_dt_mod_system(s.n, system(), r) - linearize(n_flux(), s, r)};
}

std::array<Expr, 2> momentum_consistency(const SymmetryTuple& s) {
  const auto& r = rules();
  return {s.m - (s.u - total_dx_n(s.u, 2, r)), s.n - (s.v - total_dx_n(s.v, 2, r))};
}

SymmetryTuple prolongation() {
  const auto& r = rules();
  SymmetryTuple s = nonlocal_symmetry(true);
  const Expr eta = Expr::coord(Coord::eta());
  const Expr f1 = P("phi1"), f2 = P("phi2"), p = P("p");
  s.phi1 = f1 * p + eta * f1 * total_dx(f1, r) * f2 + half() * eta * f1 * f1 * f2;
  s.phi2 = f2 * p + eta * f1 * f2 * total_dx(f2, r) + half() * eta * f1 * f2 * f2;
  s.p = p * p + eta * f1 * f2 * total_dx(p, r);
  return s;
}

std::vector<ProlongationResidual> prolongation_residuals(const SymmetryTuple& s) {
  const auto& r = rules();
  std::vector<ProlongationResidual> out;
  const std::pair<Coord, const std::optional<Expr>*> items[] = {
      {Coord::phi1(), &s.phi1}, {Coord::phi2(), &s.phi2}, {Coord::p(), &s.p}};
  for (const auto& [c, w] : items) {
    if (!w->has_value()) throw std::invalid_argument("symmetry tuple has no component for " + c.name());
    out.push_back({c, false, total_dx(**w, r) - linearize(*r.x_rule(c), s, r)});
    out.push_back({c, true, total_dt_mod_system(**w, system(), r) - linearize(*r.t_rule(c), s, r)});
  }
  return out;
}

const Expr& VectorField::at(const std::string& key) const {
  for (const auto& [k, e] : components) {
    if (k == key) return e;
  }
  throw std::out_of_range("no component " + key);
}

VectorField generator() {
  VectorField v;
  v.components = {
      {"x", P("-eta*phi1*phi2")},
      {"t", Expr()},
      {"u", P("-(phi1^2 + eta*phi1*phi2*u1)")},
      {"v", P("phi2^2 - eta*phi1*phi2*v1")},
      {"u1", P("phi1^2 - eta*u*phi1*phi2")},
      {"v1", P("phi2^2 - eta*v*phi1*phi2")},
      {"p", P("p^2")},
      {"m", P("-eta*m*phi1*phi2 + 1/2*eta^2*m*(m*phi2^2 - n*phi1^2)")},
      {"n", P("eta*n*phi1*phi2 + 1/2*eta^2*n*(m*phi2^2 - n*phi1^2)")},
      {"phi1", P("phi1*p + 1/2*eta*phi1^2*phi2")},
      {"phi2", P("phi2*p + 1/2*eta*phi1*phi2^2")},
  };
  return v;
}

VectorField evolutionary_generator() {
  const VectorField v = generator();
  const Expr& xi = v.at("x");
  VectorField q;
  for (const auto& [key, comp] : v.components) {
    if (key == "x" || key == "t") continue;
    const Coord c = *Coord::from_name(key);
    q.components.emplace_back(key, comp - xi * total_dx(Expr::coord(c), rules()));
  }
  return q;
}

std::vector<FirstOrderCheck> vector_field_first_order_check() {
  const Expr eps = Expr::coord(Coord::eps());
  const Expr A = P("1 - eps*p - eps*eta*phi1*phi2");
  const Expr B = P("1 - eps*p");
  const Expr R = A / B;
  const Expr two(2);
  const VectorField V = generator();

  std::vector<std::pair<std::string, Expr>> derivs;
  derivs.emplace_back("x", eps_slope(R) / at_zero(R));
  derivs.emplace_back("t", Expr());
  derivs.emplace_back("u", eps_slope(P("u + u1") * R / two - P("u1 - u") / (two * R) - eps * P("phi1^2") / A));
  derivs.emplace_back("v", eps_slope(P("v + v1") * R / two - P("v1 - v") / (two * R) + eps * P("phi2^2") / B));
  const Expr D = A * (two * B - eps * P("eta^2*(m*phi2^2 - n*phi1^2)")) + eps * eps * P("eta^3*n*phi1^3*phi2");
  derivs.emplace_back("m", eps_slope(two * P("m") * A * A / D));
  derivs.emplace_back("n", eps_slope(two * P("n") * B * B / D));
  const Expr S = A * B;
  if (!(at_zero(S) == Expr(1))) throw std::logic_error("square-root argument is not 1 at eps = 0");
  derivs.emplace_back("phi1", -half() * P("phi1") * eps_slope(S));
  derivs.emplace_back("phi2", -half() * P("phi2") * eps_slope(S));
  derivs.emplace_back("p", eps_slope(P("p") / B));

  std::vector<FirstOrderCheck> out;
  for (auto& [key, d] : derivs) {
    FirstOrderCheck c;
    c.component = key;
    c.derivative = d;
    c.expected = V.at(key);
    c.residual = d - c.expected;
    c.pass = is_identically_zero(c.residual);
    out.push_back(std::move(c));
  }
  return out;
}

double wave_number(double eta, double u0) {
  if (eta == 0.0) throw DomainError("eta must be nonzero");
  const double d = 1.0 - eta * eta * u0;
  if (!(d > 0.0)) {
    std::ostringstream os;
    os << "parameter domain: 1 - eta^2*u0 = " << d << " must be positive";
    throw DomainError(os.str());
  }
  return std::sqrt(d);
}

EnlargedState seed_state(double x, double t, double eta, double u0) {
  const double k = wave_number(eta, u0);
  if (u0 == 0.0) throw DomainError("u0 must be nonzero for the seed eigenfunctions");
  const double z = x + (3.0 - k * k) * t / (2.0 * eta * eta);
  const double e = std::exp(k * z / 2.0);
  EnlargedState s;
  s.x = x;
  s.t = t;
  s.u = s.m = u0;
  s.v = s.n = 1.0;
  s.phi1 = e;
  s.phi2 = (1.0 + k) / (eta * u0) * e;
  s.p = -(1.0 + k) * (1.0 + k) / (2.0 * k * u0) * e * e;
  return s;
}

EnlargedState finite_transform(const EnlargedState& s, double eta, double eps, double eps_div) {
  const double B = 1.0 - eps * s.p;
  const double A = B - eps * eta * s.phi1 * s.phi2;
  if (std::abs(B) <= eps_div) throw DomainError("denominator 1 - eps*p vanishes");
  if (std::abs(A) <= eps_div) throw DomainError("denominator 1 - eps*p - eps*eta*phi1*phi2 vanishes");
  const double R = A / B;
  if (!(R > 0.0)) throw DomainError("logarithm argument (1 - eps*p - eps*eta*phi1*phi2)/(1 - eps*p) is not positive");
  const double D = A * (2.0 * B - eps * eta * eta * (s.m * s.phi2 * s.phi2 - s.n * s.phi1 * s.phi1)) +
                   eps * eps * eta * eta * eta * s.n * s.phi1 * s.phi1 * s.phi1 * s.phi2;
  if (std::abs(D) <= eps_div) throw DomainError("momentum denominator vanishes");

  EnlargedState o;
  o.x = s.x + std::log(R);
  o.t = s.t;
  o.u = (s.u + s.ux) * R / 2.0 - (s.ux - s.u) / (2.0 * R) - eps * s.phi1 * s.phi1 / A;
  o.v = (s.v + s.vx) * R / 2.0 - (s.vx - s.v) / (2.0 * R) + eps * s.phi2 * s.phi2 / B;
  // Not part of the published transformation; obtained by integrating the u_x, v_x components of V.
  o.ux = (s.u + s.ux) * R / 2.0 + (s.ux - s.u) / (2.0 * R) + eps * s.phi1 * s.phi1 / A;
  o.vx = (s.v + s.vx) * R / 2.0 + (s.vx - s.v) / (2.0 * R) + eps * s.phi2 * s.phi2 / B;
  o.m = 2.0 * s.m * A * A / D;
  o.n = 2.0 * s.n * B * B / D;
  const double root = std::sqrt(A * B);
  o.phi1 = s.phi1 / root;
  o.phi2 = s.phi2 / root;
  o.p = s.p / B;
  return o;
}

std::array<double, 11> generator_numeric(const EnlargedState& s, double eta) {
  const double ff = s.phi1 * s.phi2;
  const double q = s.m * s.phi2 * s.phi2 - s.n * s.phi1 * s.phi1;
  return {-eta * ff,
          0.0,
          -(s.phi1 * s.phi1 + eta * ff * s.ux),
          s.phi2 * s.phi2 - eta * ff * s.vx,
          s.phi1 * s.phi1 - eta * s.u * ff,
          s.phi2 * s.phi2 - eta * s.v * ff,
          -eta * s.m * ff + 0.5 * eta * eta * s.m * q,
          eta * s.n * ff + 0.5 * eta * eta * s.n * q,
          s.phi1 * s.p + 0.5 * eta * s.phi1 * ff,
          s.phi2 * s.p + 0.5 * eta * ff * s.phi2,
          s.p * s.p};
}

namespace {

double theta_of(double k, double eta, double u0, double eps, double x, double t) {
  const double z = x + (3.0 - k * k) * t / (2.0 * eta * eta);
  const double arg = k * z / 2.0 + 0.5 * std::log(std::abs(eps) * (1.0 - k * k) / (2.0 * k * u0));
  return eps > 0 ? std::tanh(arg) : 1.0 / std::tanh(arg);
}

}  // namespace

double ExactSolution::theta(double x, double t) const { return theta_of(k, eta, u0, eps, x, t); }

double ExactSolution::x_tilde(double x, double t) const {
  return x + std::log(std::abs(1.0 - k)) - std::log(std::abs(1.0 + k * theta(x, t)));
}

double ExactSolution::u(double x, double t) const {
  const double th = theta(x, t);
  return (2.0 - k * k * (1.0 + th * th)) * u0 / (2.0 * (1.0 + k) * (1.0 + k * th));
}

double ExactSolution::v(double x, double t) const {
  const double th = theta(x, t);
  const double q = 1.0 + k * th;
  return (1.0 + k * (k + 2.0 * th) + q * q) / (2.0 * (1.0 - k) * q);
}

double ExactSolution::m(double x, double t) const {
  const double q = 1.0 + k * theta(x, t);
  return 2.0 * u0 * (1.0 - k) / (1.0 - k * k + q * q);
}

double ExactSolution::n(double x, double t) const {
  const double q = 1.0 + k * theta(x, t);
  return 2.0 * q * q / ((1.0 - k) * (1.0 - k * k + q * q));
}

double ExactSolution::min_denominator(double x, double t) const {
  const double q = 1.0 + k * theta(x, t);
  return std::min(std::abs(q), std::abs(1.0 - k * k + q * q));
}

ExactSolution exact_solution(double u0, double eta, double eps) {
  ExactSolution s;
  s.k = wave_number(eta, u0);
  if (eps == 0.0) throw DomainError("eps must be nonzero (eps = 0 returns the seed)");
  const double c = std::abs(eps) * (1.0 - s.k * s.k) / (2.0 * s.k * u0);
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw DomainError("logarithm argument |eps|*(1 - k^2)/(2*k*u0) must be positive");
  }
  s.eta = eta;
  s.u0 = u0;
  s.eps = eps;
  ParseOptions o;
  s.u_tilde = parse("(2 - kk^2*(1 + theta^2))*u0/(2*(1 + kk)*(1 + kk*theta))", o);
  s.v_tilde = parse("(1 + kk*(kk + 2*theta) + (1 + kk*theta)^2)/(2*(1 - kk)*(1 + kk*theta))", o);
  s.m_tilde = parse("2*u0*(1 - kk)/(1 - kk^2 + (1 + kk*theta)^2)", o);
  s.n_tilde = parse("2*(1 + kk*theta)^2/((1 - kk)*(1 - kk^2 + (1 + kk*theta)^2))", o);
  return s;
}

Expr hamiltonian_density() { return parse("1/4*(u^2*v1 + u1^2*v1 - 2*u*u1*v)*(v - v2)"); }

std::array<Expr, 2> check_bihamiltonian_d1() {
  const Expr h = hamiltonian_density();
  // delta/delta u = (1 - D_x^2) delta/delta m, so D_1 of the m, n gradients is (-E_v h, E_u h).
  return {-euler_operator(h, JetBase::v) - m_flux_in_jets(), euler_operator(h, JetBase::u) - n_flux_in_jets()};
}

}  // namespace pss::ch2
