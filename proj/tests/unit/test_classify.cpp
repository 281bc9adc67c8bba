#include <doctest.h>

#include "pss/classify/classify.hpp"

using namespace pss;

namespace {

Expr P(const char* s) { return parse(s); }

const CatalogEntry& entry(const char* name) {
  const auto* e = find_catalog_entry(name);
  REQUIRE(e != nullptr);
  return *e;
}

void check_builder_output(const Construction& c) {
  const auto report = check_structure_conditions(c.forms, c.system);
  CHECK_MESSAGE(report.pass(), report.to_table());
  if (c.lax) CHECK(is_zero(zero_curvature_residual(*c.lax, c.system)));
  const Algebra alg = c.forms.delta == 1 ? Algebra::sl2 : Algebra::su2;
  CHECK(is_zero(zero_curvature_residual(from_forms(c.forms, alg), c.system)));
}

// Linear data solving delta D_x M + h L1 - g N1 = 0 with M = u v1 - u1 v.
ThirdOrderData rotating_data(int delta) {
  ThirdOrderData d;
  d.g = P("u - u2");
  d.h = P("v - v2");
  d.A = P("1");
  d.L1 = Expr(static_cast<long>(delta)) * P("u");
  d.N1 = Expr(static_cast<long>(delta)) * P("v");
  d.M = P("u*v1 - u1*v");
  d.eta = P("eta");
  d.delta = delta;
  return d;
}

}  // namespace

TEST_CASE("catalog contents") {
  const auto& c = catalog();
  REQUIRE(c.size() == 5);
  CHECK(entry("mch-type").forms.delta == -1);
  CHECK(entry("song-qu-qiao").forms.delta == 1);
  CHECK(find_catalog_entry("unknown") == nullptr);
  // [(u - u2) Q]_x carries -Q u3.
  const Expr q = P("u1*v1 - u*v + u*v1 - u1*v");
  CHECK(diff(entry("song-qu-qiao").system.F, Coord::u(3)) == -q);
  CHECK(entry("ch2-product").system.order_u == 2);
  CHECK(entry("cubic-ch2").system.order_u == 3);
  for (const auto& e : c) {
    REQUIRE(e.lax.has_value());
    CHECK(e.construction_eta.identical(e.forms.f[1][0]));
  }
}

TEST_CASE("catalog entries satisfy the structure conditions") {
  for (const auto& e : catalog()) {
    const auto report = check_structure_conditions(e.forms, e.system);
    CHECK_MESSAGE(report.pass(), e.name, "\n", report.to_table());
    CHECK_MESSAGE(is_zero(zero_curvature_residual(*e.lax, e.system)), e.name);
    CHECK(is_linear_in_top_jets(e.system));
    for (int i = 0; i < 3; ++i) {
      const Expr& f = e.forms.f[i][0];
      CHECK(is_identically_zero(diff(f, Coord::u()) + diff(f, Coord::u(2))));
      CHECK(is_identically_zero(diff(f, Coord::v()) + diff(f, Coord::v(2))));
    }
    CHECK(check_structure_conditions(swap_transform(e.forms), e.system).pass());
  }
}

TEST_CASE("eta in omega2: round trip over the catalog") {
  for (const auto& e : catalog()) {
    const auto c = build_eta_in_omega2(surface_data(e));
    CHECK_MESSAGE(c.system.F.identical(e.system.F), e.name);
    CHECK_MESSAGE(c.system.G.identical(e.system.G), e.name);
    CHECK(c.N == e.forms.f[2][1]);
    check_builder_output(c);
  }
}

TEST_CASE("eta in omega2: hypotheses") {
  SurfaceData d;
  d.g = P("u - u2");
  d.h = d.g;
  d.L = P("u1");
  d.M = P("u");
  d.eta = P("eta");
  try {
    build_eta_in_omega2(d);
    FAIL("expected a violation");
  } catch (const HypothesisViolation& ex) {
    CHECK(ex.condition().find("W") == 0);
  }
  d.h = P("v - v2");
  d.L = P("u3");
  CHECK_THROWS_AS(build_eta_in_omega2(d), HypothesisViolation);
  d.L = P("u1");
  d.g = P("u - u1");
  CHECK_THROWS_AS(build_eta_in_omega2(d), HypothesisViolation);
  d.g = P("u - u2");
  d.eta = P("x");
  CHECK_THROWS_AS(build_eta_in_omega2(d), HypothesisViolation);
  d.eta = P("eta");
  d.M = P("eta*u1/(u - u2)");
  CHECK_THROWS_AS(build_eta_in_omega2(d), HypothesisViolation);
  // g M - eta L vanishes.
  d.M = P("eta*u1*v2");
  d.L = P("(u - u2)*u1*v2");
  d.M = P("eta*u1");
  d.L = P("(u - u2)*u1");
  CHECK_THROWS_AS(build_eta_in_omega2(d), HypothesisViolation);
}

TEST_CASE("eta in omega3") {
  const auto d3 = rotating_data(1);
  SurfaceData d{d3.g, d3.h, -d3.A * d3.g + d3.L1, d3.M, d3.eta, 1, 3, 3};
  const auto c = build_eta_in_omega3(d);
  CHECK(c.N == P("v - (v - v2)"));
  check_builder_output(c);

  SurfaceData flipped = d;
  flipped.delta = -1;
  const auto c2 = build_eta_in_omega3(flipped);
  // N = (delta D_x M + h L)/g recomputed by hand for delta = -1.
  CHECK(c2.N == P("(-(u*v2 - u2*v) + (v - v2)*u2)/(u - u2)"));
  CHECK_FALSE(c2.N == c.N);
  check_builder_output(c2);

  SurfaceData constant = d;
  constant.M = P("1");
  CHECK_THROWS_AS(build_eta_in_omega3(constant), HypothesisViolation);
}

TEST_CASE("third-order constructions reproduce catalog systems") {
  struct Case {
    const char* name;
    const char* A;
    const char* L1;
    const char* N1;
    bool x_free;
  };
  const Case cases[] = {
      {"song-qu-qiao", "-(u1*v1 - u*v + u*v1 - u1*v)",
       "1/(2*eta)*((u + u1)*exp((eta-1)*x) + (v - v1)*exp(-(eta-1)*x))",
       "-1/(2*eta)*((u + u1)*exp((eta-1)*x) - (v - v1)*exp(-(eta-1)*x))", false},
      {"cubic-ch2", "-1/2*(u*v - u1*v1)", "1/(2*eta)*((u - u1) - (v + v1))", "-1/(2*eta)*((u - u1) + (v + v1))",
       true},
      {"ch2-wronskian", "-1/2*(u*v1 - u1*v)", "-1/(2*eta)*((u - u1) - (v + v1))",
       "-1/(2*eta)*((u - u1) + (v + v1))", true},
      {"mch-type", "1/2*(u^2 + v^2 - u1^2 - v1^2) + u*v1 - u1*v", "v + u1", "-u + v1", true},
  };
  for (const auto& k : cases) {
    const auto& e = entry(k.name);
    ThirdOrderData d{e.forms.f[0][0], e.forms.f[2][0], P(k.A), P(k.L1), P(k.N1), e.forms.f[1][1], e.construction_eta,
                     e.forms.delta};
    CHECK(is_identically_zero(mixed_derivative_constraint(d)));
    const auto c = build_third_order_eta_in_omega2(d);
    CHECK_MESSAGE(c.system.F.identical(e.system.F), k.name);
    CHECK_MESSAGE(c.system.G.identical(e.system.G), k.name);
    CHECK(c.forms.f[0][1] == e.forms.f[0][1]);
    CHECK(c.forms.f[2][1] == e.forms.f[2][1]);
    check_builder_output(c);
    if (k.x_free) {
      const auto [F, G] = third_order_rhs_eta_in_omega2(d);
      CHECK_MESSAGE(F == e.system.F, k.name);
      CHECK_MESSAGE(G == e.system.G, k.name);
    }
  }
}

TEST_CASE("third order, eta in omega2: linear data") {
  ThirdOrderData d{P("u - u2"), P("v - v2"), P("1"), P("0"), P("0"), P("1"), P("eta"), 1};
  const auto c = build_third_order_eta_in_omega2(d);
  // Direct substitution: W = 1, only the A and (eta A + M)/(2W) terms survive.
  CHECK(c.system.F.identical(P("u3 - u1 - (eta + 1)*(v - v2)")));
  CHECK(c.system.G.identical(P("v3 - v1 - (eta + 1)*(u - u2)")));
  const auto [F, G] = third_order_rhs_eta_in_omega2(d);
  CHECK(F == c.system.F);
  CHECK(G == c.system.G);
  check_builder_output(c);
}

TEST_CASE("third order, eta in omega2: constraint violations") {
  ThirdOrderData d{P("u - u2"), P("v - v2"), P("1"), P("u1*v1"), P("0"), P("1"), P("eta"), 1};
  CHECK_FALSE(is_identically_zero(mixed_derivative_constraint(d)));
  try {
    build_third_order_eta_in_omega2(d);
    FAIL("expected a violation");
  } catch (const HypothesisViolation& ex) {
    CHECK(ex.condition().find("mixed-derivative") == 0);
    CHECK(ex.residual() == mixed_derivative_constraint(d));
  }
  // Mixed condition holds but the full constraint does not.
  ThirdOrderData e{P("u - u2"), P("v - v2"), P("1"), P("1"), P("0"), P("1"), P("eta"), 1};
  CHECK(is_identically_zero(mixed_derivative_constraint(e)));
  try {
    build_third_order_eta_in_omega2(e);
    FAIL("expected a violation");
  } catch (const HypothesisViolation& ex) {
    CHECK(ex.condition().find("compatibility") == 0);
  }
  ThirdOrderData f = e;
  f.L1 = P("0");
  f.g = P("(u - u2)*t");
  CHECK_THROWS_AS(build_third_order_eta_in_omega2(f), HypothesisViolation);
}

TEST_CASE("third order, eta in omega3") {
  for (int delta : {1, -1}) {
    const auto d = rotating_data(delta);
    const auto c = build_third_order_eta_in_omega3(d);
    check_builder_output(c);
    const auto [F, G] = third_order_rhs_eta_in_omega3(d);
    CHECK(F == c.system.F);
    CHECK(G == c.system.G);
    REQUIRE(c.lax.has_value());
    CHECK(c.lax->algebra == (delta == 1 ? Algebra::sl2 : Algebra::su2));
  }
  auto bad = rotating_data(1);
  bad.M = P("2");
  CHECK_THROWS_AS(build_third_order_eta_in_omega3(bad), HypothesisViolation);
  bad = rotating_data(1);
  bad.N1 = P("0");
  CHECK_THROWS_AS(build_third_order_eta_in_omega3(bad), HypothesisViolation);
}

TEST_CASE("printed matrix forms of the third-order constructions") {
  // Spherical case with f21 = eta: the dt part as printed omits i on N1 in the (1,2) slot.
  const auto& e = entry("mch-type");
  ThirdOrderData d{e.forms.f[0][0], e.forms.f[2][0], P("1/2*(u^2 + v^2 - u1^2 - v1^2) + u*v1 - u1*v"), P("v + u1"),
                   P("-u + v1"), e.forms.f[1][1], e.construction_eta, -1};
  const auto c = build_third_order_eta_in_omega2(d);
  ParseOptions o;
  o.names["g"] = d.g;
  o.names["h"] = d.h;
  o.names["A"] = d.A;
  o.names["L1"] = d.L1;
  o.names["N1"] = d.N1;
  o.names["M"] = d.M;
  // construction eta = 1
  const Mat2 X{{{parse("1/2*i", o), parse("1/2*(g + i*h)", o)}, {parse("1/2*(-g + i*h)", o), parse("-1/2*i", o)}}};
  const Mat2 T_fixed{{{parse("1/2*i*M", o), parse("1/2*(-A*(g + i*h) + L1 + i*N1)", o)},
                      {parse("1/2*(A*(g - i*h) - L1 + i*N1)", o), parse("-1/2*i*M", o)}}};
  Mat2 T_printed = T_fixed;
  T_printed[0][1] = parse("1/2*(-A*(g + i*h) + L1 + N1)", o);
  CHECK(equal(c.lax->X, X));
  CHECK(equal(c.lax->T, T_fixed));
  CHECK(equal(c.lax->X, e.lax->X));
  CHECK(equal(c.lax->T, e.lax->T));
  CHECK_FALSE(is_zero(zero_curvature_residual(MatrixForm{X, T_printed, Algebra::su2}, e.system)));

  // Pseudospherical case with f31 = eta.
  const auto r = rotating_data(1);
  const auto c3 = build_third_order_eta_in_omega3(r);
  ParseOptions q;
  q.names["g"] = r.g;
  q.names["h"] = r.h;
  q.names["A"] = r.A;
  q.names["L1"] = r.L1;
  q.names["N1"] = r.N1;
  q.names["M"] = r.M;
  const Mat2 X3{{{parse("1/2*h", q), parse("1/2*(g - eta)", q)}, {parse("1/2*(g + eta)", q), parse("-1/2*h", q)}}};
  const Mat2 T3{{{parse("1/2*(-A*h + N1)", q), parse("1/2*(-A*g + L1 - M)", q)},
                 {parse("1/2*(-A*g + L1 + M)", q), parse("1/2*(A*h - N1)", q)}}};
  CHECK(equal(c3.lax->X, X3));
  CHECK(equal(c3.lax->T, T3));
}

TEST_CASE("linearity in the top jets") {
  for (const auto& e : catalog()) CHECK(is_linear_in_top_jets(e.system));
  PdeSystem s;
  s.order_u = s.order_v = 2;
  s.F = P("u2^2");
  CHECK_FALSE(is_linear_in_top_jets(s));
  s.F = P("u*u1 + (v + x)*u2 + exp(x)*v2");
  s.G = P("u2*v1");
  CHECK(is_linear_in_top_jets(s));
  s.G = P("u2*v2");
  CHECK_FALSE(is_linear_in_top_jets(s));
}

TEST_CASE("reductions to single-component equations") {
  const Expr mch = total_dx(P("(u - u2)*(u^2 - u1^2)"), DerivationRules());
  {
    const auto [F, G] = reduce_system(entry("song-qu-qiao").system, P("-u"));
    CHECK(F == mch);
    CHECK(G == -mch);
  }
  {
    const auto [F, G] = reduce_system(entry("cubic-ch2").system, P("2*u"));
    CHECK(F == mch);
    CHECK(G == Expr(2) * mch);
  }
  {
    const auto [F, G] = reduce_system(entry("mch-type").system, P("u"));
    CHECK(F == P("-2*u1") - mch);
    CHECK(G == F);
  }
}
