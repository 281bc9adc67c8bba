#include <doctest.h>

#include <cmath>

#include "pss/jet/jetcalc.hpp"

using namespace pss;

namespace {

ParseOptions first_class() {
  ParseOptions o;
  o.momentum_first_class = true;
  return o;
}

Expr P(const char* s) { return parse(s); }
Expr F(const char* s) { return parse(s, first_class()); }

// Cubic two-component system with m, n first-class.
DerivationRules ch2_rules() {
  const DerivationRules jets(MomentumMode::first_class, {});
  const Expr beta = F("u*v - u1*v1");
  const Expr mt = Expr::rational(1, 2) * total_dx(F("m") * beta, jets) - F("1/2*m*(u*v1 - u1*v)");
  const Expr nt = Expr::rational(1, 2) * total_dx(F("n") * beta, jets) + F("1/2*n*(u*v1 - u1*v)");
  const Expr alpha = F("1/(2*eta^2) + 1/4*(u*v - u1*v1 + u*v1 - u1*v)");
  std::map<Coord, Expr> x{{Coord::phi1(), F("-1/2*phi1 + 1/2*eta*m*phi2")},
                          {Coord::phi2(), F("-1/2*eta*n*phi1 + 1/2*phi2")}};
  std::map<Coord, Expr> t{
      {Coord::m(), mt},
      {Coord::n(), nt},
      {Coord::phi1(), -alpha * F("phi1") + (F("1/4*eta*m") * beta + F("(u - u1)/(2*eta)")) * F("phi2")},
      {Coord::phi2(), (F("-1/4*eta*n") * beta - F("(v + v1)/(2*eta)")) * F("phi1") + alpha * F("phi2")}};
  return DerivationRules(MomentumMode::first_class, x, t);
}

}  // namespace

TEST_CASE("total_dx basics") {
  const DerivationRules none;
  CHECK(total_dx(P("u"), none).identical(P("u1")));
  CHECK(total_dx(P("u*v1"), none).identical(P("u1*v1 + u*v2")));
  CHECK(total_dx(P("x^2*u + eta"), none).identical(P("2*x*u + x^2*u1")));
  CHECK(total_dx(P("exp((eta-1)*x)"), none).identical(P("(eta-1)*exp((eta-1)*x)")));
  CHECK(total_dx(P("t*u"), none).identical(P("t*u1")));
  CHECK(total_dx(P("1/u"), none).identical(P("-u1/u^2")));
  CHECK_THROWS_AS(total_dx(P("phi1"), none), MissingRule);
  CHECK_THROWS_AS(total_dx(P("u12"), none), MissingRule);
  try {
    total_dx(P("phi2*u"), none);
  } catch (const MissingRule& e) {
    CHECK(e.symbol() == "phi2");
  }
}

TEST_CASE("eigenfunction x-rule") {
  const auto rules = ch2_rules();
  CHECK(total_dx(F("phi1"), rules).identical(F("-1/2*phi1 + 1/2*eta*m*phi2")));
}

TEST_CASE("momentum closure") {
  CHECK(close_momentum(F("u2")).identical(F("u - m")));
  CHECK(close_momentum(F("u5")).identical(F("u1 - m1 - m3")));
  CHECK(close_momentum(F("v4 + u")).identical(F("v - n - n2 + u")));
  const DerivationRules jets(MomentumMode::first_class, {});
  CHECK(total_dx(F("u1"), jets).identical(F("u - m")));
}

TEST_CASE("rule validation") {
  CHECK_THROWS_AS(DerivationRules(MomentumMode::alias, {{Coord::phi1(), P("phi2")}}), MissingRule);
  CHECK_THROWS_AS(DerivationRules(MomentumMode::alias, {{Coord::u(), P("v")}}), std::invalid_argument);
  CHECK_NOTHROW(DerivationRules(MomentumMode::alias, {{Coord::phi1(), P("phi1*u")}}));
}

TEST_CASE("total_dt modulo a system") {
  PdeSystem sys;
  sys.F = P("u3*v + x");
  sys.G = P("v1");
  const DerivationRules none;
  CHECK(total_dt_mod_system(P("u - u2"), sys, none).identical(sys.F));
  CHECK(total_dt_mod_system(P("(u - u2)*(v - v2) + t*eta"), sys, none)
            .identical(P("(u3*v + x)*(v - v2) + (u - u2)*v1 + eta")));
  CHECK_THROWS_AS(total_dt_mod_system(P("u1"), sys, none), IllFormedDependence);
  CHECK_THROWS_AS(total_dt_mod_system(P("u"), sys, none), IllFormedDependence);
  CHECK_THROWS_AS(total_dt_mod_system(P("(u - u2)^2 + u2"), sys, none), IllFormedDependence);
}

TEST_CASE("eigenfunction t-rule in first-class mode") {
  const auto rules = ch2_rules();
  const PdeSystem sys;
  const Expr expected = F("-1/4*eta*n*(u*v - u1*v1)*phi1 - (v + v1)/(2*eta)*phi1") +
                        F("(1/(2*eta^2) + 1/4*(u*v - u1*v1 + u*v1 - u1*v))*phi2");
  CHECK(total_dt_mod_system(F("phi2"), sys, rules) == expected);
  CHECK_THROWS_AS(total_dt_mod_system(F("u*phi1"), sys, rules), IllFormedDependence);
}

TEST_CASE("linear problem is compatible on solutions") {
  const auto rules = ch2_rules();
  const PdeSystem sys;
  const auto res = check_rule_compatibility(rules, sys);
  REQUIRE(res.size() == 2);
  for (const auto& r : res) CHECK_MESSAGE(is_identically_zero(r.residual), r.symbol.name(), ": ", print(r.residual));

  const Expr bumped = *rules.t_rule(Coord::phi1()) + F("phi1");
  const auto broken = check_rule_compatibility(rules.with_t_rule(Coord::phi1(), bumped), sys);
  // Hand expansion: the extra term contributes -1/2*phi1 - D_x(phi1).
  CHECK(broken[0].residual.identical(F("-1/2*eta*m*phi2")));
  CHECK_FALSE(is_identically_zero(broken[0].residual));
}

TEST_CASE("D_x commutes with D_t on consistent rules") {
  const auto rules = ch2_rules();
  const PdeSystem sys;
  for (const char* s : {"phi1^2*m", "phi1*phi2*n1 + eta*m2", "m*n/(phi1 + 1)"}) {
    const Expr e = F(s);
    const Expr c = total_dx(total_dt_mod_system(e, sys, rules), rules) -
                   total_dt_mod_system(total_dx(e, rules), sys, rules);
    CHECK_MESSAGE(is_identically_zero(c), s);
  }
}

TEST_CASE("D_x is a derivation") {
  const DerivationRules none;
  const Expr a = P("u*v2 + exp(x)*u1");
  const Expr b = P("(v + eta)/(u1 + x)");
  CHECK(total_dx(a * b, none) == a * total_dx(b, none) + b * total_dx(a, none));
}

TEST_CASE("total_dx agrees with finite differences along a path") {
  // u(x) = sin x, v(x) = exp(x/3); jets are the exact derivatives.
  const Expr e = P("u*v1 + u2^2/(v + 2) + x*u1");
  const DerivationRules none;
  const Expr d = total_dx(e, none);
  auto point = [](double x) {
    NumericPoint pt;
    for (int k = 0; k <= 4; ++k) {
      const double s = (k % 4 == 0) ? std::sin(x) : (k % 4 == 1) ? std::cos(x) : (k % 4 == 2) ? -std::sin(x) : -std::cos(x);
      pt.values[Coord::u(k)] = s;
      pt.values[Coord::v(k)] = std::pow(1.0 / 3.0, k) * std::exp(x / 3.0);
    }
    pt.values[Coord::x()] = x;
    return pt;
  };
  const double x0 = 0.7;
  const double h = 1e-4;
  const double fd = (eval_numeric(e, point(x0 + h)) - eval_numeric(e, point(x0 - h))) / (2 * h);
  CHECK(eval_numeric(d, point(x0)) == doctest::Approx(fd).epsilon(1e-6));
}

TEST_CASE("Euler operator") {
  CHECK(euler_operator(P("u1^2"), JetBase::u).identical(P("-2*u2")));
  CHECK(euler_operator(P("u*v1"), JetBase::v).identical(P("-u1")));
  CHECK(is_identically_zero(euler_operator(P("u*u1"), JetBase::u)));
}
