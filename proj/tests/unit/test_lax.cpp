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

bool structure_zero(const AssociatedForms& f, const PdeSystem& sys) {
  for (const auto& r : structure_residuals(f, sys))
    if (!is_identically_zero(r)) return false;
  return true;
}

}  // namespace

TEST_CASE("sl2 packing reproduces the printed x-part") {
  const auto& e = entry("cubic-ch2");
  const auto mf = from_forms(e.forms, Algebra::sl2);
  CHECK(mf.X[0][0].identical(Expr::rational(-1, 2)));
  CHECK(mf.X[0][1] == P("1/2*eta*(u - u2)"));
  CHECK(mf.X[1][0] == P("-1/2*eta*(v - v2)"));
  CHECK(equal(mf.X, e.lax->X));
  CHECK(equal(mf.T, e.lax->T));
  CHECK(is_identically_zero(trace(mf.X)));
  CHECK(is_identically_zero(trace(mf.T)));
}

TEST_CASE("zero forms pack to zero matrices") {
  const AssociatedForms zero;
  for (Algebra a : {Algebra::sl2, Algebra::su2, Algebra::su2_rotated}) {
    const auto mf = from_forms(zero, a);
    CHECK(is_zero(mf.X));
    CHECK(is_zero(mf.T));
  }
}

TEST_CASE("su2 packing reproduces the spherical example") {
  const auto& e = entry("mch-type");
  const auto mf = from_forms(e.forms, Algebra::su2);
  CHECK(equal(mf.X, e.lax->X));
  CHECK(equal(mf.T, e.lax->T));
  CHECK(mf.X[0][1] == P("1/2*(-(v - v2) + i*(u - u2))"));
}

TEST_CASE("printed linear problems have zero curvature") {
  for (const auto& e : catalog()) {
    const Mat2 r = zero_curvature_residual(*e.lax, e.system);
    CHECK_MESSAGE(is_zero(r), e.name, ": ", to_json(r).dump());
  }
}

TEST_CASE("negated flux leaves a residual proportional to F") {
  const auto& e = entry("cubic-ch2");
  PdeSystem bad = e.system;
  bad.F = -bad.F;
  const Mat2 r = zero_curvature_residual(*e.lax, bad);
  // X12 = eta (u - u2)/2 is the only entry that sees F.
  CHECK(r[0][1] == Expr(-1) * P("eta") * e.system.F);
  CHECK(is_identically_zero(r[1][0]));
  CHECK(is_identically_zero(r[0][0]));
  CHECK(is_identically_zero(trace(r)));
}

TEST_CASE("zero curvature matches the structure equations") {
  std::vector<std::pair<AssociatedForms, PdeSystem>> cases;
  for (const auto& e : catalog()) cases.emplace_back(e.forms, e.system);
  {
    auto f = entry("cubic-ch2").forms;
    f.f[1][1] += P("u");
    cases.emplace_back(f, entry("cubic-ch2").system);
  }
  {
    auto f = entry("song-qu-qiao").forms;
    f.f[0][1] += P("eta*x");
    cases.emplace_back(f, entry("song-qu-qiao").system);
  }
  {
    auto sys = entry("ch2-product").system;
    sys.G = sys.G + P("v1");
    cases.emplace_back(entry("ch2-product").forms, sys);
  }
  int negatives = 0;
  for (const auto& [f, sys] : cases) {
    const Algebra alg = f.delta == 1 ? Algebra::sl2 : Algebra::su2;
    const Mat2 r = zero_curvature_residual(from_forms(f, alg), sys);
    const bool zc = is_zero(r);
    CHECK(zc == structure_zero(f, sys));
    CHECK(is_identically_zero(trace(r)));
    if (!zc) ++negatives;
  }
  CHECK(negatives == 3);
}

TEST_CASE("gauge transformation") {
  const auto& e = entry("cubic-ch2");
  const auto mf = from_forms(e.forms, Algebra::sl2);
  const auto same = gauge_transform(mf, mat_identity());
  CHECK(identical(same.X, mf.X));
  CHECK(identical(same.T, mf.T));

  const auto rotated = gauge_transform(mf, standard_gauge());
  const auto target = from_forms(e.forms, Algebra::su2_rotated);
  CHECK(equal(rotated.X, target.X));
  CHECK(equal(rotated.T, target.T));
  CHECK(is_zero(zero_curvature_residual(rotated, e.system)));

  // The printed gauge matrix is -i times the standard one; det = -1.
  const Mat2 printed = P("-i") * standard_gauge();
  CHECK(det(printed) == Expr(-1));
  CHECK_THROWS_AS(gauge_transform(mf, printed), NonUnimodular);
  const Mat2 twice{{{Expr(2), Expr()}, {Expr(), Expr(1)}}};
  try {
    gauge_transform(mf, twice);
    FAIL("expected NonUnimodular");
  } catch (const NonUnimodular& ex) {
    CHECK(ex.residual().identical(Expr(1)));
  }
}

TEST_CASE("gauge covariance of the curvature") {
  const auto& e = entry("ch2-product");
  auto f = e.forms;
  f.f[2][1] += P("u*v");
  const auto mf = from_forms(f, Algebra::sl2);
  const Mat2 A{{{P("2"), P("eta")}, {P("1/eta"), P("1")}}};
  CHECK(det(A) == Expr(1));
  const Mat2 r0 = zero_curvature_residual(mf, e.system);
  REQUIRE_FALSE(is_zero(r0));
  const Mat2 r1 = zero_curvature_residual(gauge_transform(mf, A), e.system);
  CHECK(equal(r1, A * r0 * inverse(A)));

  const Mat2 S = standard_gauge();
  const Mat2 r2 = zero_curvature_residual(gauge_transform(mf, S), e.system);
  CHECK(equal(r2, S * r0 * inverse(S)));
}

TEST_CASE("x-dependent gauge") {
  const auto& e = entry("ch2-product");
  const auto mf = from_forms(e.forms, Algebra::sl2);
  const Mat2 A{{{P("exp(x)"), P("0")}, {P("t"), P("exp(-x)")}}};
  const auto g = gauge_transform(mf, A, e.system);
  CHECK(is_zero(zero_curvature_residual(g, e.system)));
  // (A_x A^-1)_11 = 1 and (A X A^-1)_11 = X11 - t exp(x) X12.
  CHECK(g.X[0][0] == Expr(1) + mf.X[0][0] - P("t*exp(x)") * mf.X[0][1]);
}

TEST_CASE("matrix JSON") {
  const auto j = to_json(*entry("ch2-product").lax);
  CHECK(j["algebra"] == "sl2");
  CHECK(j["X"][0][0] == "1/2");
  CHECK(j["X"].size() == 2);
  CHECK(j["T"][1].size() == 2);
}
