#include "pss/classify/classify.hpp"

namespace pss {

namespace {

struct Source {
  const char* name;
  const char* title;
  std::vector<std::pair<const char*, const char*>> names;
  // Flux terms: F = D_x(Fx) + F0, G = D_x(Gx) + G0.
  const char* Fx;
  const char* F0;
  const char* Gx;
  const char* G0;
  std::array<const char*, 6> f;
  int delta;
  std::array<const char*, 4> X;
  std::array<const char*, 4> T;
  Algebra algebra;
  const char* construction_eta;
};

const std::vector<Source>& sources() {
  static const std::vector<Source> s = {
      {"song-qu-qiao",
       "Song-Qu-Qiao system",
       {{"E", "exp((eta - 1)*x)"}, {"Ei", "exp(-(eta - 1)*x)"}, {"Q", "u1*v1 - u*v + u*v1 - u1*v"}},
       "(u - u2)*Q",
       "0",
       "(v - v2)*Q",
       "0",
       {"eta*((u - u2)*E + (v - v2)*Ei)",
        "eta*Q*((u - u2)*E + (v - v2)*Ei) + 1/(2*eta)*((u + u1)*E + (v - v1)*Ei)", "eta", "1/(2*eta^2) + Q",
        "-eta*((u - u2)*E - (v - v2)*Ei)",
        "-eta*Q*((u - u2)*E - (v - v2)*Ei) - 1/(2*eta)*((u + u1)*E - (v - v1)*Ei)"},
       1,
       {"1/2*eta", "1/2*2*eta*(u - u2)*E", "1/2*2*eta*(v - v2)*Ei", "-1/2*eta"},
       {"1/2*(1/(2*eta^2) + Q)", "1/2*(2*eta*Q*(u - u2) + 1/eta*(u + u1))*E",
        "1/2*(2*eta*Q*(v - v2) + 1/eta*(v - v1))*Ei", "1/2*(-1/(2*eta^2) - Q)"},
       Algebra::sl2,
       "eta"},
      {"cubic-ch2",
       "two-component Camassa-Holm system with cubic nonlinearity",
       {{"B", "u*v - u1*v1"}, {"A", "u*v1 - u1*v"}},
       "1/2*(u - u2)*B",
       "-1/2*(u - u2)*A",
       "1/2*(v - v2)*B",
       "1/2*(v - v2)*A",
       {"1/2*eta*((u - u2) - (v - v2))",
        "1/4*eta*B*((u - u2) - (v - v2)) + 1/(2*eta)*((u - u1) - (v + v1))", "-1",
        "-1/eta^2 - 1/2*(B + A)", "-1/2*eta*((u - u2) + (v - v2))",
        "-1/4*eta*B*((u - u2) + (v - v2)) - 1/(2*eta)*((u - u1) + (v + v1))"},
       1,
       {"-1/2", "1/2*eta*(u - u2)", "-1/2*eta*(v - v2)", "1/2"},
       {"1/2*(-1/eta^2 - 1/2*(B + A))", "1/2*(1/2*eta*B*(u - u2) + 1/eta*(u - u1))",
        "1/2*(-1/2*eta*B*(v - v2) - 1/eta*(v + v1))", "1/2*(1/eta^2 + 1/2*(B + A))"},
       Algebra::sl2,
       "-1"},
      {"ch2-product",
       "two-component system with product flux",
       {{"P", "(u - u1)*(v + v1)"}},
       "0",
       "-1/2*(u - u2)*P",
       "0",
       "1/2*(v - v2)*P",
       {"1/2*eta*((v - v2) - (u - u2))", "1/(2*eta)*((v + v1) - (u - u1))", "1", "1/eta^2 + 1/2*P",
        "-1/2*eta*((u - u2) + (v - v2))", "-1/(2*eta)*((u - u1) + (v + v1))"},
       1,
       {"1/2", "1/2*eta*(v - v2)", "-1/2*eta*(u - u2)", "-1/2"},
       {"1/2*(1/eta^2 + 1/2*P)", "1/2*1/eta*(v + v1)", "-1/2*1/eta*(u - u1)", "1/2*(-1/eta^2 - 1/2*P)"},
       Algebra::sl2,
       "1"},
      {"mch-type",
       "modified Camassa-Holm type system",
       {{"R", "-1/2*(u^2 + v^2 - u1^2 - v1^2) - u*v1 + u1*v"},
        {"S", "1/2*(u^2 + v^2 - u1^2 - v1^2) + (u*v1 - u1*v)"}},
       "-S*(u - u2)",
       "-2*u1",
       "-S*(v - v2)",
       "-2*v1",
       {"-(v - v2)", "-R*(v - v2) + v + u1", "1", "R - 1", "u - u2", "R*(u - u2) - u + v1"},
       -1,
       {"1/2*i", "1/2*(-n + i*m)", "1/2*(n + i*m)", "-1/2*i"},
       {"1/2*i*(R - 1)", "1/2*(-R*(n - i*m) + v + u1 + i*(v1 - u))", "1/2*(R*(n + i*m) - v - u1 + i*(v1 - u))",
        "-1/2*i*(R - 1)"},
       Algebra::su2,
       "1"},
      {"ch2-wronskian",
       "two-component system with Wronskian flux",
       {{"A", "u*v1 - u1*v"}, {"B", "u*v - u1*v1"}},
       "1/2*(u - u2)*A",
       "-1/2*(u - u2)*B",
       "1/2*(v - v2)*A",
       "1/2*(v - v2)*B",
       {"-1/2*eta*((u - u2) - (v - v2))",
        "-1/4*eta*A*((u - u2) - (v - v2)) - 1/(2*eta)*((u - u1) - (v + v1))", "1",
        "1/eta^2 + 1/2*(u - u1)*(v + v1)", "-1/2*eta*((u - u2) + (v - v2))",
        "-1/4*eta*A*((u - u2) + (v - v2)) - 1/(2*eta)*((u - u1) + (v + v1))"},
       1,
       {"1/2", "1/2*eta*(v - v2)", "-1/2*eta*(u - u2)", "-1/2"},
       {"1/2*(1/eta^2 + 1/2*(u - u1)*(v + v1))", "1/2*(1/2*eta*A*(v - v2) + 1/eta*(v + v1))",
        "1/2*(-1/2*eta*A*(u - u2) - 1/eta*(u - u1))", "1/2*(-1/eta^2 - 1/2*(u - u1)*(v + v1))"},
       Algebra::sl2,
       "1"},
  };
  return s;
}

CatalogEntry materialize(const Source& src) {
  ParseOptions o;
  for (const auto& [k, v] : src.names) o.names[k] = parse(v, o);
  auto P = [&](const char* s) { return parse(s, o); };
  const DerivationRules none;
  CatalogEntry e;
  e.name = src.name;
  e.title = src.title;
  e.system.F = total_dx(P(src.Fx), none) + P(src.F0);
  e.system.G = total_dx(P(src.Gx), none) + P(src.G0);
  std::tie(e.system.order_u, e.system.order_v) = system_orders(e.system.F, e.system.G);
  e.system.delta = src.delta;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 2; ++j) e.forms.f[i][j] = P(src.f[2 * i + j]);
  e.forms.delta = src.delta;
  e.forms.eta_role = 1;
  MatrixForm mf;
  mf.algebra = src.algebra;
  for (int k = 0; k < 4; ++k) {
    mf.X[k / 2][k % 2] = P(src.X[k]);
    mf.T[k / 2][k % 2] = P(src.T[k]);
  }
  e.lax = mf;
  e.construction_eta = P(src.construction_eta);
  return e;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> out;
    for (const auto& s : sources()) out.push_back(materialize(s));
    return out;
  }();
  return entries;
}

const CatalogEntry* find_catalog_entry(const std::string& name) {
  for (const auto& e : catalog())
    if (e.name == name) return &e;
  return nullptr;
}

SurfaceData surface_data(const CatalogEntry& entry) {
  const auto& f = entry.forms.f;
  return {f[0][0], f[2][0], f[0][1], f[1][1], entry.construction_eta, entry.forms.delta, entry.system.order_u,
          entry.system.order_v};
}

}  // namespace pss
