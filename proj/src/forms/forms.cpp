#include "pss/forms/forms.hpp"

#include <iomanip>
#include <sstream>

namespace pss {

TwoForm wedge(const OneForm& w, const OneForm& v) { return {w.a * v.b - w.b * v.a}; }

TwoForm exterior_d_mod_system(const OneForm& w, const PdeSystem& sys, const DerivationRules& rules) {
  return {total_dx(w.b, rules) - total_dt_mod_system(w.a, sys, rules)};
}

AssociatedForms swap_transform(const AssociatedForms& forms) {
  AssociatedForms out = forms;
  out.f[0] = forms.f[1];
  out.f[1] = forms.f[0];
  out.f[2] = {-forms.f[2][0], -forms.f[2][1]};
  if (forms.eta_role && *forms.eta_role < 2) out.eta_role = 1 - *forms.eta_role;
  return out;
}

std::array<Expr, 3> structure_residuals(const AssociatedForms& forms, const PdeSystem& sys,
                                        const DerivationRules& rules) {
  const OneForm w1 = forms.omega(0);
  const OneForm w2 = forms.omega(1);
  const OneForm w3 = forms.omega(2);
  const Expr delta(static_cast<long>(forms.delta));
  return {exterior_d_mod_system(w1, sys, rules).c - wedge(w3, w2).c,
          exterior_d_mod_system(w2, sys, rules).c - wedge(w1, w3).c,
          exterior_d_mod_system(w3, sys, rules).c - delta * wedge(w1, w2).c};
}

namespace {

std::string fname(int i, int j) { return "f" + std::to_string(i + 1) + std::to_string(j + 1); }

ConditionResult zero_condition(std::string id, std::string description, const Expr& residual) {
  ConditionResult r;
  r.condition_id = std::move(id);
  r.description = std::move(description);
  r.residual = residual;
  r.residual_text = print(residual);
  r.pass = is_identically_zero(residual);
  return r;
}

ConditionResult nonzero_condition(std::string id, std::string description, const Expr& value) {
  ConditionResult r = zero_condition(std::move(id), std::move(description), value);
  r.pass = !r.pass;
  return r;
}

}  // namespace

StructureReport check_structure_conditions(const AssociatedForms& forms, const PdeSystem& sys,
                                           const DerivationRules& rules) {
  StructureReport report;
  bool gate = true;

  for (int i = 0; i < 3; ++i) {
    const Expr& f = forms.f[i][0];
    const Expr ru = diff(f, Coord::u()) + diff(f, Coord::u(2));
    const Expr rv = diff(f, Coord::v()) + diff(f, Coord::v(2));
    ConditionResult r;
    r.condition_id = "factor[" + fname(i, 0) + "]";
    r.description = fname(i, 0) + " depends on u, u2, v, v2 only through u - u2 and v - v2";
    r.pass = is_identically_zero(ru) && is_identically_zero(rv);
    r.residual = r.pass ? Expr() : (is_identically_zero(ru) ? rv : ru);
    r.residual_text = print(*r.residual);
    gate = gate && r.pass;
    report.conditions.push_back(std::move(r));
  }

  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 2; ++j) {
      const Expr& f = forms.f[i][j];
      std::vector<std::string> offending;
      Expr first;
      bool found = false;
      for (JetBase b : {JetBase::u, JetBase::v}) {
        const int top = b == JetBase::u ? sys.order_u : sys.order_v;
        for (int k = 0; k <= kMaxJetOrder; ++k) {
          bool forbidden = false;
          if (j == 0) {
            forbidden = k != 0 && k != 2;
          } else {
            forbidden = k >= top;
          }
          if (j == 0 && k > top) forbidden = true;
          if (!forbidden) continue;
          const Coord c = Coord::jet(b, k);
          if (!f.depends_on(c)) continue;
          offending.push_back(c.name());
          if (!found) {
            first = diff(f, c);
            found = true;
          }
        }
      }
      ConditionResult r;
      r.condition_id = "jets[" + fname(i, j) + "]";
      r.description = j == 0 ? fname(i, j) + " is free of u_k, v_l for k, l not in {0, 2}"
                             : fname(i, j) + " is free of u_m, v_n and higher jets";
      r.pass = offending.empty();
      r.residual = first;
      if (r.pass) {
        r.residual_text = "0";
      } else {
        std::string list;
        for (const auto& s : offending) list += (list.empty() ? "" : ", ") + s;
        r.residual_text = "depends on " + list + "; d/d" + offending.front() + " = " + print(first);
      }
      gate = gate && r.pass;
      report.conditions.push_back(std::move(r));
    }
  }

  {
    auto minor = [&](int a, int b) {
      return diff(forms.f[a][0], Coord::u()) * diff(forms.f[b][0], Coord::v()) -
             diff(forms.f[a][0], Coord::v()) * diff(forms.f[b][0], Coord::u());
    };
    const Expr m12 = minor(0, 1);
    const Expr m23 = minor(1, 2);
    const Expr m13 = minor(0, 2);
    report.conditions.push_back(nonzero_condition(
        "nondegenerate", "sum of squared Jacobian minors of (f11, f21, f31) in (u, v) is not identically zero",
        m12 * m12 + m23 * m23 + m13 * m13));
  }

  static const char* kStructure[3] = {"d(omega1) = omega3 ^ omega2", "d(omega2) = omega1 ^ omega3",
                                      "d(omega3) = delta omega1 ^ omega2"};
  if (gate) {
    try {
      const auto res = structure_residuals(forms, sys, rules);
      for (int k = 0; k < 3; ++k) {
        report.conditions.push_back(
            zero_condition("structure[" + std::to_string(k + 1) + "]", kStructure[k], res[k]));
      }
    } catch (const std::exception& e) {
      for (int k = 0; k < 3; ++k) {
        ConditionResult r;
        r.condition_id = "structure[" + std::to_string(k + 1) + "]";
        r.description = kStructure[k];
        r.residual_text = std::string("not evaluated: ") + e.what();
        report.conditions.push_back(std::move(r));
      }
    }
  } else {
    for (int k = 0; k < 3; ++k) {
      ConditionResult r;
      r.condition_id = "structure[" + std::to_string(k + 1) + "]";
      r.description = kStructure[k];
      r.residual_text = "not evaluated: dependence conditions failed";
      report.conditions.push_back(std::move(r));
    }
  }

  report.conditions.push_back(nonzero_condition("metric", "f11 f22 - f12 f21 is not identically zero",
                                                forms.f[0][0] * forms.f[1][1] - forms.f[0][1] * forms.f[1][0]));
  return report;
}

bool StructureReport::pass() const {
  for (const auto& c : conditions) {
    if (!c.pass) return false;
  }
  return !conditions.empty();
}

const ConditionResult* StructureReport::find(const std::string& id) const {
  for (const auto& c : conditions) {
    if (c.condition_id == id) return &c;
  }
  return nullptr;
}

nlohmann::ordered_json StructureReport::to_json() const {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& c : conditions) {
    out.push_back({{"condition_id", c.condition_id},
                   {"description", c.description},
                   {"residual_text", c.residual_text},
                   {"verdict", c.pass ? "pass" : "fail"}});
  }
  return out;
}

std::string StructureReport::to_table() const {
  std::ostringstream os;
  os << std::left << std::setw(16) << "condition" << std::setw(8) << "verdict" << "residual\n";
  for (const auto& c : conditions) {
    std::string res = c.residual_text;
    if (res.size() > 72) res = res.substr(0, 69) + "...";
    os << std::left << std::setw(16) << c.condition_id << std::setw(8) << (c.pass ? "pass" : "FAIL") << res << "\n";
  }
  os << "overall: " << (pass() ? "pass" : "FAIL") << "\n";
  return os.str();
}

}  // namespace pss
