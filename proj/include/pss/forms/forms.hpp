#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pss/jet/jetcalc.hpp"

namespace pss {

// a dx + b dt
struct OneForm {
  Expr a;
  Expr b;
};

// c dx^dt
struct TwoForm {
  Expr c;
};

struct AssociatedForms {
  // f[i][0] is the dx coefficient of omega_{i+1}, f[i][1] the dt coefficient.
  std::array<std::array<Expr, 2>, 3> f;
  int delta = 1;
  // Row whose dx coefficient is the constant eta of the construction, if any.
  std::optional<int> eta_role;

  OneForm omega(int i) const { return {f[i][0], f[i][1]}; }
};

TwoForm wedge(const OneForm& w, const OneForm& v);
TwoForm exterior_d_mod_system(const OneForm& w, const PdeSystem& sys, const DerivationRules& rules);

// (omega1, omega2, omega3) -> (omega2, omega1, -omega3); preserves the structure equations.
AssociatedForms swap_transform(const AssociatedForms& forms);

struct ConditionResult {
  std::string condition_id;
  std::string description;
  std::optional<Expr> residual;
  std::string residual_text;
  bool pass = false;
};

struct StructureReport {
  std::vector<ConditionResult> conditions;

  bool pass() const;
  const ConditionResult* find(const std::string& id) const;
  nlohmann::ordered_json to_json() const;
  std::string to_table() const;
};

// Condition ids:
//   factor[fi1]     f_i1,u + f_i1,u2 and f_i1,v + f_i1,v2 vanish
//   jets[fij]       f_i1 free of u_k, v_l (k, l != 0, 2); f_i2 free of u_m, v_n
//   nondegenerate   sum of squared Jacobian minors of (f11, f21, f31) is nonzero
//   structure[1..3] d(omega_i) minus the required wedge, reduced modulo the system
//   metric          f11 f22 - f12 f21 is nonzero
StructureReport check_structure_conditions(const AssociatedForms& forms, const PdeSystem& sys,
                                           const DerivationRules& rules = {});

// The three structure residuals alone (throws on ill-formed dependence).
std::array<Expr, 3> structure_residuals(const AssociatedForms& forms, const PdeSystem& sys,
                                        const DerivationRules& rules = {});

}  // namespace pss
