#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pss/kernel/parse.hpp"

namespace pss {

class MissingRule : public std::runtime_error {
 public:
  MissingRule(const std::string& symbol, const std::string& what);
  const std::string& symbol() const { return symbol_; }

 private:
  std::string symbol_;
};

class IllFormedDependence : public std::runtime_error {
 public:
  IllFormedDependence(const std::string& symbol, const std::string& what);
  const std::string& symbol() const { return symbol_; }

 private:
  std::string symbol_;
};

enum class MomentumMode { alias, first_class };

class DerivationRules {
 public:
  DerivationRules() = default;
  DerivationRules(MomentumMode mode, std::map<Coord, Expr> x_rules, std::map<Coord, Expr> t_rules = {});

  MomentumMode mode() const { return mode_; }
  bool momentum_first_class() const { return mode_ == MomentumMode::first_class; }
  const std::map<Coord, Expr>& x_rules() const { return x_rules_; }
  const std::map<Coord, Expr>& t_rules() const { return t_rules_; }
  const Expr* x_rule(Coord c) const;
  const Expr* t_rule(Coord c) const;

  DerivationRules with_x_rule(Coord c, Expr image) const;
  DerivationRules with_t_rule(Coord c, Expr image) const;
  DerivationRules merged(const DerivationRules& other) const;

  ParseOptions parse_options() const;

 private:
  void validate() const;

  MomentumMode mode_ = MomentumMode::alias;
  std::map<Coord, Expr> x_rules_;
  std::map<Coord, Expr> t_rules_;
};

// u_t - u_{2,t} = F, v_t - v_{2,t} = G.
struct PdeSystem {
  int order_u = 2;
  int order_v = 2;
  Expr F;
  Expr G;
  std::optional<int> delta;
};

// Rewrites u_k, v_k with k >= 2 through u_k = u_{k-2} - m_{k-2}.
Expr close_momentum(const Expr& e);

Expr total_dx(const Expr& e, const DerivationRules& rules);
Expr total_dx_n(const Expr& e, int k, const DerivationRules& rules);
Expr total_dt_mod_system(const Expr& e, const PdeSystem& sys, const DerivationRules& rules);

// Throws IllFormedDependence unless e depends on u, v jets only through u - u2, v - v2.
void check_factored_dependence(const Expr& e);

struct RuleResidual {
  Coord symbol;
  Expr residual;
};
std::vector<RuleResidual> check_rule_compatibility(const DerivationRules& rules, const PdeSystem& sys);

// Variational derivative sum_k (-D_x)^k dL/d(w_k).
Expr euler_operator(const Expr& density, JetBase w, const DerivationRules& rules = {});

}  // namespace pss
