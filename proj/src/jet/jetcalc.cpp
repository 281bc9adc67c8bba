#include "pss/jet/jetcalc.hpp"

namespace pss {

MissingRule::MissingRule(const std::string& symbol, const std::string& what)
    : std::runtime_error("no rule for " + symbol + ": " + what), symbol_(symbol) {}

IllFormedDependence::IllFormedDependence(const std::string& symbol, const std::string& what)
    : std::runtime_error("ill-formed dependence on " + symbol + ": " + what), symbol_(symbol) {}

namespace {

Coord at(int k) { return Coord(static_cast<std::uint8_t>(k)); }

bool is_momentum(Coord c) { return c.is_jet() && (c.jet_base() == JetBase::m || c.jet_base() == JetBase::n); }

// D(e) given the images D(c) of every coordinate c that e depends on.
Expr apply_derivation(const Expr& e, const std::vector<std::pair<Coord, Expr>>& images) {
  auto along = [&](const Poly& p) {
    Poly poly_part;
    Expr rest;
    for (const auto& [c, img] : images) {
      Poly d = p.diff(c);
      if (d.is_zero()) continue;
      if (img.is_polynomial()) {
        poly_part += d * img.num().scaled(1 / img.den().constant_value());
      } else {
        rest += Expr(d) * img;
      }
    }
    return Expr(poly_part) + rest;
  };
  const Expr dn = along(e.num());
  if (e.is_polynomial()) return dn;
  const Expr dd = along(e.den());
  const Poly& n = e.num();
  const Poly& d = e.den();
  if (dn.is_polynomial() && dd.is_polynomial()) {
    return Expr::fraction(dn.num() * d - n * dd.num(), d * d);
  }
  return dn / Expr(d) - Expr(n) * dd / Expr(d * d);
}

}  // namespace

DerivationRules::DerivationRules(MomentumMode mode, std::map<Coord, Expr> x_rules, std::map<Coord, Expr> t_rules)
    : mode_(mode), x_rules_(std::move(x_rules)), t_rules_(std::move(t_rules)) {
  validate();
}

void DerivationRules::validate() const {
  auto check_key = [&](Coord c, bool t_side) {
    const CoordKind k = c.kind();
    if (k == CoordKind::auxiliary || c == Coord::z()) return;
    if (t_side && momentum_first_class() && (c == Coord::m() || c == Coord::n())) return;
    throw std::invalid_argument("a derivation rule cannot be attached to " + c.name());
  };
  auto check_image = [&](const Expr& img) {
    const VarSet vs = img.vars();
    for (int k = 0; k < kNumVars; ++k) {
      if (!vs.test(k)) continue;
      const Coord c = at(k);
      if (c.kind() == CoordKind::auxiliary && !x_rules_.count(c)) {
        throw MissingRule(c.name(), "rule images must be closed under D_x");
      }
      if (!momentum_first_class() && is_momentum(c)) {
        throw std::invalid_argument("momentum coordinate " + c.name() + " requires first-class mode");
      }
    }
  };
  for (const auto& [c, img] : x_rules_) {
    check_key(c, false);
    check_image(img);
  }
  for (const auto& [c, img] : t_rules_) {
    check_key(c, true);
    check_image(img);
  }
}

const Expr* DerivationRules::x_rule(Coord c) const {
  auto it = x_rules_.find(c);
  return it == x_rules_.end() ? nullptr : &it->second;
}

const Expr* DerivationRules::t_rule(Coord c) const {
  auto it = t_rules_.find(c);
  return it == t_rules_.end() ? nullptr : &it->second;
}

DerivationRules DerivationRules::with_x_rule(Coord c, Expr image) const {
  auto x = x_rules_;
  x[c] = std::move(image);
  return DerivationRules(mode_, std::move(x), t_rules_);
}

DerivationRules DerivationRules::with_t_rule(Coord c, Expr image) const {
  auto t = t_rules_;
  t[c] = std::move(image);
  return DerivationRules(mode_, x_rules_, std::move(t));
}

DerivationRules DerivationRules::merged(const DerivationRules& other) const {
  auto x = x_rules_;
  auto t = t_rules_;
  for (const auto& [c, e] : other.x_rules_) x[c] = e;
  for (const auto& [c, e] : other.t_rules_) t[c] = e;
  const MomentumMode mode =
      (momentum_first_class() || other.momentum_first_class()) ? MomentumMode::first_class : MomentumMode::alias;
  return DerivationRules(mode, std::move(x), std::move(t));
}

ParseOptions DerivationRules::parse_options() const {
  ParseOptions o;
  o.momentum_first_class = momentum_first_class();
  return o;
}

Expr close_momentum(const Expr& e) {
  const VarSet vs = e.vars();
  std::map<Coord, Poly> bindings;
  for (JetBase b : {JetBase::u, JetBase::v}) {
    const JetBase mb = b == JetBase::u ? JetBase::m : JetBase::n;
    for (int k = 2; k <= kMaxJetOrder; ++k) {
      const Coord c = Coord::jet(b, k);
      if (!vs.test(c.id())) continue;
      Poly img = Poly::var(Coord::jet(b, k % 2));
      for (int j = k % 2; j < k; j += 2) img -= Poly::var(Coord::jet(mb, j));
      bindings.emplace(c, std::move(img));
    }
  }
  if (bindings.empty()) return e;
  return Expr::fraction(substitute_poly(e.num(), bindings), substitute_poly(e.den(), bindings));
}

Expr total_dx(const Expr& e, const DerivationRules& rules) {
  const VarSet vs = e.vars();
  std::vector<std::pair<Coord, Expr>> images;
  for (int k = 0; k < kNumVars; ++k) {
    if (!vs.test(k)) continue;
    const Coord c = at(k);
    if (const Expr* r = rules.x_rule(c)) {
      images.emplace_back(c, *r);
      continue;
    }
    switch (c.kind()) {
      case CoordKind::independent:
        if (c == Coord::x()) {
          images.emplace_back(c, Expr(1));
        } else if (c == Coord::z()) {
          throw MissingRule(c.name(), "D_x image not supplied");
        }
        break;
      case CoordKind::jet: {
        auto next = c.shifted(1);
        if (!next) throw MissingRule(c.name(), "jet order would exceed " + std::to_string(kMaxJetOrder));
        images.emplace_back(c, Expr::coord(*next));
        break;
      }
      case CoordKind::auxiliary: throw MissingRule(c.name(), "D_x image not supplied");
      case CoordKind::parameter: break;
      case CoordKind::scratch: throw std::logic_error("scratch coordinate in expression");
    }
  }
  Expr out = apply_derivation(e, images);
  return rules.momentum_first_class() ? close_momentum(out) : out;
}

Expr total_dx_n(const Expr& e, int k, const DerivationRules& rules) {
  Expr out = e;
  for (int i = 0; i < k; ++i) out = total_dx(out, rules);
  return out;
}

void check_factored_dependence(const Expr& e) {
  const VarSet vs = e.vars();
  for (JetBase b : {JetBase::u, JetBase::v}) {
    for (int k = 0; k <= kMaxJetOrder; ++k) {
      const Coord c = Coord::jet(b, k);
      if (!vs.test(c.id())) continue;
      if (k != 0 && k != 2) throw IllFormedDependence(c.name(), "its t-derivative is not locally expressible");
    }
    const Coord c0 = Coord::jet(b, 0);
    const Coord c2 = Coord::jet(b, 2);
    if (!vs.test(c0.id()) && !vs.test(c2.id())) continue;
    if (!is_identically_zero(diff(e, c0) + diff(e, c2))) {
      throw IllFormedDependence(c0.name(), "dependence does not factor through " + c0.name() + " - " + c2.name());
    }
  }
}

Expr total_dt_mod_system(const Expr& e, const PdeSystem& sys, const DerivationRules& rules) {
  const VarSet vs = e.vars();
  std::vector<std::pair<Coord, Expr>> images;
  bool has_uv = false;
  for (int k = 0; k < kNumVars; ++k) {
    if (!vs.test(k)) continue;
    const Coord c = at(k);
    if (c.is_jet() && !is_momentum(c)) {
      has_uv = true;
      continue;
    }
    if (const Expr* r = rules.t_rule(c)) {
      images.emplace_back(c, *r);
      continue;
    }
    switch (c.kind()) {
      case CoordKind::independent:
        if (c == Coord::t()) {
          images.emplace_back(c, Expr(1));
        } else if (c == Coord::z()) {
          throw MissingRule(c.name(), "D_t image not supplied");
        }
        break;
      case CoordKind::jet: {
        const Coord base = Coord::jet(c.jet_base(), 0);
        const Expr* r = rules.t_rule(base);
        if (!r) throw IllFormedDependence(c.name(), "no evolution rule for " + base.name());
        images.emplace_back(c, total_dx_n(*r, c.order(), rules));
        break;
      }
      case CoordKind::auxiliary: throw MissingRule(c.name(), "D_t image not supplied");
      case CoordKind::parameter: break;
      case CoordKind::scratch: throw std::logic_error("scratch coordinate in expression");
    }
  }
  if (has_uv) {
    if (rules.momentum_first_class()) {
      for (int k = 0; k < kNumVars; ++k) {
        const Coord c = at(k);
        if (vs.test(k) && c.is_jet() && !is_momentum(c)) {
          throw IllFormedDependence(c.name(), "u, v jets have no local t-derivative when m, n are first-class");
        }
      }
    }
    check_factored_dependence(e);
    if (vs.test(Coord::u().id()) || vs.test(Coord::u(2).id())) images.emplace_back(Coord::u(), sys.F);
    if (vs.test(Coord::v().id()) || vs.test(Coord::v(2).id())) images.emplace_back(Coord::v(), sys.G);
  }
  Expr out = apply_derivation(e, images);
  return rules.momentum_first_class() ? close_momentum(out) : out;
}

std::vector<RuleResidual> check_rule_compatibility(const DerivationRules& rules, const PdeSystem& sys) {
  std::vector<RuleResidual> out;
  for (const auto& [c, xr] : rules.x_rules()) {
    const Expr* tr = rules.t_rule(c);
    if (!tr) throw MissingRule(c.name(), "compatibility needs both D_x and D_t images");
    out.push_back({c, total_dt_mod_system(xr, sys, rules) - total_dx(*tr, rules)});
  }
  return out;
}

Expr euler_operator(const Expr& density, JetBase w, const DerivationRules& rules) {
  Expr out;
  for (int k = kMaxJetOrder; k >= 0; --k) {
    const Coord c = Coord::jet(w, k);
    if (!density.depends_on(c)) continue;
    Expr term = total_dx_n(diff(density, c), k, rules);
    out += (k % 2 == 0) ? term : -term;
  }
  return out;
}

}  // namespace pss
