#include "pss/kernel/expr.hpp"

#include <cmath>
#include <sstream>

namespace pss {

namespace {

// Splits p = a + b*w for a unit slot w with w^2 reducing to a constant.
std::pair<Poly, Poly> split_unit(const Poly& p, int w) {
  auto c = p.univariate(w);
  if (c.size() == 1) return {c[0], Poly()};
  return {c[0], c[1]};
}

Poly exp_inverse_unit(const Term& t) {
  Term inv;
  inv.coef = 1 / t.coef;
  for (const auto& e : t.mono.exps) {
    inv.mono.exps.push_back({e.base, std::make_shared<const Poly>(-*e.rate)});
  }
  return Poly::from_terms({inv});
}

}  // namespace

Expr Expr::rational(long num, long den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return Expr(q);
}

Expr Expr::fraction(Poly num, Poly den) {
  if (den.is_zero()) throw DivisionByZero("denominator normalizes to zero");
  Expr r;
  if (num.is_zero()) return r;
  for (int w : {slot::imag, slot::sqrt2}) {
    if (den.degree(w) == 0) continue;
    auto [a, b] = split_unit(den, w);
    const Poly conj = a - b * Poly::var(Coord(static_cast<std::uint8_t>(w)));
    num *= conj;
    den *= conj;
    if (den.is_zero()) throw DivisionByZero("denominator normalizes to zero");
  }
  if (den.is_constant()) {
    r.num_ = num.scaled(1 / den.constant_value());
    return r;
  }
  const Poly g = gcd(num, den);
  if (!g.is_constant()) {
    num = exact_div(num, g);
    den = exact_div(den, g);
  }
  if (den.is_constant()) {
    r.num_ = num.scaled(1 / den.constant_value());
    return r;
  }
  const auto& lead_pw = den.leading().mono.pw;
  Poly best_unit;
  Poly best_den;
  for (const auto& t : den.terms()) {
    if (t.mono.pw != lead_pw) break;
    Poly unit = exp_inverse_unit(t);
    Poly candidate = den * unit;
    if (best_den.is_zero() || compare(candidate, best_den) < 0) {
      best_den = std::move(candidate);
      best_unit = std::move(unit);
    }
  }
  r.num_ = num * best_unit;
  r.den_ = std::move(best_den);
  return r;
}

mpq_class Expr::constant_value() const {
  if (!is_constant()) throw std::logic_error("expression is not constant");
  return num_.constant_value() / den_.constant_value();
}

Expr Expr::operator-() const {
  Expr r = *this;
  r.num_ = -r.num_;
  return r;
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.is_polynomial() && b.is_polynomial()) return Expr(a.num_ + b.num_);
  if (a.den_ == b.den_) return Expr::fraction(a.num_ + b.num_, a.den_);
  if (b.is_polynomial()) return Expr::fraction(a.num_ + b.num_ * a.den_, a.den_);
  if (a.is_polynomial()) return Expr::fraction(a.num_ * b.den_ + b.num_, b.den_);
  return Expr::fraction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return Expr();
  if (a.is_polynomial() && b.is_polynomial()) return Expr(a.num_ * b.num_);
  return Expr::fraction(a.num_ * b.num_, a.den_ * b.den_);
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_zero()) throw DivisionByZero("division by an expression that normalizes to zero");
  return Expr::fraction(a.num_ * b.den_, a.den_ * b.num_);
}

Expr Expr::pow(int e) const {
  if (e < 0) return Expr(1) / pow(-e);
  const auto u = static_cast<unsigned>(e);
  if (is_polynomial()) return Expr(num_.pow(u));
  return fraction(num_.pow(u), den_.pow(u));
}

bool operator==(const Expr& a, const Expr& b) { return a.identical(b) || (a - b).is_zero(); }

NearZeroDenominator::NearZeroDenominator(double value)
    : std::domain_error([value] {
        std::ostringstream os;
        os.precision(17);
        os << "denominator evaluates to " << value;
        return os.str();
      }()),
      value_(value) {}

Expr diff(const Expr& e, Coord c) {
  if (!e.depends_on(c)) return Expr();
  if (e.is_polynomial()) return Expr(e.num().diff(c).scaled(1 / e.den().constant_value()));
  const Poly& n = e.num();
  const Poly& d = e.den();
  return Expr::fraction(n.diff(c) * d - n * d.diff(c), d * d);
}

namespace {

void check_acyclic(const VarSet& bound, const VarSet& image_vars) {
  const VarSet clash = bound & image_vars;
  if (clash.none()) return;
  for (int k = 0; k < kNumVars; ++k) {
    if (clash.test(k)) {
      throw CyclicBinding("binding image mentions bound coordinate " + Coord(static_cast<std::uint8_t>(k)).name());
    }
  }
}

Poly substitute_exp_factor(const ExpFactor& f, const std::map<Coord, Poly>& bindings) {
  Poly rate = substitute_poly(*f.rate, bindings);
  Coord base(f.base);
  auto it = bindings.find(base);
  if (it == bindings.end()) return Poly::exp_atom(rate, base);
  const Poly& img = it->second;
  if (img.is_zero()) return Poly(1);
  if (img.size() != 1 || img.has_exps()) {
    throw std::domain_error("exponential base " + base.name() + " must map to a parameter multiple of one coordinate");
  }
  const Term& t = img.leading();
  int found = -1;
  Term scale;
  scale.coef = t.coef;
  for (int k = 0; k < kNumVars; ++k) {
    if (t.mono.pw[k] == 0) continue;
    if (k >= slot::eta && k <= slot::theta) {
      scale.mono.pw[k] = t.mono.pw[k];
    } else if (found < 0 && t.mono.pw[k] == 1) {
      found = k;
    } else {
      throw std::domain_error("exponential base " + base.name() + " must map to a parameter multiple of one coordinate");
    }
  }
  if (found < 0) {
    throw std::domain_error("exponential base " + base.name() + " maps to a constant; exp of constants is not representable");
  }
  return Poly::exp_atom(rate.times_term(scale), Coord(static_cast<std::uint8_t>(found)));
}

}  // namespace

Poly substitute_poly(const Poly& p, const std::map<Coord, Poly>& bindings) {
  if (bindings.empty()) return p;
  VarSet bound;
  for (const auto& [c, img] : bindings) bound.set(c.id());
  std::map<std::pair<int, int>, Poly> power_cache;
  auto power = [&](int k, int e) -> const Poly& {
    auto key = std::make_pair(k, e);
    auto it = power_cache.find(key);
    if (it != power_cache.end()) return it->second;
    return power_cache.emplace(key, bindings.at(Coord(static_cast<std::uint8_t>(k))).pow(static_cast<unsigned>(e))).first->second;
  };
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    Term rest;
    rest.coef = t.coef;
    std::vector<int> hits;
    for (int k = 0; k < kNumVars; ++k) {
      if (t.mono.pw[k] == 0) continue;
      if (bound.test(k)) {
        hits.push_back(k);
      } else {
        rest.mono.pw[k] = t.mono.pw[k];
      }
    }
    Poly acc = Poly::from_terms({rest});
    for (int k : hits) {
      acc *= power(k, t.mono.pw[k]);
      if (acc.is_zero()) break;
    }
    if (acc.is_zero()) continue;
    for (const auto& f : t.mono.exps) acc *= substitute_exp_factor(f, bindings);
    for (const auto& term : acc.terms()) out.push_back(term);
  }
  return Poly::from_terms(std::move(out));
}

Expr substitute(const Expr& e, const Bindings& bindings) {
  if (bindings.empty()) return e;
  VarSet bound;
  VarSet image_vars;
  bool polynomial = true;
  for (const auto& [c, img] : bindings) {
    bound.set(c.id());
    image_vars |= img.vars();
    polynomial = polynomial && img.is_polynomial();
  }
  check_acyclic(bound, image_vars);
  if ((e.vars() & bound).none()) return e;
  if (polynomial) {
    std::map<Coord, Poly> pb;
    for (const auto& [c, img] : bindings) pb.emplace(c, img.num().scaled(1 / img.den().constant_value()));
    return Expr::fraction(substitute_poly(e.num(), pb), substitute_poly(e.den(), pb));
  }
  // General images: substitute term by term in the field of fractions.
  auto subst = [&](const Poly& p) {
    Expr acc;
    for (const auto& t : p.terms()) {
      Term rest;
      rest.coef = t.coef;
      Expr factor(1);
      for (int k = 0; k < kNumVars; ++k) {
        if (t.mono.pw[k] == 0) continue;
        if (bound.test(k)) {
          factor *= bindings.at(Coord(static_cast<std::uint8_t>(k))).pow(t.mono.pw[k]);
        } else {
          rest.mono.pw[k] = t.mono.pw[k];
        }
      }
      std::map<Coord, Poly> poly_part;
      for (const auto& f : t.mono.exps) {
        Coord base(f.base);
        if (bound.test(f.base)) {
          const Expr& img = bindings.at(base);
          if (!img.is_polynomial()) throw std::domain_error("exponential base " + base.name() + " must map to a polynomial");
          poly_part.emplace(base, img.num().scaled(1 / img.den().constant_value()));
        }
      }
      Poly expo(1);
      for (const auto& f : t.mono.exps) expo *= substitute_exp_factor(f, poly_part);
      acc += factor * Expr(Poly::from_terms({rest}) * expo);
    }
    return acc;
  };
  const Expr d = subst(e.den());
  if (d.is_zero()) throw DivisionByZero("denominator normalizes to zero after substitution");
  return subst(e.num()) / d;
}

bool is_identically_zero(const Expr& e) { return e.num().is_zero(); }

double eval_numeric(const Poly& p, const NumericPoint& point) {
  std::array<double, kNumVars> val{};
  std::array<bool, kNumVars> bound{};
  for (const auto& [c, x] : point.values) {
    val[c.id()] = x;
    bound[c.id()] = true;
  }
  if (!bound[slot::sqrt2]) {
    val[slot::sqrt2] = std::sqrt(2.0);
    bound[slot::sqrt2] = true;
  }
  const VarSet used = p.vars();
  for (int k = 0; k < kNumVars; ++k) {
    if (used.test(k) && !bound[k]) throw UnboundCoordinate(Coord(static_cast<std::uint8_t>(k)).name());
  }
  double sum = 0.0;
  for (const auto& t : p.terms()) {
    double v = t.coef.get_d();
    for (int k = 0; k < kNumVars; ++k) {
      for (int e = 0; e < t.mono.pw[k]; ++e) v *= val[k];
    }
    for (const auto& f : t.mono.exps) v *= std::exp(eval_numeric(*f.rate, point) * val[f.base]);
    sum += v;
  }
  return sum;
}

double eval_numeric(const Expr& e, const NumericPoint& point) {
  const double d = eval_numeric(e.den(), point);
  if (!(std::fabs(d) > point.eps_div)) throw NearZeroDenominator(d);
  return eval_numeric(e.num(), point) / d;
}

Expr conjugate(const Expr& e) {
  const std::map<Coord, Poly> flip{{Coord::imag(), -Poly::var(Coord::imag())}};
  return Expr::fraction(substitute_poly(e.num(), flip), substitute_poly(e.den(), flip));
}

}  // namespace pss
