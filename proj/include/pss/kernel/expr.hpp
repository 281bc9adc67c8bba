#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "pss/kernel/poly.hpp"

namespace pss {

class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Canonical rational function num/den.
//  * gcd(num, den) = 1 (exponential factors count as units);
//  * den is free of i and sqrt2;
//  * the leading term of den has coefficient 1 and no exponential factor,
//    and among admissible choices den is minimal in the Poly order.
class Expr {
 public:
  Expr() : den_(1) {}
  Expr(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  Expr(const mpq_class& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  Expr(const Poly& p) : num_(p), den_(1) {}  // NOLINT(google-explicit-constructor)

  static Expr coord(Coord c) { return Expr(Poly::var(c)); }
  static Expr exp_atom(const Poly& rate, Coord base) { return Expr(Poly::exp_atom(rate, base)); }
  static Expr rational(long num, long den);
  static Expr fraction(Poly num, Poly den);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_constant(); }
  // The rational value when constant.
  mpq_class constant_value() const;

  VarSet vars() const { return num_.vars() | den_.vars(); }
  bool depends_on(Coord c) const { return vars().test(c.id()); }

  Expr operator-() const;
  Expr& operator+=(const Expr& o) { return *this = *this + o; }
  Expr& operator-=(const Expr& o) { return *this = *this - o; }
  Expr& operator*=(const Expr& o) { return *this = *this * o; }
  Expr& operator/=(const Expr& o) { return *this = *this / o; }
  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  Expr pow(int e) const;

  // Mathematical equality (the difference normalizes to zero).
  friend bool operator==(const Expr& a, const Expr& b);
  // Representation equality.
  bool identical(const Expr& o) const { return num_ == o.num_ && den_ == o.den_; }

 private:
  Poly num_;
  Poly den_;
};

using Bindings = std::map<Coord, Expr>;

class CyclicBinding : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnboundCoordinate : public std::invalid_argument {
 public:
  explicit UnboundCoordinate(const std::string& name)
      : std::invalid_argument("unbound coordinate: " + name), name_(name) {}
  const std::string& coordinate() const { return name_; }

 private:
  std::string name_;
};

class NearZeroDenominator : public std::domain_error {
 public:
  explicit NearZeroDenominator(double value);
  double value() const { return value_; }

 private:
  double value_;
};

Expr diff(const Expr& e, Coord c);
Expr substitute(const Expr& e, const Bindings& bindings);
Poly substitute_poly(const Poly& p, const std::map<Coord, Poly>& bindings);
bool is_identically_zero(const Expr& e);

struct NumericPoint {
  std::map<Coord, double> values;
  double eps_div = 1e-12;
};
double eval_numeric(const Expr& e, const NumericPoint& point);
double eval_numeric(const Poly& p, const NumericPoint& point);

// Complex conjugation i -> -i.
Expr conjugate(const Expr& e);

}  // namespace pss
