#pragma once

#include <gmpxx.h>

#include <array>
#include <bitset>
#include <compare>
#include <cstdint>
#include <memory>
#include <vector>

#include "pss/kernel/coord.hpp"

namespace pss {

class Poly;

// exp(rate * base), rate a polynomial in parameters only.
struct ExpFactor {
  std::uint8_t base = 0;
  std::shared_ptr<const Poly> rate;
};

struct Monomial {
  std::array<std::uint8_t, kNumVars> pw{};
  std::vector<ExpFactor> exps;  // sorted by base, rates nonzero

  bool has_exps() const { return !exps.empty(); }
  bool is_one() const;
};

// Total order: power vector lexicographically (slot 0 most significant), then
// exponential part. Exp-free monomials rank above exp-bearing ones with the
// same power vector.
int compare(const Monomial& a, const Monomial& b);
int compare_exps(const std::vector<ExpFactor>& a, const std::vector<ExpFactor>& b);

struct Term {
  Monomial mono;
  mpq_class coef;
};

using VarSet = std::bitset<kNumVars>;

class Poly {
 public:
  Poly() = default;
  Poly(long c);  // NOLINT(google-explicit-constructor)
  Poly(const mpq_class& c);  // NOLINT(google-explicit-constructor)

  static Poly var(Coord c, unsigned power = 1);
  static Poly exp_atom(const Poly& rate, Coord base);
  static Poly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  mpq_class constant_value() const;  // requires is_constant()
  const Term& leading() const { return terms_.front(); }
  bool has_exps() const;

  // Variables with positive power plus exponential bases and rate parameters.
  VarSet vars() const;
  // Variables with positive power only.
  VarSet power_vars() const;
  int degree(int var) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly scaled(const mpq_class& c) const;
  Poly times_term(const Term& t) const;
  Poly pow(unsigned e) const;

  Poly diff(Coord c) const;

  // Coefficients of var^0, var^1, ... (var removed from each coefficient).
  std::vector<Poly> univariate(int var) const;

  friend bool operator==(const Poly& a, const Poly& b);
  friend int compare(const Poly& a, const Poly& b);

 private:
  std::vector<Term> terms_;  // strictly decreasing monomials, nonzero coefficients
};

Term multiply(const Term& a, const Term& b);
// Applies i^2 -> -1 and sqrt2^2 -> 2 to a single term.
void reduce_units(Term& t);

// Exact quotient a / b; throws std::domain_error if b does not divide a.
Poly exact_div(const Poly& a, const Poly& b);
// Greatest common divisor up to a unit. Exponential factors are treated as
// Laurent monomials, so they never contribute to the result.
Poly gcd(const Poly& a, const Poly& b);

}  // namespace pss
