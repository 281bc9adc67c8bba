#include "pss/kernel/poly.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>

namespace pss {

namespace {

int sign_of(int c) { return (c > 0) - (c < 0); }

std::vector<ExpFactor> merge_exps(const std::vector<ExpFactor>& a, const std::vector<ExpFactor>& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  std::vector<ExpFactor> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].base < b[j].base)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].base < a[i].base) {
      out.push_back(b[j++]);
    } else {
      Poly r = *a[i].rate + *b[j].rate;
      if (!r.is_zero()) out.push_back({a[i].base, std::make_shared<const Poly>(std::move(r))});
      ++i;
      ++j;
    }
  }
  return out;
}

bool term_greater(const Term& a, const Term& b) { return compare(a.mono, b.mono) > 0; }

// Merge two strictly sorted term lists, b scaled by sign.
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, bool negate_b) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    const int c = compare(a[i].mono, b[j].mono);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(b[j]);
      if (negate_b) out.back().coef = -out.back().coef;
      ++j;
    } else {
      mpq_class s = negate_b ? mpq_class(a[i].coef - b[j].coef) : mpq_class(a[i].coef + b[j].coef);
      if (s != 0) out.push_back({a[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) {
    out.push_back(b[j]);
    if (negate_b) out.back().coef = -out.back().coef;
  }
  return out;
}

}  // namespace

bool Monomial::is_one() const {
  if (!exps.empty()) return false;
  return std::all_of(pw.begin(), pw.end(), [](std::uint8_t e) { return e == 0; });
}

int compare_exps(const std::vector<ExpFactor>& a, const std::vector<ExpFactor>& b) {
  if (a.empty() || b.empty()) return sign_of(static_cast<int>(b.size()) - static_cast<int>(a.size()));
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k].base != b[k].base) return a[k].base < b[k].base ? 1 : -1;
    const int c = compare(*a[k].rate, *b[k].rate);
    if (c != 0) return c;
  }
  return sign_of(static_cast<int>(a.size()) - static_cast<int>(b.size()));
}

int compare(const Monomial& a, const Monomial& b) {
  const int c = std::memcmp(a.pw.data(), b.pw.data(), kNumVars);
  if (c != 0) return sign_of(c);
  if (a.exps.empty() && b.exps.empty()) return 0;
  return compare_exps(a.exps, b.exps);
}

void reduce_units(Term& t) {
  auto& ei = t.mono.pw[slot::imag];
  if (ei >= 2) {
    if ((ei / 2) % 2 == 1) t.coef = -t.coef;
    ei = ei % 2;
  }
  auto& es = t.mono.pw[slot::sqrt2];
  if (es >= 2) {
    mpz_class f;
    mpz_ui_pow_ui(f.get_mpz_t(), 2, es / 2);
    t.coef *= f;
    es = es % 2;
  }
}

Term multiply(const Term& a, const Term& b) {
  Term r;
  for (int k = 0; k < kNumVars; ++k) {
    const int s = a.mono.pw[k] + b.mono.pw[k];
    if (s > 255) throw std::overflow_error("monomial degree exceeds 255");
    r.mono.pw[k] = static_cast<std::uint8_t>(s);
  }
  r.mono.exps = merge_exps(a.mono.exps, b.mono.exps);
  r.coef = a.coef * b.coef;
  reduce_units(r);
  return r;
}

Poly::Poly(long c) : Poly(mpq_class(c)) {}

Poly::Poly(const mpq_class& c) {
  if (c != 0) {
    terms_.push_back({Monomial{}, c});
    terms_.back().coef.canonicalize();
  }
}

Poly Poly::var(Coord c, unsigned power) {
  Term t;
  t.coef = 1;
  if (power > 255) throw std::overflow_error("monomial degree exceeds 255");
  t.mono.pw[c.id()] = static_cast<std::uint8_t>(power);
  reduce_units(t);
  Poly p;
  p.terms_.push_back(std::move(t));
  return p;
}

Poly Poly::exp_atom(const Poly& rate, Coord base) {
  if (rate.is_zero()) return Poly(1);
  const VarSet used = rate.power_vars();
  for (int k = 0; k < kNumVars; ++k) {
    if (used.test(k) && (k < slot::eta || k > slot::theta)) {
      throw std::invalid_argument("exponential rate may only involve parameters, found " + Coord(static_cast<std::uint8_t>(k)).name());
    }
  }
  if (rate.has_exps()) throw std::invalid_argument("exponential rate may not contain exponentials");
  Term t;
  t.coef = 1;
  t.mono.exps.push_back({base.id(), std::make_shared<const Poly>(rate)});
  Poly p;
  p.terms_.push_back(std::move(t));
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  for (auto& t : terms) reduce_units(t);
  std::sort(terms.begin(), terms.end(), term_greater);
  Poly p;
  p.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!p.terms_.empty() && compare(p.terms_.back().mono, t.mono) == 0) {
      p.terms_.back().coef += t.coef;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coef == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coef == 0) p.terms_.pop_back();
  return p;
}

bool Poly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }

mpq_class Poly::constant_value() const {
  if (terms_.empty()) return 0;
  if (!is_constant()) throw std::logic_error("polynomial is not constant");
  return terms_[0].coef;
}

bool Poly::has_exps() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.mono.has_exps(); });
}

VarSet Poly::power_vars() const {
  VarSet s;
  for (const auto& t : terms_) {
    for (int k = 0; k < kNumVars; ++k) {
      if (t.mono.pw[k] != 0) s.set(k);
    }
  }
  return s;
}

VarSet Poly::vars() const {
  VarSet s = power_vars();
  for (const auto& t : terms_) {
    for (const auto& e : t.mono.exps) {
      s.set(e.base);
      s |= e.rate->vars();
    }
  }
  return s;
}

int Poly::degree(int var) const {
  int d = 0;
  for (const auto& t : terms_) d = std::max<int>(d, t.mono.pw[var]);
  return d;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.coef = -t.coef;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return *this = o;
  terms_ = merge_terms(terms_, o.terms_, false);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, o.terms_, true);
  return *this;
}

Poly Poly::scaled(const mpq_class& c) const {
  if (c == 0) return Poly();
  Poly r = *this;
  for (auto& t : r.terms_) t.coef *= c;
  return r;
}

Poly Poly::times_term(const Term& t) const {
  if (t.mono.is_one()) return scaled(t.coef);
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& a : terms_) out.push_back(multiply(a, t));
  return from_terms(std::move(out));
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.terms_.empty() || b.terms_.empty()) return Poly();
  if (a.is_constant()) return b.scaled(a.terms_[0].coef);
  if (b.is_constant()) return a.scaled(b.terms_[0].coef);
  if (a.terms_.size() == 1) return b.times_term(a.terms_[0]);
  if (b.terms_.size() == 1) return a.times_term(b.terms_[0]);
  std::vector<Term> out;
  out.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) out.push_back(multiply(x, y));
  }
  return Poly::from_terms(std::move(out));
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly Poly::pow(unsigned e) const {
  Poly result(1);
  Poly base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return result;
}

Poly Poly::diff(Coord c) const {
  const int id = c.id();
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.mono.pw[id] > 0) {
      Term d = t;
      d.coef *= t.mono.pw[id];
      d.mono.pw[id] -= 1;
      out.push_back(std::move(d));
    }
    for (const auto& e : t.mono.exps) {
      Poly factor;
      if (e.base == id) factor += *e.rate;
      if (c.is_parameter()) {
        Poly dr = e.rate->diff(c);
        if (!dr.is_zero()) factor += dr * Poly::var(Coord(e.base));
      }
      if (factor.is_zero()) continue;
      for (const auto& f : factor.terms_) out.push_back(multiply(t, f));
    }
  }
  return from_terms(std::move(out));
}

std::vector<Poly> Poly::univariate(int var) const {
  std::vector<std::vector<Term>> buckets(static_cast<std::size_t>(degree(var)) + 1);
  for (const auto& t : terms_) {
    Term s = t;
    s.mono.pw[var] = 0;
    buckets[t.mono.pw[var]].push_back(std::move(s));
  }
  std::vector<Poly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) {
    Poly p;
    p.terms_ = std::move(b);
    out.push_back(std::move(p));
  }
  return out;
}

bool operator==(const Poly& a, const Poly& b) { return compare(a, b) == 0; }

int compare(const Poly& a, const Poly& b) {
  const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t k = 0; k < n; ++k) {
    const int c = compare(a.terms_[k].mono, b.terms_[k].mono);
    if (c != 0) return c;
    const int d = cmp(a.terms_[k].coef, b.terms_[k].coef);
    if (d != 0) return sign_of(d);
  }
  return sign_of(static_cast<int>(a.terms_.size()) - static_cast<int>(b.terms_.size()));
}

}  // namespace pss
