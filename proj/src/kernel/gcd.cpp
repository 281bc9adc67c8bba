#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>

#include "pss/kernel/poly.hpp"

namespace pss {

namespace {

Poly make_monic(const Poly& p) {
  if (p.is_zero()) return p;
  return p.scaled(1 / p.leading().coef);
}

bool divides(const Monomial& d, const Monomial& m) {
  for (int k = 0; k < kNumVars; ++k) {
    if (d.pw[k] > m.pw[k]) return false;
  }
  return true;
}

Poly exact_div_plain(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
  if (b.is_constant()) return a.scaled(1 / b.constant_value());
  const Term& lb = b.leading();
  std::vector<Term> quotient;
  Poly r = a;
  while (!r.is_zero()) {
    const Term& lr = r.leading();
    if (!divides(lb.mono, lr.mono)) throw std::domain_error("polynomial division is not exact");
    Term q;
    for (int k = 0; k < kNumVars; ++k) q.mono.pw[k] = static_cast<std::uint8_t>(lr.mono.pw[k] - lb.mono.pw[k]);
    q.coef = lr.coef / lb.coef;
    r -= b.times_term(q);
    quotient.push_back(std::move(q));
  }
  return Poly::from_terms(std::move(quotient));
}

Monomial min_powers(const Poly& p) {
  Monomial m;
  m.pw.fill(255);
  for (const auto& t : p.terms()) {
    for (int k = 0; k < kNumVars; ++k) m.pw[k] = std::min(m.pw[k], t.mono.pw[k]);
  }
  return m;
}

Poly strip_monomial(const Poly& p, const Monomial& m) {
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    Term s = t;
    for (int k = 0; k < kNumVars; ++k) s.mono.pw[k] = static_cast<std::uint8_t>(s.mono.pw[k] - m.pw[k]);
    out.push_back(std::move(s));
  }
  return Poly::from_terms(std::move(out));
}

using Coeffs = std::vector<Poly>;

Poly gcd_plain(const Poly& a, const Poly& b);

void trim(Coeffs& c) {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

Poly content(const Coeffs& c) {
  Poly g;
  for (const auto& x : c) {
    if (x.is_zero()) continue;
    g = g.is_zero() ? make_monic(x) : gcd_plain(g, x);
    if (g.is_constant()) return Poly(1);
  }
  return g;
}

Coeffs primitive(const Coeffs& c) {
  const Poly g = content(c);
  if (g.is_constant()) {
    // Keep rational coefficients small.
    const mpq_class s = 1 / c.back().leading().coef;
    Coeffs out;
    for (const auto& x : c) out.push_back(x.scaled(s));
    return out;
  }
  Coeffs out;
  for (const auto& x : c) out.push_back(exact_div_plain(x, g));
  return out;
}

Coeffs pseudo_rem(Coeffs r, const Coeffs& b) {
  const std::size_t db = b.size() - 1;
  const Poly& lb = b.back();
  while (!r.empty() && r.size() - 1 >= db) {
    const std::size_t dr = r.size() - 1;
    const Poly lr = r.back();
    for (auto& x : r) x *= lb;
    for (std::size_t j = 0; j <= db; ++j) r[j + dr - db] -= lr * b[j];
    trim(r);
  }
  return r;
}

Poly from_coeffs(const Coeffs& c, int var) {
  Poly out;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (!c[k].is_zero()) out += c[k] * Poly::var(Coord(static_cast<std::uint8_t>(var)), static_cast<unsigned>(k));
  }
  return out;
}

int main_var(const VarSet& s) {
  for (int k = 0; k < kNumVars; ++k) {
    if (s.test(k)) return k;
  }
  return -1;
}

bool try_divide(const Poly& a, const Poly& b, Poly& q) {
  try {
    q = exact_div_plain(a, b);
    return true;
  } catch (const std::domain_error&) {
    return false;
  }
}


// Heuristic gcd over the integers: evaluate one variable at a large integer,
// recurse, rebuild the gcd from its xi-adic digits and confirm by division.
mpz_class max_norm(const Poly& p) {
  mpz_class m = 0;
  for (const auto& t : p.terms()) {
    const mpz_class a = abs(t.coef.get_num());
    if (a > m) m = a;
  }
  return m;
}

mpz_class integer_content(const Poly& p) {
  mpz_class g = 0;
  for (const auto& t : p.terms()) g = gcd(g, mpz_class(t.coef.get_num()));
  return g;
}

// Scales p to integer coefficients with content 1.
Poly integer_primitive(const Poly& p) {
  if (p.is_zero()) return p;
  mpz_class l = 1;
  for (const auto& t : p.terms()) l = lcm(l, mpz_class(t.coef.get_den()));
  Poly q = p.scaled(mpq_class(l));
  const mpz_class c = integer_content(q);
  return q.scaled(mpq_class(1) / mpq_class(c));
}

Poly evaluate_at(const Poly& p, int var, const mpz_class& xi) {
  std::vector<mpz_class> powers{1};
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    const int e = t.mono.pw[var];
    while (static_cast<int>(powers.size()) <= e) powers.push_back(powers.back() * xi);
    Term s = t;
    s.mono.pw[var] = 0;
    s.coef *= powers[e];
    out.push_back(std::move(s));
  }
  return Poly::from_terms(std::move(out));
}

mpz_class symmetric_mod(const mpz_class& c, const mpz_class& xi) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), xi.get_mpz_t());
  if (2 * r > xi) r -= xi;
  return r;
}

std::optional<Poly> heu_gcd_z(const Poly& a, const Poly& b, int depth) {
  const mpz_class ca = integer_content(a);
  const mpz_class cb = integer_content(b);
  const mpz_class c = gcd(ca, cb);
  if (a.is_constant() || b.is_constant()) return Poly(mpq_class(c));
  const Poly A = a.scaled(mpq_class(1) / mpq_class(ca));
  const Poly B = b.scaled(mpq_class(1) / mpq_class(cb));

  const int v = main_var(A.power_vars() | B.power_vars());
  const int bound = std::min(A.degree(v), B.degree(v));
  mpz_class xi = 2 * std::min(max_norm(A), max_norm(B)) + 29;
  for (int attempt = 0; attempt < 6; ++attempt) {
    const Poly ea = evaluate_at(A, v, xi);
    const Poly eb = evaluate_at(B, v, xi);
    if (!ea.is_zero() && !eb.is_zero()) {
      if (auto h = heu_gcd_z(ea, eb, depth + 1)) {
        std::vector<Term> g;
        Poly rest = *h;
        bool ok = true;
        for (int i = 0; !rest.is_zero(); ++i) {
          if (i > bound) {
            ok = false;
            break;
          }
          std::vector<Term> digit;
          for (const auto& t : rest.terms()) {
            const mpz_class d = symmetric_mod(t.coef.get_num(), xi);
            if (d == 0) continue;
            Term s{t.mono, mpq_class(d)};
            digit.push_back(s);
            s.mono.pw[v] = static_cast<std::uint8_t>(i);
            g.push_back(std::move(s));
          }
          rest = (rest - Poly::from_terms(std::move(digit))).scaled(mpq_class(1) / mpq_class(xi));
        }
        if (ok && !g.empty()) {
          Poly G = integer_primitive(Poly::from_terms(std::move(g)));
          Poly q;
          if (!G.is_constant() && try_divide(A, G, q) && try_divide(B, G, q)) return G.scaled(mpq_class(c));
          if (G.is_constant()) return Poly(mpq_class(c));
        }
      }
    }
    xi = xi * 73794 / 27011;
  }
  return std::nullopt;
}

Poly gcd_plain(const Poly& a, const Poly& b) {
  if (a.is_zero()) return make_monic(b);
  if (b.is_zero()) return make_monic(a);
  if (a.is_constant() || b.is_constant()) return Poly(1);

  const Monomial ma = min_powers(a);
  const Monomial mb = min_powers(b);
  Monomial mg;
  for (int k = 0; k < kNumVars; ++k) mg.pw[k] = std::min(ma.pw[k], mb.pw[k]);
  Term mono_gcd{mg, 1};
  const Poly A = strip_monomial(a, ma);
  const Poly B = strip_monomial(b, mb);
  if (A.is_constant() || B.is_constant()) return Poly(1).times_term(mono_gcd);

  Poly q;
  if (B.size() <= A.size() && try_divide(A, B, q)) return make_monic(B).times_term(mono_gcd);
  if (A.size() <= B.size() && try_divide(B, A, q)) return make_monic(A).times_term(mono_gcd);

  if (auto g = heu_gcd_z(integer_primitive(A), integer_primitive(B), 0)) {
    return make_monic(*g).times_term(mono_gcd);
  }

  const VarSet va = A.power_vars();
  const VarSet vb = B.power_vars();
  const int v = main_var(va | vb);
  if (!va.test(v)) return gcd_plain(A, content(B.univariate(v))).times_term(mono_gcd);
  if (!vb.test(v)) return gcd_plain(B, content(A.univariate(v))).times_term(mono_gcd);

  Coeffs ca = A.univariate(v);
  Coeffs cb = B.univariate(v);
  const Poly c = gcd_plain(content(ca), content(cb));
  Coeffs pa = primitive(ca);
  Coeffs pb = primitive(cb);
  if (pa.size() < pb.size()) std::swap(pa, pb);
  Coeffs g;
  while (true) {
    Coeffs r = pseudo_rem(pa, pb);
    if (r.empty()) {
      g = pb;
      break;
    }
    if (r.size() == 1) {
      g = {Poly(1)};
      break;
    }
    pa = std::move(pb);
    pb = primitive(r);
  }
  return make_monic(c * from_coeffs(primitive(g), v)).times_term(mono_gcd);
}

// Rewrites exponential factors as Laurent monomials in scratch variables so
// that the plain polynomial algorithms apply.
class LaurentMap {
 public:
  explicit LaurentMap(std::initializer_list<const Poly*> polys) {
    std::map<std::uint8_t, std::vector<Poly>> rates;
    for (const Poly* p : polys) {
      for (const auto& t : p->terms()) {
        for (const auto& e : t.mono.exps) rates[e.base].push_back(*e.rate);
      }
    }
    for (auto& [base, list] : rates) add_base(base, list);
  }

  struct Mapped {
    Poly poly;
    std::vector<int> shift;
  };

  Mapped to_plain(const Poly& p) const {
    std::vector<std::vector<int>> exps;
    std::vector<int> lo(basis_.size(), 0);
    bool first = true;
    for (const auto& t : p.terms()) {
      std::vector<int> e(basis_.size(), 0);
      for (const auto& f : t.mono.exps) {
        const auto coords = coordinates(f.base, *f.rate);
        for (std::size_t j = 0; j < coords.size(); ++j) e[j] += coords[j];
      }
      for (std::size_t j = 0; j < e.size(); ++j) lo[j] = first ? e[j] : std::min(lo[j], e[j]);
      first = false;
      exps.push_back(std::move(e));
    }
    std::vector<Term> out;
    out.reserve(p.size());
    std::size_t idx = 0;
    for (const auto& t : p.terms()) {
      Term s;
      s.mono.pw = t.mono.pw;
      s.coef = t.coef;
      for (std::size_t j = 0; j < basis_.size(); ++j) {
        const int e = exps[idx][j] - lo[j];
        if (e > 255) throw std::overflow_error("exponential power too large");
        s.mono.pw[slot::scratch0 + j] = static_cast<std::uint8_t>(e);
      }
      out.push_back(std::move(s));
      ++idx;
    }
    return {Poly::from_terms(std::move(out)), lo};
  }

  Poly from_plain(const Poly& p, const std::vector<int>& shift) const {
    Poly out;
    for (const auto& t : p.terms()) {
      Term s;
      s.mono.pw = t.mono.pw;
      s.coef = t.coef;
      std::map<std::uint8_t, Poly> rate;
      for (std::size_t j = 0; j < basis_.size(); ++j) {
        const int e = t.mono.pw[slot::scratch0 + j] + (j < shift.size() ? shift[j] : 0);
        s.mono.pw[slot::scratch0 + j] = 0;
        if (e != 0) rate[basis_[j].base] += basis_[j].rate.scaled(e);
      }
      Poly term = Poly::from_terms({s});
      for (auto& [base, r] : rate) term *= Poly::exp_atom(r, Coord(base));
      out += term;
    }
    return out;
  }

  bool empty() const { return basis_.empty(); }

 private:
  struct Element {
    std::uint8_t base;
    Poly rate;
    Monomial lead;
  };

  void add_base(std::uint8_t base, const std::vector<Poly>& list) {
    std::vector<Element> local;
    for (const auto& r0 : list) {
      Poly r = reduce(local, r0);
      if (r.is_zero()) continue;
      r = make_monic(r);
      const Monomial lead = r.leading().mono;
      for (auto& b : local) {
        const mpq_class c = coefficient(b.rate, lead);
        if (c != 0) b.rate -= r.scaled(c);
      }
      local.push_back({base, r, lead});
    }
    // Rescale so that every rate has integer coordinates.
    for (std::size_t j = 0; j < local.size(); ++j) {
      mpz_class l = 1;
      for (const auto& r : list) {
        const mpq_class c = coefficient(r, local[j].lead);
        l = lcm(l, mpz_class(c.get_den()));
      }
      local[j].rate = local[j].rate.scaled(mpq_class(1) / mpq_class(l));
      local[j].lead = local[j].rate.leading().mono;
    }
    for (auto& e : local) {
      if (basis_.size() >= static_cast<std::size_t>(slot::scratch_count)) {
        throw std::runtime_error("too many independent exponential rates");
      }
      basis_.push_back(std::move(e));
    }
  }

  static mpq_class coefficient(const Poly& p, const Monomial& m) {
    for (const auto& t : p.terms()) {
      if (compare(t.mono, m) == 0) return t.coef;
    }
    return 0;
  }

  static Poly reduce(const std::vector<Element>& basis, Poly r) {
    for (const auto& b : basis) {
      const mpq_class c = coefficient(r, b.lead) / b.rate.leading().coef;
      if (c != 0) r -= b.rate.scaled(c);
    }
    return r;
  }

  std::vector<int> coordinates(std::uint8_t base, const Poly& rate) const {
    std::vector<int> out(basis_.size(), 0);
    Poly rest = rate;
    for (std::size_t j = 0; j < basis_.size(); ++j) {
      if (basis_[j].base != base) continue;
      const mpq_class c = coefficient(rate, basis_[j].lead) / basis_[j].rate.leading().coef;
      if (c.get_den() != 1) throw std::logic_error("non-integral exponential coordinate");
      out[j] = static_cast<int>(c.get_num().get_si());
      rest -= basis_[j].rate.scaled(c);
    }
    if (!rest.is_zero()) throw std::logic_error("exponential rate outside the computed basis");
    return out;
  }

  std::vector<Element> basis_;
};

}  // namespace

Poly exact_div(const Poly& a, const Poly& b) {
  if (!a.has_exps() && !b.has_exps()) return exact_div_plain(a, b);
  LaurentMap map({&a, &b});
  const auto ma = map.to_plain(a);
  const auto mb = map.to_plain(b);
  std::vector<int> shift(ma.shift.size());
  for (std::size_t j = 0; j < shift.size(); ++j) shift[j] = ma.shift[j] - mb.shift[j];
  return map.from_plain(exact_div_plain(ma.poly, mb.poly), shift);
}

Poly gcd(const Poly& a, const Poly& b) {
  if (!a.has_exps() && !b.has_exps()) return gcd_plain(a, b);
  LaurentMap map({&a, &b});
  const auto ma = map.to_plain(a);
  const auto mb = map.to_plain(b);
  return map.from_plain(gcd_plain(ma.poly, mb.poly), {});
}

}  // namespace pss
