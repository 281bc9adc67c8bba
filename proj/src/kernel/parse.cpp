#include "pss/kernel/parse.hpp"

#include <cctype>

namespace pss {

ParseError::ParseError(const std::string& message, std::size_t offset)
    : std::runtime_error("parse error at byte " + std::to_string(offset) + ": " + message),
      detail_(message),
      offset_(offset) {}

UnknownIdentifier::UnknownIdentifier(const std::string& token, std::size_t offset)
    : ParseError("unknown identifier '" + token + "'", offset), token_(token) {}

namespace {

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
  Tok kind;
  std::string_view text;
  std::size_t offset;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) { advance(); }

  const Token& peek() const { return cur_; }

  Token next() {
    Token t = cur_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    const std::size_t start = pos_;
    if (pos_ >= s_.size()) {
      cur_ = {Tok::end, {}, start};
      return;
    }
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      cur_ = {Tok::number, s_.substr(start, pos_ - start), start};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      cur_ = {Tok::ident, s_.substr(start, pos_ - start), start};
      return;
    }
    Tok k = Tok::end;
    switch (c) {
      case '+': k = Tok::plus; break;
      case '-': k = Tok::minus; break;
      case '*': k = Tok::star; break;
      case '/': k = Tok::slash; break;
      case '^': k = Tok::caret; break;
      case '(': k = Tok::lparen; break;
      case ')': k = Tok::rparen; break;
      default: throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
    ++pos_;
    cur_ = {k, s_.substr(start, 1), start};
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  Token cur_{Tok::end, {}, 0};
};

constexpr int kPrecAdd = 10;
constexpr int kPrecMul = 20;
constexpr int kPrecUnary = 25;
constexpr int kPrecPow = 30;

int infix_precedence(Tok k) {
  switch (k) {
    case Tok::plus:
    case Tok::minus: return kPrecAdd;
    case Tok::star:
    case Tok::slash: return kPrecMul;
    case Tok::caret: return kPrecPow;
    default: return -1;
  }
}

bool is_parameter_slot(int k) { return k >= slot::eta && k <= slot::theta; }

Expr make_exp(const Expr& arg, std::size_t offset) {
  if (!arg.is_polynomial() || arg.num().has_exps()) {
    throw ParseError("exp argument must be a polynomial without exponentials", offset);
  }
  std::map<int, Poly> rates;
  for (const auto& t : arg.num().terms()) {
    int base = -1;
    Term rate;
    rate.coef = t.coef;
    for (int k = 0; k < kNumVars; ++k) {
      if (t.mono.pw[k] == 0) continue;
      if (is_parameter_slot(k)) {
        rate.mono.pw[k] = t.mono.pw[k];
      } else if (base < 0 && t.mono.pw[k] == 1) {
        base = k;
      } else {
        throw ParseError("exp argument must be linear in a single coordinate per term", offset);
      }
    }
    if (base < 0) throw ParseError("exp of a constant is not representable", offset);
    rates[base] += Poly::from_terms({rate});
  }
  Poly out(1);
  for (const auto& [base, rate] : rates) out *= Poly::exp_atom(rate, Coord(static_cast<std::uint8_t>(base)));
  return Expr(out);
}

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& opts) : lex_(text), opts_(opts) {}

  Expr run() {
    Expr e = expr(0);
    if (lex_.peek().kind != Tok::end) throw ParseError("unexpected trailing input", lex_.peek().offset);
    return e;
  }

 private:
  Expr expr(int min_prec) {
    Expr left = prefix();
    while (true) {
      const Token& op = lex_.peek();
      const int prec = infix_precedence(op.kind);
      if (prec < 0 || prec < min_prec) break;
      const Token t = lex_.next();
      if (t.kind == Tok::caret) {
        const Expr rhs = expr(kPrecPow);
        if (!rhs.is_constant() || rhs.constant_value().get_den() != 1) {
          throw ParseError("exponent must be an integer constant", t.offset);
        }
        const mpz_class e = rhs.constant_value().get_num();
        if (!e.fits_sint_p() || abs(e) > 255) throw ParseError("exponent out of range", t.offset);
        if (left.is_zero() && e < 0) throw ParseError("zero raised to a negative power", t.offset);
        left = left.pow(static_cast<int>(e.get_si()));
        continue;
      }
      const Expr rhs = expr(prec + 1);
      switch (t.kind) {
        case Tok::plus: left += rhs; break;
        case Tok::minus: left -= rhs; break;
        case Tok::star: left *= rhs; break;
        case Tok::slash:
          if (rhs.is_zero()) throw ParseError("division by zero", t.offset);
          left /= rhs;
          break;
        default: break;
      }
    }
    return left;
  }

  Expr prefix() {
    const Token t = lex_.next();
    switch (t.kind) {
      case Tok::number: return Expr(mpq_class(mpz_class(std::string(t.text))));
      case Tok::minus: return -expr(kPrecUnary);
      case Tok::plus: return expr(kPrecUnary);
      case Tok::lparen: {
        Expr e = expr(0);
        expect(Tok::rparen, "')'");
        return e;
      }
      case Tok::ident: {
        if (t.text == "exp" && lex_.peek().kind == Tok::lparen) {
          const Token open = lex_.next();
          Expr arg = expr(0);
          expect(Tok::rparen, "')'");
          return make_exp(arg, open.offset);
        }
        if (auto r = resolve_identifier(t.text, opts_)) return *r;
        throw UnknownIdentifier(std::string(t.text), t.offset);
      }
      case Tok::end: throw ParseError("unexpected end of input", t.offset);
      default: throw ParseError("unexpected '" + std::string(t.text) + "'", t.offset);
    }
  }

  void expect(Tok k, const char* what) {
    const Token& t = lex_.peek();
    if (t.kind != k) throw ParseError(std::string("expected ") + what, t.offset);
    lex_.next();
  }

  Lexer lex_;
  const ParseOptions& opts_;
};

}  // namespace

std::optional<Expr> resolve_identifier(std::string_view name, const ParseOptions& options) {
  if (name == "delta" && options.delta) return Expr(static_cast<long>(*options.delta));
  if (auto c = Coord::from_name(name)) {
    if (c->is_jet() && !options.momentum_first_class &&
        (c->jet_base() == JetBase::m || c->jet_base() == JetBase::n)) {
      const int k = c->order();
      if (k + 2 > kMaxJetOrder) return std::nullopt;
      const JetBase b = c->jet_base() == JetBase::m ? JetBase::u : JetBase::v;
      return Expr::coord(Coord::jet(b, k)) - Expr::coord(Coord::jet(b, k + 2));
    }
    return Expr::coord(*c);
  }
  auto it = options.names.find(std::string(name));
  if (it != options.names.end()) return it->second;
  return std::nullopt;
}

Expr parse(std::string_view text, const ParseOptions& options) { return Parser(text, options).run(); }

namespace {

std::string rational_text(const mpq_class& q) { return q.get_str(); }

std::string factor_text(int k, int e) {
  std::string s = Coord(static_cast<std::uint8_t>(k)).name();
  if (e != 1) s += "^" + std::to_string(e);
  return s;
}

std::string exp_text(const ExpFactor& f) {
  const std::string base = Coord(f.base).name();
  std::string body;
  if (f.rate->size() == 1) {
    const std::string r = print(*f.rate);
    if (r == "1") {
      body = base;
    } else if (r == "-1") {
      body = "-" + base;
    } else {
      body = r + "*" + base;
    }
  } else {
    body = "(" + print(*f.rate) + ")*" + base;
  }
  return "exp(" + body + ")";
}

// Magnitude of a term; sign handled by the caller.
std::string term_body(const Term& t, int* factor_count) {
  std::string factors;
  int count = 0;
  auto add = [&](const std::string& s) {
    if (!factors.empty()) factors += "*";
    factors += s;
    ++count;
  };
  for (int k = slot::eta; k < slot::scratch0; ++k) {
    if (t.mono.pw[k] != 0) add(factor_text(k, t.mono.pw[k]));
  }
  for (int k = 0; k < kNumVars; ++k) {
    if (k >= slot::eta && k < slot::scratch0) continue;
    if (t.mono.pw[k] != 0) add(factor_text(k, t.mono.pw[k]));
  }
  for (const auto& f : t.mono.exps) add(exp_text(f));
  const mpq_class mag = abs(t.coef);
  if (factor_count) *factor_count = count + (mag != 1 ? 1 : 0);
  if (factors.empty()) return rational_text(mag);
  if (mag == 1) return factors;
  return rational_text(mag) + "*" + factors;
}

}  // namespace

std::string print(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    const bool neg = t.coef < 0;
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    out += term_body(t, nullptr);
    first = false;
  }
  return out;
}

std::string print(const Expr& e) {
  if (e.is_polynomial()) return print(e.num().scaled(1 / e.den().constant_value()));
  std::string n = print(e.num());
  if (e.num().size() > 1) n = "(" + n + ")";
  std::string d = print(e.den());
  int factors = 0;
  if (e.den().size() == 1) term_body(e.den().leading(), &factors);
  if (e.den().size() > 1 || factors > 1) d = "(" + d + ")";
  return n + "/" + d;
}

}  // namespace pss
