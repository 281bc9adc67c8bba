#include "pss/lax/laxzoo.hpp"

namespace pss {

Mat2 mat_identity() { return {{{Expr(1), Expr()}, {Expr(), Expr(1)}}}; }

Mat2 operator+(const Mat2& a, const Mat2& b) {
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = a[i][j] + b[i][j];
  return r;
}

Mat2 operator-(const Mat2& a, const Mat2& b) {
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = a[i][j] - b[i][j];
  return r;
}

Mat2 operator*(const Mat2& a, const Mat2& b) {
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return r;
}

Mat2 operator*(const Expr& s, const Mat2& a) {
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = s * a[i][j];
  return r;
}

Expr det(const Mat2& a) { return a[0][0] * a[1][1] - a[0][1] * a[1][0]; }
Expr trace(const Mat2& a) { return a[0][0] + a[1][1]; }
Mat2 commutator(const Mat2& a, const Mat2& b) { return a * b - b * a; }

Mat2 inverse(const Mat2& a) {
  const Expr d = det(a);
  if (is_identically_zero(d)) throw DivisionByZero("singular matrix");
  return {{{a[1][1] / d, -a[0][1] / d}, {-a[1][0] / d, a[0][0] / d}}};
}

bool is_zero(const Mat2& a) {
  for (const auto& row : a)
    for (const auto& e : row)
      if (!is_identically_zero(e)) return false;
  return true;
}

bool identical(const Mat2& a, const Mat2& b) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (!a[i][j].identical(b[i][j])) return false;
  return true;
}

bool equal(const Mat2& a, const Mat2& b) { return is_zero(a - b); }

Mat2 map_entries(const Mat2& a, Expr (*f)(const Expr&)) {
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = f(a[i][j]);
  return r;
}

std::string to_string(Algebra a) {
  switch (a) {
    case Algebra::sl2: return "sl2";
    case Algebra::su2: return "su2";
    case Algebra::su2_rotated: return "su2_rotated";
  }
  return "?";
}

namespace {

Mat2 pack(const Expr& w1, const Expr& w2, const Expr& w3, Algebra algebra) {
  const Expr half = Expr::rational(1, 2);
  const Expr i = Expr::coord(Coord::imag());
  switch (algebra) {
    case Algebra::sl2: return half * Mat2{{{w2, w1 - w3}, {w1 + w3, -w2}}};
    case Algebra::su2: return half * Mat2{{{i * w2, w1 + i * w3}, {-w1 + i * w3, -i * w2}}};
    case Algebra::su2_rotated: return half * Mat2{{{i * w3, w1 - i * w2}, {w1 + i * w2, -i * w3}}};
  }
  throw std::logic_error("unknown algebra");
}

}  // namespace

MatrixForm from_forms(const AssociatedForms& forms, Algebra algebra) {
  const auto& f = forms.f;
  return {pack(f[0][0], f[1][0], f[2][0], algebra), pack(f[0][1], f[1][1], f[2][1], algebra), algebra};
}

Mat2 zero_curvature_residual(const MatrixForm& mf, const PdeSystem& sys, const DerivationRules& rules) {
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = total_dt_mod_system(mf.X[i][j], sys, rules) - total_dx(mf.T[i][j], rules);
  return r + commutator(mf.X, mf.T);
}

NonUnimodular::NonUnimodular(const Expr& residual)
    : std::invalid_argument("gauge matrix is not unimodular: det - 1 = " + print(residual)), residual_(residual) {}

MatrixForm gauge_transform(const MatrixForm& mf, const Mat2& A, const PdeSystem& sys, const DerivationRules& rules) {
  const Expr excess = det(A) - Expr(1);
  if (!is_identically_zero(excess)) throw NonUnimodular(excess);
  Mat2 Ainv{{{A[1][1], -A[0][1]}, {-A[1][0], A[0][0]}}};
  Mat2 Ax;
  Mat2 At;
  bool constant = true;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      if (A[i][j].is_constant()) continue;
      constant = false;
      Ax[i][j] = total_dx(A[i][j], rules);
      At[i][j] = total_dt_mod_system(A[i][j], sys, rules);
    }
  }
  MatrixForm out{A * mf.X * Ainv, A * mf.T * Ainv, mf.algebra};
  if (!constant) {
    out.X = Ax * Ainv + out.X;
    out.T = At * Ainv + out.T;
  }
  return out;
}

Mat2 standard_gauge() {
  const Expr s = Expr::rational(1, 2) * Expr::coord(Coord::sqrt2());
  const Expr i = Expr::coord(Coord::imag());
  return {{{s, s * i}, {s * i, s}}};
}

nlohmann::ordered_json to_json(const Mat2& m) {
  return nlohmann::ordered_json::array({nlohmann::ordered_json::array({print(m[0][0]), print(m[0][1])}),
                                        nlohmann::ordered_json::array({print(m[1][0]), print(m[1][1])})});
}

nlohmann::ordered_json to_json(const MatrixForm& mf) {
  nlohmann::ordered_json j;
  j["algebra"] = to_string(mf.algebra);
  j["X"] = to_json(mf.X);
  j["T"] = to_json(mf.T);
  return j;
}

}  // namespace pss
