#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "pss/forms/forms.hpp"

namespace pss {

using Mat2 = std::array<std::array<Expr, 2>, 2>;

Mat2 mat_identity();
Mat2 operator+(const Mat2& a, const Mat2& b);
Mat2 operator-(const Mat2& a, const Mat2& b);
Mat2 operator*(const Mat2& a, const Mat2& b);
Mat2 operator*(const Expr& s, const Mat2& a);
Expr det(const Mat2& a);
Expr trace(const Mat2& a);
Mat2 commutator(const Mat2& a, const Mat2& b);
Mat2 inverse(const Mat2& a);
bool is_zero(const Mat2& a);
bool identical(const Mat2& a, const Mat2& b);
// Entrywise mathematical equality.
bool equal(const Mat2& a, const Mat2& b);
Mat2 map_entries(const Mat2& a, Expr (*f)(const Expr&));

// sl2:  1/2 [[w2, w1 - w3], [w1 + w3, -w2]]
// su2:  1/2 [[i w2, w1 + i w3], [-w1 + i w3, -i w2]]
// su2_rotated: 1/2 [[i w3, w1 - i w2], [w1 + i w2, -i w3]]
enum class Algebra { sl2, su2, su2_rotated };

std::string to_string(Algebra a);

struct MatrixForm {
  Mat2 X;  // dx part
  Mat2 T;  // dt part
  Algebra algebra = Algebra::sl2;
};

MatrixForm from_forms(const AssociatedForms& forms, Algebra algebra);

// D_t X - D_x T + X T - T X with D_t taken modulo the system.
Mat2 zero_curvature_residual(const MatrixForm& mf, const PdeSystem& sys, const DerivationRules& rules = {});

class NonUnimodular : public std::invalid_argument {
 public:
  explicit NonUnimodular(const Expr& residual);
  const Expr& residual() const { return residual_; }

 private:
  Expr residual_;
};

// X -> A_x A^-1 + A X A^-1, T -> A_t A^-1 + A T A^-1. A must have det 1.
MatrixForm gauge_transform(const MatrixForm& mf, const Mat2& A, const PdeSystem& sys = {},
                           const DerivationRules& rules = {});

// (sqrt2/2) [[1, i], [i, 1]]: unimodular, carries the sl2 packing to the su2_rotated one.
Mat2 standard_gauge();

nlohmann::ordered_json to_json(const Mat2& m);
nlohmann::ordered_json to_json(const MatrixForm& mf);

}  // namespace pss
