#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pss/lax/laxzoo.hpp"

namespace pss {

class HypothesisViolation : public std::invalid_argument {
 public:
  HypothesisViolation(std::string condition, const Expr& residual, const std::string& detail = "");
  const std::string& condition() const { return condition_; }
  const Expr& residual() const { return residual_; }

 private:
  std::string condition_;
  Expr residual_;
};

// Data for the constructions with f21 = eta (eta_in_omega2) or f31 = eta (eta_in_omega3).
// g, h depend on (x, t, u - u2, v - v2); L has orders <= (m-1, n-1), M orders <= (m-2, n-2).
struct SurfaceData {
  Expr g;
  Expr h;
  Expr L;
  Expr M;
  Expr eta;
  int delta = 1;
  int m = 3;
  int n = 3;
};

// Data for third-order systems u_t - u_{2,t} = A u3 + ..., with f12 = -A g + L1.
// g, h depend on (x, u - u2, v - v2); A, L1, N1, M on (x, u, u1, v, v1).
struct ThirdOrderData {
  Expr g;
  Expr h;
  Expr A;
  Expr L1;
  Expr N1;
  Expr M;
  Expr eta;
  int delta = 1;
};

struct Construction {
  PdeSystem system;
  AssociatedForms forms;
  std::optional<MatrixForm> lax;
  Expr N;
};

// f = [[g, L], [eta, M], [h, N]] with N = (D_x M + h L)/g.
Construction build_eta_in_omega2(const SurfaceData& in);
// f = [[g, L], [h, N], [eta, M]] with N = (delta D_x M + h L)/g, M non-constant.
Construction build_eta_in_omega3(const SurfaceData& in);
// f = [[g, -A g + L1], [eta, M], [h, -A h + N1]]; needs D_x M + h L1 - g N1 = 0.
Construction build_third_order_eta_in_omega2(const ThirdOrderData& in);
// f = [[g, -A g + L1], [h, -A h + N1], [eta, M]]; needs delta D_x M + h L1 - g N1 = 0.
Construction build_third_order_eta_in_omega3(const ThirdOrderData& in);

// The closed third-order right-hand sides, written out in terms of g, h, W, A, L1, N1, M.
// Valid when g, h, A, L1, N1, M carry no explicit x dependence.
std::pair<Expr, Expr> third_order_rhs_eta_in_omega2(const ThirdOrderData& in);
std::pair<Expr, Expr> third_order_rhs_eta_in_omega3(const ThirdOrderData& in);

// (g N1 - h L1)_{u2 v1} - (g N1 - h L1)_{u1 v2}.
Expr mixed_derivative_constraint(const ThirdOrderData& in);

// W = g_u h_v - g_v h_u.
Expr wronskian(const Expr& g, const Expr& h);

// F and G are linear in u_m and v_n.
bool is_linear_in_top_jets(const PdeSystem& sys);

// Highest u-jet and v-jet orders that occur in F, G (at least 2).
std::pair<int, int> system_orders(const Expr& F, const Expr& G);

// Substitutes v_k -> D_x^k(image) in F and G.
std::pair<Expr, Expr> reduce_system(const PdeSystem& sys, const Expr& image);

enum class EtaSlot { omega2, omega3 };

struct CatalogEntry {
  std::string name;
  std::string title;
  PdeSystem system;
  AssociatedForms forms;
  // Linear problem as printed alongside the forms.
  std::optional<MatrixForm> lax;
  // Constant that fills the f21 slot when the entry is read as a construction.
  Expr construction_eta;
  EtaSlot eta_slot = EtaSlot::omega2;
};

const std::vector<CatalogEntry>& catalog();
const CatalogEntry* find_catalog_entry(const std::string& name);

// Reads (g, h, L, M) off an entry with f21 constant.
SurfaceData surface_data(const CatalogEntry& entry);

}  // namespace pss
