#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pss/forms/forms.hpp"
#include "pss/lax/laxzoo.hpp"

namespace pss::ch2 {

// Parse options for this module: m, n first-class.
ParseOptions options();
Expr P(std::string_view text);

// Right-hand sides of m_t and n_t, in first-class variables.
Expr m_flux();
Expr n_flux();

// The same flows written in u, v jets (m = u - u2, n = v - v2).
Expr m_flux_in_jets();
Expr n_flux_in_jets();

struct LinearProblem {
  Mat2 M;  // phi_x = M phi
  Mat2 N;  // phi_t = N phi
  // x and t rules for phi1, phi2, phih1, phih2, p and t rules for m, n.
  DerivationRules rules;
};

const LinearProblem& linear_problem();
const DerivationRules& rules();
// Empty system: in first-class mode D_t only uses rules.
const PdeSystem& system();

// (phih1, phih2) = (phi2, -phi1) turns the adjoint rules into consequences of the direct ones.
// Returns the four residuals (x and t for each hatted symbol).
std::vector<RuleResidual> adjoint_reduction_residuals();

// Gradient of eta with respect to (m, n), common factor dropped.
std::array<Expr, 2> spectral_gradient();

// ((D_x^2 - 1) b, (1 - D_x^2) a).
std::array<Expr, 2> apply_d1(const Expr& a, const Expr& b, const DerivationRules& r = rules());

struct SymmetryTuple {
  Expr u, v, m, n;
  std::optional<Expr> phi1, phi2, p;
};

// reduced: phih = (phi2, -phi1) substituted; otherwise the hatted forms.
SymmetryTuple nonlocal_symmetry(bool reduced);

// (phih1, phih2) -> (phi2, -phi1).
Expr reduce_hatted(const Expr& e);

// Directional derivative of e along the tuple: sum over w of dE/dw_k D_x^k(omega_w).
Expr linearize(const Expr& e, const SymmetryTuple& s, const DerivationRules& r = rules());

// D_t omega_m - linearized m-flux, and the n analogue.
std::array<Expr, 2> check_symmetry_residual(const SymmetryTuple& s);

// omega_m - (1 - D_x^2) omega_u and omega_n - (1 - D_x^2) omega_v.
std::array<Expr, 2> momentum_consistency(const SymmetryTuple& s);

// Tuple extended with omega_1, omega_2, omega_p.
SymmetryTuple prolongation();

struct ProlongationResidual {
  Coord symbol;
  bool t_side = false;
  Expr residual;
};
// For phi1, phi2, p: D_x(omega) - linearized x-rule and D_t(omega) - linearized t-rule.
std::vector<ProlongationResidual> prolongation_residuals(const SymmetryTuple& s);

// Components of the non-evolutionary generator, keyed x, t, u, v, u1, v1, m, n, phi1, phi2, p.
struct VectorField {
  std::vector<std::pair<std::string, Expr>> components;
  const Expr& at(const std::string& key) const;
};
VectorField generator();
// Evolutionary form: characteristic Q_w = V_w - xi w_x, xi = V_x.
VectorField evolutionary_generator();

// d/d(eps) at eps = 0 of each closed-form component of the finite transformation.
struct FirstOrderCheck {
  std::string component;
  Expr derivative;
  Expr expected;
  Expr residual;
  bool pass = false;
};
std::vector<FirstOrderCheck> vector_field_first_order_check();

struct EnlargedState {
  double x = 0, t = 0;
  double u = 0, v = 0, ux = 0, vx = 0;
  double m = 0, n = 0;
  double phi1 = 0, phi2 = 0, p = 0;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct Parameters {
  double eta = 1.0;
  double u0 = 0.75;
  double eps = 1.0;
  double eps_div = 1e-12;
};

// k = sqrt(1 - eta^2 u0); throws DomainError unless 1 - eta^2 u0 > 0 and eta != 0.
double wave_number(double eta, double u0);

// Seed solution (constant u, v with exponential eigenfunctions) at (x, t).
EnlargedState seed_state(double x, double t, double eta, double u0);

// Closed-form finite transformation with parameter eps.
EnlargedState finite_transform(const EnlargedState& s, double eta, double eps, double eps_div = 1e-12);

// V evaluated numerically (u1, v1 components act on ux, vx; x component on x).
std::array<double, 11> generator_numeric(const EnlargedState& s, double eta);

struct FlowSample {
  double eps;
  double rel_err_coarse;
  double rel_err_fine;
  double rel_err_richardson;
  double observed_order;
};
struct FlowReport {
  std::vector<FlowSample> samples;
  double max_richardson_error = 0;
  bool pass = false;
};
// Integrates dX/d(eps) = V(X) from the seed with Heun steps and compares with finite_transform.
FlowReport flow_check(const Parameters& prm, const std::vector<double>& eps_samples, int base_steps = 128,
                      double x = 0.0, double t = 0.0, double tol = 1e-6);

struct ExactSolution {
  double eta, u0, eps, k;
  // Closed forms in (theta, kk, u0).
  Expr u_tilde, v_tilde, m_tilde, n_tilde;

  double theta(double x, double t) const;
  double x_tilde(double x, double t) const;
  double u(double x, double t) const;
  double v(double x, double t) const;
  double m(double x, double t) const;
  double n(double x, double t) const;
  // Smallest magnitude among the denominators 1 + k theta, 1 - k^2 + (1 + k theta)^2.
  double min_denominator(double x, double t) const;
};
ExactSolution exact_solution(double u0, double eta, double eps);

// Variational check of the local Hamiltonian form: returns (-E_v(h) - m_t, E_u(h) - n_t) in u, v jets.
std::array<Expr, 2> check_bihamiltonian_d1();
Expr hamiltonian_density();

}  // namespace pss::ch2
