#pragma once

#include <functional>
#include <iosfwd>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pss/chsym/chsym.hpp"

namespace pss::numgrid {

struct Grid {
  double x_min = -8, x_max = 8;
  double t_min = -1, t_max = 1;
  double h_x = 1.0 / 32, h_t = 1.0 / 32;

  int nx() const;  // points on the closed x interval
  int nt() const;
  double x(int i) const { return x_min + i * h_x; }
  double t(int j) const { return t_min + j * h_t; }
  // Throws std::invalid_argument unless spacing is uniform and each axis has >= 8 interior points.
  void validate() const;
  Grid refined() const;
};

// "xmin:xmax:h,tmin:tmax:h"
Grid parse_grid(const std::string& spec);
std::string to_string(const Grid& g);

class NonMonotone : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};
class OutOfRange : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(double x, double t, const std::string& what);
  double x() const { return x_; }
  double t() const { return t_; }

 private:
  double x_, t_;
};

using Evaluator = std::function<double(double x, double t)>;

// Solves x_tilde(x, t) = target for x in [lo, hi] after checking monotonicity on `samples` points.
double invert_coordinate(const Evaluator& x_tilde, double t, double target, double lo = -50.0, double hi = 50.0,
                         int samples = 2048);
// Same for an increasing list of targets sharing one monotonicity scan.
std::vector<double> invert_row(const Evaluator& x_tilde, double t, const std::vector<double>& targets, double lo,
                               double hi, int samples = 8192);

struct FieldValues {
  double u = 0, v = 0;
  double m = std::numeric_limits<double>::quiet_NaN();
  double n = std::numeric_limits<double>::quiet_NaN();
  double denominator = std::numeric_limits<double>::infinity();
  double x_param = std::numeric_limits<double>::quiet_NaN();
};

// Evaluates a whole row at fixed t.
struct Fields {
  std::string label;
  std::function<void(double t, const std::vector<double>& xs, std::vector<FieldValues>& out)> row;
  bool has_momentum = false;
};

Fields constant_fields(double u0, double v0);
// Closed-form solution in the transformed coordinate, obtained by inverting x -> x_tilde.
Fields parametric_fields(const ch2::ExactSolution& sol);
// The same closed forms read as functions of the untransformed x.
Fields untilded_fields(const ch2::ExactSolution& sol);
Fields perturbed(Fields f, double amplitude);

inline constexpr double kMaskThreshold = 1e-8;

struct Norms {
  double max = 0;
  double l2 = 0;
};

struct LevelResult {
  double h_x = 0, h_t = 0;
  Norms eq1, eq2;
  std::optional<Norms> consistency_m, consistency_n;
  long points = 0;
  long masked = 0;
  double masked_fraction() const { return points ? static_cast<double>(masked) / points : 0.0; }
  double combined_max() const { return eq1.max > eq2.max ? eq1.max : eq2.max; }
};

struct PointRecord {
  double x, t, x_param, u, v, m, n, r1, r2;
  bool masked;
};

LevelResult fd_residual(const Fields& f, const Grid& g, std::vector<PointRecord>* records = nullptr);

struct ResidualReport {
  std::string label;
  std::vector<LevelResult> ladder;
  std::optional<double> order;         // least-squares slope of log(max residual) against log(h)
  std::vector<double> pairwise_orders;  // log2 of successive ratios
  std::string kernels;
};

ResidualReport residual_ladder(const Fields& f, const Grid& coarsest, int rungs = 3);

nlohmann::ordered_json to_json(const LevelResult& r);
nlohmann::ordered_json to_json(const ResidualReport& r);

void write_csv(std::ostream& os, const std::vector<PointRecord>& records, const std::string& header_comment);

}  // namespace pss::numgrid
