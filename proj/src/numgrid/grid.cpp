#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include <boost/math/tools/roots.hpp>

#include "pss/numgrid/numgrid.hpp"

namespace pss::numgrid {

namespace {

int count_points(double lo, double hi, double h) { return static_cast<int>(std::lround((hi - lo) / h)) + 1; }

void check_axis(const char* name, double lo, double hi, double h) {
  if (!(h > 0) || !(hi > lo)) throw std::invalid_argument(std::string("grid axis ") + name + ": need min < max and h > 0");
  const double steps = (hi - lo) / h;
  if (std::abs(steps - std::round(steps)) > 1e-9 * std::max(1.0, steps)) {
    throw std::invalid_argument(std::string("grid axis ") + name + ": h does not divide the interval");
  }
  if (std::lround(steps) - 1 < 8) throw std::invalid_argument(std::string("grid axis ") + name + ": fewer than 8 interior points");
}

std::string fmt(double d) {
  std::ostringstream os;
  os << std::setprecision(17) << d;
  return os.str();
}

struct Scan {
  std::vector<double> xs, vals;
  bool increasing = true;
};

Scan scan(const Evaluator& f, double t, double lo, double hi, int samples) {
  if (!(hi > lo) || samples < 2) throw std::invalid_argument("invert_coordinate: empty bracket");
  Scan s;
  s.xs.resize(samples);
  s.vals.resize(samples);
  for (int i = 0; i < samples; ++i) {
    s.xs[i] = lo + (hi - lo) * i / (samples - 1);
    s.vals[i] = f(s.xs[i], t);
  }
  s.increasing = s.vals.back() > s.vals.front();
  for (int i = 1; i < samples; ++i) {
    const double d = s.vals[i] - s.vals[i - 1];
    if (!std::isfinite(s.vals[i]) || !(s.increasing ? d > 0 : d < 0)) {
      std::ostringstream os;
      os << "coordinate map is not strictly monotone near x = " << s.xs[i] << " at t = " << t;
      throw NonMonotone(os.str());
    }
  }
  return s;
}

double solve(const Evaluator& f, const Scan& s, double t, double target) {
  const double vmin = std::min(s.vals.front(), s.vals.back());
  const double vmax = std::max(s.vals.front(), s.vals.back());
  if (!(target >= vmin && target <= vmax)) {
    std::ostringstream os;
    os << "target " << target << " outside sampled range [" << vmin << ", " << vmax << "] at t = " << t;
    throw OutOfRange(os.str());
  }
  // First sample at or beyond the target in the direction of increase.
  std::size_t hi;
  if (s.increasing) {
    hi = std::lower_bound(s.vals.begin(), s.vals.end(), target) - s.vals.begin();
  } else {
    hi = std::lower_bound(s.vals.begin(), s.vals.end(), target, std::greater<>()) - s.vals.begin();
  }
  if (s.vals[hi] == target) return s.xs[hi];
  const std::size_t lo = hi - 1;
  auto g = [&](double x) { return f(x, t) - target; };
  boost::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(g, s.xs[lo], s.xs[hi], s.vals[lo] - target, s.vals[hi] - target,
                                                   boost::math::tools::eps_tolerance<double>(), iters);
  const double a = r.first, b = r.second;
  return std::abs(g(a)) <= std::abs(g(b)) ? a : b;
}

}  // namespace

int Grid::nx() const { return count_points(x_min, x_max, h_x); }
int Grid::nt() const { return count_points(t_min, t_max, h_t); }

void Grid::validate() const {
  check_axis("x", x_min, x_max, h_x);
  check_axis("t", t_min, t_max, h_t);
}

Grid Grid::refined() const {
  Grid g = *this;
  g.h_x /= 2;
  g.h_t /= 2;
  return g;
}

Grid parse_grid(const std::string& spec) {
  auto axis = [&](const std::string& part, double& lo, double& hi, double& h) {
    std::stringstream ss(part);
    std::string a, b, c, extra;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c, ':') || std::getline(ss, extra)) {
      throw std::invalid_argument("grid spec axis must be min:max:h, got '" + part + "'");
    }
    try {
      std::size_t pos = 0;
      lo = std::stod(a, &pos);
      if (pos != a.size()) throw std::invalid_argument(a);
      hi = std::stod(b, &pos);
      if (pos != b.size()) throw std::invalid_argument(b);
      h = std::stod(c, &pos);
      if (pos != c.size()) throw std::invalid_argument(c);
    } catch (const std::logic_error&) {
      throw std::invalid_argument("grid spec has a malformed number in '" + part + "'");
    }
  };
  const auto comma = spec.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("grid spec must be xmin:xmax:h,tmin:tmax:h");
  Grid g;
  axis(spec.substr(0, comma), g.x_min, g.x_max, g.h_x);
  axis(spec.substr(comma + 1), g.t_min, g.t_max, g.h_t);
  g.validate();
  return g;
}

std::string to_string(const Grid& g) {
  return fmt(g.x_min) + ":" + fmt(g.x_max) + ":" + fmt(g.h_x) + "," + fmt(g.t_min) + ":" + fmt(g.t_max) + ":" + fmt(g.h_t);
}

EvaluationError::EvaluationError(double x, double t, const std::string& what)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "evaluation failed at (x, t) = (" << x << ", " << t << "): " << what;
        return os.str();
      }()),
      x_(x),
      t_(t) {}

double invert_coordinate(const Evaluator& x_tilde, double t, double target, double lo, double hi, int samples) {
  return solve(x_tilde, scan(x_tilde, t, lo, hi, samples), t, target);
}

std::vector<double> invert_row(const Evaluator& x_tilde, double t, const std::vector<double>& targets, double lo,
                               double hi, int samples) {
  const Scan s = scan(x_tilde, t, lo, hi, samples);
  std::vector<double> out;
  out.reserve(targets.size());
  for (double target : targets) out.push_back(solve(x_tilde, s, t, target));
  return out;
}

}  // namespace pss::numgrid
