#include <cmath>
#include <iomanip>
#include <ostream>

#include "pss/numgrid/numgrid.hpp"
#include "pss/numgrid/simd.hpp"

namespace pss::numgrid {

namespace {

struct Accum {
  double max = 0;
  double sq = 0;
  void add(double r) {
    const double a = std::abs(r);
    if (!(a <= max)) max = a;  // NaN propagates
    sq += r * r;
  }
  Norms norms(double cell) const { return {max, std::sqrt(sq * cell)}; }
};

}  // namespace

LevelResult fd_residual(const Fields& f, const Grid& g, std::vector<PointRecord>* records) {
  g.validate();
  const int nx = g.nx();
  const int nt = g.nt();
  const int sx = nx + 4;
  const int st = nt + 2;
  const auto& k = simd::active();

  std::vector<double> xs(sx);
  for (int i = 0; i < sx; ++i) xs[i] = g.x(i - 2);
  std::vector<double> U(static_cast<std::size_t>(sx) * st), V(U.size()), M(U.size()), N(U.size()), D(U.size()),
      X(U.size());
  std::vector<FieldValues> row;
  for (int jj = 0; jj < st; ++jj) {
    const double t = g.t(jj - 1);
    try {
      f.row(t, xs, row);
    } catch (const std::exception& e) {
      throw EvaluationError(xs.front(), t, e.what());
    }
    for (int i = 0; i < sx; ++i) {
      const std::size_t at = static_cast<std::size_t>(jj) * sx + i;
      U[at] = row[i].u;
      V[at] = row[i].v;
      M[at] = row[i].m;
      N[at] = row[i].n;
      D[at] = row[i].denominator;
      X[at] = row[i].x_param;
    }
  }

  const std::size_t n = nx;
  std::vector<double> ux(n), uxx(n), uxxx(n), ut(n), uxxt(n), vx(n), vxx(n), vxxx(n), vt(n), vxxt(n), p(n), q(n),
      r1(n), r2(n);
  const double i2h = 1.0 / (2.0 * g.h_x);
  const double ih2 = 1.0 / (g.h_x * g.h_x);
  const double i2h3 = 1.0 / (2.0 * g.h_x * g.h_x * g.h_x);
  const double i2t = 1.0 / (2.0 * g.h_t);

  Accum a1, a2, cm, cn;
  LevelResult out;
  out.h_x = g.h_x;
  out.h_t = g.h_t;
  if (records) records->clear();

  for (int j = 0; j < nt; ++j) {
    auto rowp = [&](const std::vector<double>& A, int jj) { return A.data() + static_cast<std::size_t>(jj) * sx + 2; };
    const double* u0 = rowp(U, j + 1);
    const double* um = rowp(U, j);
    const double* up = rowp(U, j + 2);
    const double* v0 = rowp(V, j + 1);
    const double* vm = rowp(V, j);
    const double* vp = rowp(V, j + 2);

    k.d1(u0, ux.data(), n, i2h);
    k.d2(u0, uxx.data(), n, ih2);
    k.d3(u0, uxxx.data(), n, i2h3);
    k.diff(up, um, ut.data(), n, i2t);
    k.d2(up, p.data(), n, ih2);
    k.d2(um, q.data(), n, ih2);
    k.diff(p.data(), q.data(), uxxt.data(), n, i2t);

    k.d1(v0, vx.data(), n, i2h);
    k.d2(v0, vxx.data(), n, ih2);
    k.d3(v0, vxxx.data(), n, i2h3);
    k.diff(vp, vm, vt.data(), n, i2t);
    k.d2(vp, p.data(), n, ih2);
    k.d2(vm, q.data(), n, ih2);
    k.diff(p.data(), q.data(), vxxt.data(), n, i2t);

    const simd::RowInputs in{u0,        ux.data(), uxx.data(), uxxx.data(), ut.data(), uxxt.data(),
                             v0,        vx.data(), vxx.data(), vxxx.data(), vt.data(), vxxt.data()};
    k.residual(in, r1.data(), r2.data(), n);

    for (std::size_t i = 0; i < n; ++i) {
      double dmin = std::numeric_limits<double>::infinity();
      for (int jj = j; jj <= j + 2; ++jj) {
        const double* d = rowp(D, jj);
        for (int o = -2; o <= 2; ++o) dmin = std::min(dmin, std::abs(d[static_cast<long>(i) + o]));
      }
      const bool masked = dmin < kMaskThreshold;
      ++out.points;
      const double mm = rowp(M, j + 1)[i];
      const double nn = rowp(N, j + 1)[i];
      if (masked) {
        ++out.masked;
      } else {
        a1.add(r1[i]);
        a2.add(r2[i]);
        if (f.has_momentum) {
          cm.add(mm - (u0[i] - uxx[i]));
          cn.add(nn - (v0[i] - vxx[i]));
        }
      }
      if (records) {
        records->push_back({g.x(static_cast<int>(i)), g.t(j), rowp(X, j + 1)[i], u0[i], v0[i], mm, nn, r1[i], r2[i],
                            masked});
      }
    }
  }
  const double cell = g.h_x * g.h_t;
  out.eq1 = a1.norms(cell);
  out.eq2 = a2.norms(cell);
  if (f.has_momentum) {
    out.consistency_m = cm.norms(cell);
    out.consistency_n = cn.norms(cell);
  }
  return out;
}

ResidualReport residual_ladder(const Fields& f, const Grid& coarsest, int rungs) {
  ResidualReport rep;
  rep.label = f.label;
  rep.kernels = simd::active_name();
  Grid g = coarsest;
  for (int r = 0; r < rungs; ++r) {
    rep.ladder.push_back(fd_residual(f, g));
    g = g.refined();
  }
  for (std::size_t i = 1; i < rep.ladder.size(); ++i) {
    rep.pairwise_orders.push_back(std::log2(rep.ladder[i - 1].combined_max() / rep.ladder[i].combined_max()));
  }
  if (rep.ladder.size() >= 3) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(rep.ladder.size());
    for (const auto& l : rep.ladder) {
      const double lx = std::log(l.h_x);
      const double ly = std::log(l.combined_max());
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    rep.order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  return rep;
}

nlohmann::ordered_json to_json(const LevelResult& r) {
  auto norms = [](const Norms& n) { return nlohmann::ordered_json{{"max", n.max}, {"l2", n.l2}}; };
  nlohmann::ordered_json j{{"h_x", r.h_x},       {"h_t", r.h_t},
                           {"points", r.points}, {"masked", r.masked},
                           {"masked_fraction", r.masked_fraction()},
                           {"eq1", norms(r.eq1)}, {"eq2", norms(r.eq2)}};
  if (r.consistency_m) j["consistency_m"] = norms(*r.consistency_m);
  if (r.consistency_n) j["consistency_n"] = norms(*r.consistency_n);
  return j;
}

nlohmann::ordered_json to_json(const ResidualReport& r) {
  nlohmann::ordered_json j{{"label", r.label}, {"kernels", r.kernels}};
  j["ladder"] = nlohmann::ordered_json::array();
  for (const auto& l : r.ladder) j["ladder"].push_back(to_json(l));
  j["pairwise_orders"] = r.pairwise_orders;
  j["order"] = r.order ? nlohmann::ordered_json(*r.order) : nlohmann::ordered_json(nullptr);
  return j;
}

void write_csv(std::ostream& os, const std::vector<PointRecord>& records, const std::string& header_comment) {
  os << "# " << header_comment << "\n";
  os << "x,t,x_param,u,v,m,n,res_m,res_n,masked\n";
  os << std::setprecision(17);
  for (const auto& r : records) {
    os << r.x << ',' << r.t << ',' << r.x_param << ',' << r.u << ',' << r.v << ',' << r.m << ',' << r.n << ','
       << r.r1 << ',' << r.r2 << ',' << (r.masked ? 1 : 0) << '\n';
  }
}

}  // namespace pss::numgrid
