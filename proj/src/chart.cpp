#include "hypwarp/chart.hpp"

#include <cmath>
#include <sstream>

#include "hypwarp/constants.hpp"
#include "hypwarp/spd.hpp"

namespace hypwarp {

HypChart build_chart(const FamilyOnAtlas& fam, const Vec& ambient_p, double t0, double c, double xi,
                     Warp warp) {
  const int n = fam.atlas->dim();
  const ChartLocation loc = fam.atlas->best_chart(ambient_p);
  if (loc.chart < 0 || loc.margin < 1.0) {
    std::ostringstream msg;
    msg << "no chart with margin >= 1 at the requested center (best margin " << loc.margin << ")";
    fail(ErrorCode::ChartConstructionFailure, msg.str());
  }

  const Interval admissible = ModelBlock::admissible_centers(fam.t, xi);
  if (!(t0 > admissible.lo && t0 < admissible.hi)) {
    std::ostringstream msg;
    msg << "t0 = " << t0 << " outside I(xi) = (" << admissible.lo << ", " << admissible.hi << ")";
    fail(ErrorCode::CenterOutOfRange, msg.str());
  }

  HypChart chart;
  chart.chart_index = loc.chart;
  chart.center_coords = loc.coords;
  chart.center_ambient = ambient_p;
  chart.t0 = t0;
  chart.c = c;
  chart.xi = xi;
  chart.warp = warp;

  Mat g_center = fam.families[loc.chart]->value(loc.coords, t0);
  if (warp.kind == WarpKind::Sinh) {
    g_center *= KFunction::value(t0);
    chart.c_eff = std::pow(6.0, n) * c;
  } else {
    chart.c_eff = c;
  }

  const BoundedFactorization factor = spd_factor(g_center, chart.c_eff);
  chart.a = factor.f_inv;
  chart.c4 = std::sqrt(n * factorial(n) * std::pow(chart.c_eff, n));
  chart.lambda = std::min(0.0, t0 - std::log(n * chart.c4));
  return chart;
}

namespace {

double operator_norm(const Mat& m) {
  Mat mtm(m.n());
  for (int i = 0; i < m.n(); ++i)
    for (int j = 0; j < m.n(); ++j) {
      double s = 0.0;
      for (int k = 0; k < m.n(); ++k) s += m(k, i) * m(k, j);
      mtm(i, j) = s;
    }
  const SymEigen eig = jacobi_eigen(mtm);
  double top = 0.0;
  for (double mu : eig.eigenvalues) top = std::max(top, mu);
  return std::sqrt(top);
}

}  // namespace

WarpedBlockPtr pullback(const FamilyOnAtlas& fam, const HypChart& chart) {
  const Mat contraction = chart.contraction();
  if (!(operator_norm(contraction) < 1.0))
    fail(ErrorCode::DomainEscape, "chart image would leave the unit ball of the base chart");

  const double e2l = std::exp(2.0 * chart.lambda);
  Schedule kappa;
  if (chart.warp.kind == WarpKind::Sinh) {
    const double t0 = chart.t0;
    kappa = Schedule{[e2l, t0](double t) { return e2l * KFunction::value(t + t0); },
                     [e2l, t0](double t) { return e2l * KFunction::d1(t + t0); },
                     [e2l, t0](double t) { return e2l * KFunction::d2(t + t0); }};
  } else {
    kappa = Schedule::constant(e2l);
  }

  const Interval block_t{-(1.0 + chart.xi), 1.0 + chart.xi};
  auto chart_family =
      std::make_shared<PullbackFamily>(fam.families[chart.chart_index], chart.t0, chart.center_coords,
                                       contraction, chart.a, kappa, block_t);
  return std::make_shared<WarpedBlockMetric>(chart_family, Warp{WarpKind::Exp});
}

ChartSupplier chart_supplier(const FamilyOnAtlas& fam, double c, double xi, Warp warp) {
  return [fam, c, xi, warp](const Center& center) {
    return pullback(fam, build_chart(fam, center.ambient, center.t0, c, xi, warp));
  };
}

EtaBoundReport eta_bound_check(const FamilyOnAtlas& fam, double c, double xi,
                               const std::vector<Center>& centers, Warp warp,
                               const RegularityGrid& slowness_grid, const SlownessSampling& sampling,
                               BlockGridSpec deviation_grid) {
  if (!(fam.t.lo > 0.0))
    fail(ErrorCode::InputOutOfRange, "eta_bound_check: the family interval must sit in (0, inf)");

  EtaBoundReport rep;
  rep.big_t = 1.0 + xi + fam.t.lo;

  const BoundednessReport bounded = check_bounded(fam, slowness_grid);
  rep.c_hat = bounded.c_hat;
  const SlownessReport slow = measure_slowness(fam, std::max(c, bounded.c_hat * (1 + 1e-9)),
                                               slowness_grid, sampling);
  rep.eps_hat = slow.direct_eps;

  const ModelBlock block{fam.atlas->dim(), xi};
  for (const Center& center : centers) {
    const HypChart chart = build_chart(fam, center.ambient, center.t0, c, xi, warp);
    const WarpedBlockPtr pulled = pullback(fam, chart);
    const DeviationReport dev = deviation(*pulled, block, deviation_grid);
    rep.per_center.push_back({center, dev.c2_norm, chart.lambda});
    rep.measured_eta = std::max(rep.measured_eta, dev.c2_norm);
  }

  const int n = fam.atlas->dim();
  const real_ext big = (warp.kind == WarpKind::Sinh)
                           ? const_big_c1(n, static_cast<real_ext>(c), static_cast<real_ext>(xi))
                           : const_big_c(n, static_cast<real_ext>(c), static_cast<real_ext>(xi));
  const real_ext eta =
      big * (expl(-static_cast<real_ext>(rep.big_t)) + static_cast<real_ext>(rep.eps_hat));
  rep.bound_eta = static_cast<double>(eta);
  if (eta > static_cast<real_ext>(1e300)) rep.bound_eta = 1e300;
  rep.pass = rep.measured_eta <= rep.bound_eta;
  return rep;
}

}  // namespace hypwarp
