#include "hypwarp/deform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace hypwarp {

DeformedMetric deform(const MetricOnAtlas& g, DeformationParams params) {
  if (!(params.a > 0.0) || !(params.d > 0.0))
    fail(ErrorCode::InputOutOfRange, "deform: a and d must be positive");
  DeformedMetric out;
  out.g = g;
  out.params = params;
  out.family =
      family_from_interpolation(g, Schedule::bump(params), {0.0, std::numeric_limits<double>::infinity()});
  return out;
}

FamilyOnAtlas k_scaled_family(const FamilyOnAtlas& fam) {
  const Schedule k{[](double t) { return KFunction::value(t); }, [](double t) { return KFunction::d1(t); },
                   [](double t) { return KFunction::d2(t); }};
  return scaled_family(fam, k);
}

KBoundsReport k_bounds_check(Interval t_range, int points) {
  if (!(t_range.lo >= 1.0)) fail(ErrorCode::InputOutOfRange, "k_bounds_check needs t >= 1");
  KBoundsReport rep;
  rep.worst_margin = 1e300;
  // Extended precision: for t near 20 the strict gap 1/4 - k is ~e^{-2t},
  // which double arithmetic rounds away but the inequality line still claims.
  for (double t : linspace(t_range.lo, t_range.hi, points)) {
    const long double e2t = expl(-2.0L * static_cast<long double>(t));
    const long double k = (1.0L - e2t) * (1.0L - e2t) / 4.0L;
    const long double k1 = (1.0L - e2t) * e2t;
    const long double k2 = e2t * (4.0L * e2t - 2.0L);
    const long double margins[] = {k - 1.0L / 6.0L,
                                   0.25L - k,
                                   k1,
                                   e2t - k1,
                                   0.5L - e2t,
                                   fabsl(k2) > 0.0L ? fabsl(k2) : -1.0L,
                                   2.0L * e2t - fabsl(k2),
                                   1.0L - 2.0L * e2t};
    for (long double m : margins) rep.worst_margin = std::min(rep.worst_margin, static_cast<double>(m));
    ++rep.samples;
  }
  rep.pass = rep.worst_margin > 0.0;
  return rep;
}

DeformationSlownessReport deformation_slowness_bound(const MetricOnAtlas& g, DeformationParams params,
                                                     const RegularityGrid& grid,
                                                     const SlownessSampling& sampling) {
  if (!(params.d >= 8.0)) fail(ErrorCode::InputOutOfRange, "deformation_slowness_bound assumes d >= 8");

  DeformationSlownessReport rep;

  // slowness of the s-interpolated family over s in [0, 1]
  FamilyOnAtlas s_family = family_from_interpolation(g, Schedule::linear(1.0, 0.0), {0.0, 1.0});
  {
    RegularityGrid s_grid = grid;
    s_grid.t_samples = linspace(0.0, 1.0, grid.t_points);
    const double c_gate = check_bounded(s_family, s_grid).c_hat * (1.0 + 1e-9);
    rep.eps_g = measure_slowness(s_family, c_gate, s_grid, sampling).direct_eps;
  }
  rep.bound = 12.0 / params.d * rep.eps_g;

  // slowness of the t-family across the transition zone
  FamilyOnAtlas t_family = family_from_interpolation(g, Schedule::bump(params),
                                                     {0.0, std::numeric_limits<double>::infinity()});
  {
    RegularityGrid t_grid = grid;
    t_grid.t_samples.clear();
    for (double phase : linspace(0.02, 0.98, grid.t_points))
      t_grid.t_samples.push_back(params.a + 0.5 * params.d * phase);
    const double c_gate = check_bounded(patches_of(t_family), t_family.t, t_grid).c_hat * (1.0 + 1e-9);
    rep.measured = measure_slowness(patches_of(t_family), t_family.t, c_gate, t_grid, sampling).direct_eps;
  }

  rep.pass = rep.measured <= rep.bound * 1.05 + 1e-12;
  return rep;
}

std::vector<Vec> sphere_center_points(const AtlasPtr& atlas, int random_count, std::uint64_t seed) {
  const int m = atlas->ambient_dim();
  std::vector<Vec> pts;
  Vec north(m, 0.0), south(m, 0.0), equator(m, 0.0);
  north[m - 1] = 1.0;
  south[m - 1] = -1.0;
  equator[0] = 1.0;
  pts.push_back(north);
  pts.push_back(south);
  pts.push_back(equator);
  Rng rng(seed ^ 0xceb7e55ull);
  for (int i = 0; i < random_count; ++i) pts.push_back(rng.unit_vector(m));
  return pts;
}

BallCloseReport ball_close_verdict(const DeformedMetric& h, double eps, const BallCloseOptions& opt) {
  const double a = h.params.a;
  const double d = h.params.d;
  BallCloseReport rep;
  rep.eps = eps;
  rep.required_radius = opt.hyp_threshold + 1.0 + opt.xi;
  rep.radius_ok = a > rep.required_radius;
  if (opt.enforce_radius && !rep.radius_ok) {
    std::ostringstream msg;
    msg << "ball_close_verdict needs a > " << rep.required_radius << ", got a = " << a;
    fail(ErrorCode::RadiusTooSmall, msg.str());
  }

  // Condition (1): identically the hyperbolic warp inside B_a, checked by the
  // rho = 0 short-circuit plus bitwise agreement of the family with the round
  // metric at sampled points.
  {
    const MetricOnAtlas round = builtin_metric("round", h.g.atlas);
    Rng rng(opt.seed ^ 0xba11ull);
    rep.condition1_exact = true;
    for (int i = 0; i < opt.condition1_samples; ++i) {
      const double t = rng.uniform(0.05, a * (1.0 - 1e-12));
      if (h.params.value(t) != 0.0) {
        rep.condition1_exact = false;
        break;
      }
      const Vec p = rng.unit_vector(h.g.atlas->ambient_dim());
      const ChartLocation loc = h.g.atlas->best_chart(p);
      const Mat fam_val = h.family.families[loc.chart]->value(loc.coords, t);
      const Mat round_val = round.fields[loc.chart]->value(loc.coords);
      if ((fam_val - round_val).max_abs() != 0.0) {
        rep.condition1_exact = false;
        break;
      }
    }
  }

  // Condition (2): radially eps-close outside B_{a - 1 - xi}.
  const double edge = std::max(a - 1.0 - opt.xi, 1.0 + opt.xi);
  std::set<double> t0_set;
  auto add_t0 = [&](double t0) {
    if (t0 > 1.0 + opt.xi + 1e-9 && t0 <= 1e300) t0_set.insert(t0);
  };
  for (double delta : {0.1, 0.5, 1.0, 2.0}) add_t0(edge + delta);
  for (double phase : {0.05, 0.25, 0.5, 0.75, 0.95}) add_t0(a + 0.5 * d * phase);
  for (double beyond : {1.0, 5.0}) add_t0(a + 0.5 * d + beyond);

  const std::vector<Vec> points = sphere_center_points(h.family.atlas, opt.sphere_samples, opt.seed);
  std::vector<Center> centers;
  for (double t0 : t0_set)
    for (const Vec& p : points) centers.push_back({p, t0});
  rep.centers = centers;

  const ChartSupplier supplier = chart_supplier(h.family, opt.c, opt.xi, Warp{WarpKind::Sinh});
  rep.radial = radially_close_verdict(h.family.t, centers, opt.xi, eps, supplier, opt.grid);

  rep.verdict = rep.condition1_exact && rep.radial.close;
  return rep;
}

}  // namespace hypwarp
