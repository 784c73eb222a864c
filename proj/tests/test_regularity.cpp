#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "hypwarp/constants.hpp"
#include "hypwarp/regularity.hpp"
#include "hypwarp/spd.hpp"

using namespace hypwarp;

namespace {

RegularityGrid small_grid(int space = 7, int t = 5) {
  RegularityGrid g;
  g.space_points = space;
  g.t_points = t;
  return g;
}

const SlownessSampling kSampling{16, 4, 4, 123};

// g_t = Id + s(t) tau for a constant symmetric tau, as a single-chart family
class OffsetFlatMetric final : public SpaceMetric {
 public:
  OffsetFlatMetric(int n, Mat tau) : n_(n), tau_(std::move(tau)) {}
  int dim() const override { return n_; }
  SpaceJet jet(const Vec&) const override {
    SpaceJet j;
    j.g = Mat::identity(n_) + tau_;
    j.d1.assign(n_, Mat(n_));
    j.d2.assign(n_ * n_, Mat(n_));
    return j;
  }

 private:
  int n_;
  Mat tau_;
};

}  // namespace

TEST_CASE("flat torus metric is 1-bounded (floored at 1 + 1e-9)") {
  const auto torus = make_torus_atlas(2);
  const BoundednessReport rep = check_bounded(builtin_metric("flat", torus), small_grid());
  CHECK(rep.c_hat == doctest::Approx(1.0 + 1e-9));
  CHECK(rep.sup_c2 == doctest::Approx(1.0));
  CHECK(rep.inv_det == doctest::Approx(1.0));
}

TEST_CASE("round metric boundedness certificate") {
  const auto sphere = make_sphere_atlas(2);
  const BoundednessReport rep = check_bounded(builtin_metric("round", sphere), small_grid(9));
  CHECK(rep.c_hat >= 4.0);  // g(0) = 4 Id already forces this
  CHECK(std::isfinite(rep.c_hat));
  // certificate behavior around c_hat
  const FamilyOnAtlas fam = constant_family(builtin_metric("round", sphere), {0.0, 1.0});
  RegularityGrid g = small_grid(9);
  g.t_samples = {0.5};
  CHECK_NOTHROW(measure_slowness(patches_of(fam), fam.t, rep.c_hat * 1.01, g, kSampling));
  CHECK_THROWS_AS(measure_slowness(patches_of(fam), fam.t, rep.c_hat * 0.99, g, kSampling), Error);
}

TEST_CASE("ellipsoid is strictly harder to bound than round") {
  const auto sphere = make_sphere_atlas(2);
  const BoundednessReport round_rep = check_bounded(builtin_metric("round", sphere), small_grid(9));
  const BoundednessReport ell_rep = check_bounded(builtin_metric("ellipsoid:1,1,2", sphere), small_grid(9));
  // The C^2 sup certificate is strictly larger for the stretched sphere. The
  // determinant certificate moves the other way (g_ell >= g_round as forms),
  // so the combined c_hat comparison depends on the chart domain radius.
  CHECK(ell_rep.sup_c2 > round_rep.sup_c2);
  CHECK(ell_rep.inv_det <= round_rep.inv_det);
}

TEST_CASE("constant family is eps-slow for every eps") {
  const auto sphere = make_sphere_atlas(2);
  const FamilyOnAtlas fam = constant_family(builtin_metric("round", sphere), {2.0, 4.0});
  const SlownessReport rep = measure_slowness(fam, 1e3, small_grid(), kSampling);
  CHECK(rep.eps1 == 0.0);
  CHECK(rep.eps2 == 0.0);
  CHECK(rep.direct_eps == 0.0);
}

TEST_CASE("linear family: eps1 equals slope times the component sup") {
  const auto sphere = make_sphere_atlas(2);
  const MetricOnAtlas round = builtin_metric("round", sphere);
  const double slope = 0.05;
  const FamilyOnAtlas fam =
      scaled_family(constant_family(round, {0.5, 3.0}), Schedule::linear(slope));
  RegularityGrid grid = small_grid(9, 7);
  const BoundednessReport bounded = check_bounded(patches_of(fam), fam.t, grid);
  const SlownessReport rep =
      measure_slowness(patches_of(fam), fam.t, bounded.c_hat * 1.01, grid, kSampling);
  // d/dt (1 + slope t) g = slope g, so the sup is slope * sup|g_ij| = slope * 4
  CHECK(rep.eps1_k1 == doctest::Approx(slope * 4.0).epsilon(1e-9));
}

TEST_CASE("interpolated family slowness scales like 1/d") {
  const auto sphere = make_sphere_atlas(2);
  const MetricOnAtlas ell = builtin_metric("ellipsoid:1,1,2", sphere);
  auto measure = [&](double d) {
    FamilyOnAtlas fam = family_from_interpolation(ell, Schedule::bump({6.0, d}), {0.0, 1e18});
    RegularityGrid grid = small_grid(5);
    grid.t_samples.clear();
    for (double phase : linspace(0.05, 0.95, 7)) grid.t_samples.push_back(6.0 + 0.5 * d * phase);
    const double gate = check_bounded(patches_of(fam), fam.t, grid).c_hat * 1.01;
    return measure_slowness(patches_of(fam), fam.t, gate, grid, kSampling);
  };
  const SlownessReport r16 = measure(16.0);
  const SlownessReport r32 = measure(32.0);
  const double ratio = r32.eps1_k1 / r16.eps1_k1;
  CHECK(ratio > 0.45);
  CHECK(ratio < 0.55);
  // the schedule's derivative envelope: eps1 <= (6/d) sup|g - sigma|
  const double envelope = 6.0 / 16.0;
  CHECK(r16.eps1_k1 <= envelope * 10.0);  // |g - sigma| stays well under 10 on the grid
}

TEST_CASE("shift, reparametrization, and isometry pullback stability") {
  const auto sphere = make_sphere_atlas(2);
  const MetricOnAtlas ell = builtin_metric("ellipsoid:1,1,2", sphere);
  FamilyOnAtlas fam = family_from_interpolation(ell, Schedule::bump({6.0, 16.0}), {2.0, 16.0});

  // ambient rotation: the round metric is invariant, so the rotated family is
  // built from the rotated embedding and must measure identically
  Mat rot = Mat::identity(3);
  const double th = 0.83;
  rot(0, 0) = std::cos(th);
  rot(1, 1) = std::cos(th);
  rot(0, 1) = -std::sin(th);
  rot(1, 0) = std::sin(th);
  MetricOnAtlas rotated_round;
  rotated_round.atlas = sphere;
  rotated_round.spec = "round-rotated";
  for (int chart = 0; chart < 2; ++chart)
    rotated_round.fields.push_back(linear_image_sphere_metric(chart, 2, rot));
  const FamilyOnAtlas base_round =
      scaled_family(constant_family(builtin_metric("round", sphere), {2.0, 16.0}), Schedule::linear(0.1));
  const FamilyOnAtlas rotated =
      scaled_family(constant_family(rotated_round, {2.0, 16.0}), Schedule::linear(0.1));

  RegularityGrid grid = small_grid(5, 5);
  const double c_gate = check_bounded(patches_of(base_round), base_round.t, grid).c_hat * 1.02;
  const StabilityReport stab =
      verify_shift_reparam_pullback(base_round, 1.0, 2.0, rotated, c_gate, grid, kSampling);
  CHECK(stab.shift_pass);
  CHECK(stab.reparam_pass);
  CHECK(stab.pullback_pass);
  CHECK(stab.reparam_bound == doctest::Approx(6.0 * stab.base_direct).epsilon(1e-12));
}

TEST_CASE("component bounds and direct slowness bracket each other") {
  const auto sphere = make_sphere_atlas(2);
  const MetricOnAtlas ell = builtin_metric("ellipsoid:1,1,2", sphere);
  FamilyOnAtlas fam = family_from_interpolation(ell, Schedule::bump({6.0, 16.0}), {2.0, 16.0});
  RegularityGrid grid = small_grid(5);
  grid.t_samples = linspace(6.5, 13.5, 7);
  const double c_hat = check_bounded(patches_of(fam), fam.t, grid).c_hat;
  const SlownessReport rep = measure_slowness(patches_of(fam), fam.t, c_hat * (1 + 1e-9), grid, kSampling);

  // direct ratios never exceed the assembled bound
  CHECK(rep.direct_eps <= rep.eps3 * (1 + 1e-9));
  // and the component sups are controlled by the direct ratios
  CHECK(rep.eps1 <= 3.0 * rep.direct_eps * c_hat * (1 + 1e-9) + 1e-15);
  const double c3 = static_cast<double>(const_c3(2, static_cast<real_ext>(c_hat)));
  CHECK(rep.eps2 <= rep.direct_eps * c3 * (1 + 1e-9) + 1e-15);
}

TEST_CASE("family values pass the bounded factorization at the certificate") {
  const auto sphere = make_sphere_atlas(2);
  const MetricOnAtlas ell = builtin_metric("ellipsoid:1,1,2", sphere);
  FamilyOnAtlas fam = family_from_interpolation(ell, Schedule::bump({6.0, 16.0}), {2.0, 16.0});
  RegularityGrid grid = small_grid(5);
  grid.t_samples = linspace(6.0, 14.0, 5);
  const double c = check_bounded(patches_of(fam), fam.t, grid).c_hat * (1.0 + 1e-9);
  for (int chart = 0; chart < 2; ++chart)
    for (const Vec& x : grid_points(sphere->chart_domain(chart), 5))
      for (double t : grid.t_samples)
        CHECK_NOTHROW(spd_factor(fam.families[chart]->value(x, t), c));
}

TEST_CASE("closeness converse: exact hyperbolic block") {
  auto flat_fam = std::make_shared<ConstantFamily>(std::make_shared<FlatMetric>(2), Interval{-1.0, 1.0});
  const ConverseReport rep = converse_close_implies_slow(flat_fam, 1e-3, 0.0, small_grid(), kSampling);
  CHECK(rep.measured_deviation < 1e-12);
  CHECK(rep.measured_direct_eps == 0.0);
  CHECK(rep.slowness_within_bound);
  CHECK(rep.threshold_met);  // 1e-3 < 1/(36 * 2 * e^2) ~ 1.88e-3
  CHECK(rep.two_bounded);
}

TEST_CASE("closeness converse: e^{-2t} tau block matches the derivative budget") {
  Mat tau(2);
  tau(0, 0) = 1e-3;
  tau(0, 1) = 4e-4;
  tau(1, 0) = 4e-4;
  tau(1, 1) = -2e-4;
  const double tau_sup = 1e-3;
  auto flat = std::make_shared<FlatMetric>(2);
  auto offset = std::make_shared<OffsetFlatMetric>(2, tau);
  const Schedule decay{[](double t) { return std::exp(-2.0 * t); },
                       [](double t) { return -2.0 * std::exp(-2.0 * t); },
                       [](double t) { return 4.0 * std::exp(-2.0 * t); }};
  auto fam = std::make_shared<InterpolatedFamily>(flat, offset, decay, Interval{-1.0, 1.0});

  // the block e^{2t} g_t + dt^2 differs from sigma by the constant tau
  auto block = std::make_shared<WarpedBlockMetric>(fam, Warp{WarpKind::Exp});
  const ModelBlock model{2, 0.0};
  const DeviationReport dev = deviation(*block, model, BlockGridSpec{9, 17});
  CHECK(dev.c2_norm == doctest::Approx(tau_sup).epsilon(1e-9));

  const ConverseReport rep = converse_close_implies_slow(fam, tau_sup, 0.0, small_grid(7, 9), kSampling);
  const double e2 = std::exp(2.0);
  // measured |d_t g| approaches 2 e^{2(1+xi)} |tau| and stays under 3 e^{2(1+xi)} eps
  RegularityGrid grid = small_grid(7, 9);
  std::vector<FamilyPatch> patches{{fam, Domain::ball(2, 1.0)}};
  const SlownessReport slow =
      measure_slowness(patches, {-1.0, 1.0}, 3.0, grid, kSampling);
  CHECK(slow.eps1_k1 <= 3.0 * e2 * tau_sup);
  CHECK(slow.eps1_k1 >= 1.9 * e2 * tau_sup);
  CHECK(rep.slowness_within_bound);
}

TEST_CASE("closeness converse: threshold arithmetic for n = 2, xi = 0") {
  auto flat_fam = std::make_shared<ConstantFamily>(std::make_shared<FlatMetric>(2), Interval{-1.0, 1.0});
  const ConverseReport rep = converse_close_implies_slow(flat_fam, 1e-4, 0.0, small_grid(), kSampling);
  CHECK(rep.two_bounded_threshold == doctest::Approx(1.0 / (36.0 * 2.0 * std::exp(2.0))).epsilon(1e-12));
  CHECK(rep.threshold_met);
  CHECK(rep.two_bounded);

  const ConverseReport no = converse_close_implies_slow(flat_fam, 0.1, 0.0, small_grid(), kSampling);
  CHECK_FALSE(no.threshold_met);
  CHECK_FALSE(no.two_bounded);
}
