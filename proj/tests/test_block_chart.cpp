#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "hypwarp/chart.hpp"
#include "hypwarp/constants.hpp"
#include "hypwarp/deform.hpp"
#include "hypwarp/spd.hpp"

using namespace hypwarp;

namespace {

// sigma + delta dt^2, directly as a block metric
class PerturbedTT final : public SpaceMetric {
 public:
  PerturbedTT(int n, double delta) : base_(ModelBlock{n, 0.0}.sigma()), delta_(delta) {}
  int dim() const override { return base_->dim(); }
  SpaceJet jet(const Vec& x) const override {
    SpaceJet j = base_->jet(x);
    j.g(dim() - 1, dim() - 1) += delta_;
    return j;
  }

 private:
  WarpedBlockPtr base_;
  double delta_;
};

// a sphere point away from poles and symmetry axes
Vec generic() { return make_sphere_atlas(2)->to_ambient(0, {0.5, 0.3}); }

}  // namespace

TEST_CASE("model block: sigma at the center is the identity block") {
  const ModelBlock block{2, 0.0};
  const Mat g = block.sigma()->jet({0.0, 0.0, 0.0}).g;
  CHECK((g - Mat::identity(3)).max_abs() < 1e-15);
}

TEST_CASE("deviation: exact model, constant offset, compensated conformal growth") {
  const ModelBlock block{2, 0.0};
  CHECK(deviation(*block.sigma(), block).c2_norm == 0.0);

  const PerturbedTT offset(2, 1e-3);
  const DeviationReport dev = deviation(offset, block);
  CHECK(dev.c0 == doctest::Approx(1e-3).epsilon(1e-12));
  for (double v : dev.d1_sup) CHECK(v < 1e-15);
  for (double v : dev.d2_sup) CHECK(v < 1e-15);
  CHECK(dev.class_count() == 1 + 3 + 6);

  // e^{2t}(1 + delta e^{-2t}) sigma_R + dt^2 deviates by the constant delta
  const double delta = 1e-3;
  const Schedule comp{[=](double t) { return 1.0 + delta * std::exp(-2.0 * t); },
                      [=](double t) { return -2.0 * delta * std::exp(-2.0 * t); },
                      [=](double t) { return 4.0 * delta * std::exp(-2.0 * t); }};
  auto fam = std::make_shared<ScaledFamily>(
      std::make_shared<ConstantFamily>(std::make_shared<FlatMetric>(2), Interval{-1.0, 1.0}), comp);
  WarpedBlockMetric compensated(fam, Warp{WarpKind::Exp});
  const DeviationReport dev2 = deviation(compensated, block);
  CHECK(dev2.c0 == doctest::Approx(delta).epsilon(1e-9));
  for (double v : dev2.d1_sup) CHECK(v < 1e-11);
}

TEST_CASE("deviation grows with the perturbation") {
  const ModelBlock block{2, 0.0};
  double prev = -1.0;
  for (double delta : {1e-4, 1e-3, 1e-2}) {
    const PerturbedTT f(2, delta);
    const double dev = deviation(f, block).c2_norm;
    CHECK(dev > prev);
    prev = dev;
  }
}

TEST_CASE("hyperbolic threshold arithmetic") {
  const double a1 = hyperbolic_threshold(1e-2, 3, 0.0, 4.5);
  const double a2 = hyperbolic_threshold(2e-2, 3, 0.0, 4.5);
  CHECK(a1 - a2 == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  const double c1p = static_cast<double>(const_big_c1(2, 4.5L, 0.0L));
  CHECK(std::fabs(hyperbolic_threshold(c1p, 3, 0.0, 4.5)) < 1e-9);
  // independent evaluation of the closed-form chain
  const double c_eff = std::pow(6.0, 2) * 4.5;
  const double c4 = std::sqrt(2.0 * 2.0 * c_eff * c_eff);
  const double c3 = 3.0 * std::pow(c_eff, 1.5) + 4.5 * 2.0 * std::pow(c_eff, 4.0);
  const double big_c = 27.0 * std::exp(2.0) * 16.0 * std::pow(c4, 4.0) * c3 * c_eff * c_eff;
  CHECK(hyperbolic_threshold(1e-2, 3, 0.0, 4.5) ==
        doctest::Approx(std::log(30.0 * big_c / 1e-2)).epsilon(1e-12));
}

TEST_CASE("chart construction on the round family") {
  const auto sphere = make_sphere_atlas(2);
  const FamilyOnAtlas fam = constant_family(builtin_metric("round", sphere), {2.0, 12.0});
  // center at the chart origin (north pole is chart 1's origin)
  const Vec north{0.0, 0.0, 1.0};
  const HypChart chart = build_chart(fam, north, 5.0, 4.5, 0.0);
  CHECK(chart.chart_index == 1);
  CHECK((chart.a - 0.5 * Mat::identity(2)).max_abs() < 1e-12);  // A = (g(0))^{-1/2} = Id/2
  CHECK(chart.c4 == doctest::Approx(9.0).epsilon(1e-14));
  CHECK(chart.lambda == 0.0);  // t0 = 5 > ln(2 * 9)

  CHECK_THROWS_AS(build_chart(fam, north, 2.5, 4.5, 0.0), Error);   // t0 outside I(xi)
  CHECK_THROWS_AS(build_chart(fam, north, 5.0, 3.5, 0.0), Error);   // |g(0)| = 4 >= c
}

TEST_CASE("flat-torus chart: pure exponential shrink, zero deviation") {
  const auto torus = make_torus_atlas(2);
  const FamilyOnAtlas fam = constant_family(builtin_metric("flat", torus), {2.0, 12.0});
  const Vec origin{0.0, 0.0};
  const HypChart chart = build_chart(fam, origin, 6.0, 1.0 + 1e-9, 0.0);
  CHECK((chart.a - Mat::identity(2)).max_abs() < 1e-12);
  CHECK(chart.lambda == 0.0);
  const WarpedBlockPtr pulled = pullback(fam, chart);
  const ModelBlock block{2, 0.0};
  CHECK(deviation(*pulled, block, BlockGridSpec{9, 17}).c2_norm < 1e-12);
}

TEST_CASE("center normalization at (0,0) is exact") {
  const auto sphere = make_sphere_atlas(2);
  const FamilyOnAtlas fam = constant_family(builtin_metric("ellipsoid:1,1,2", sphere), {2.0, 12.0});
  Rng rng(55);
  for (int i = 0; i < 10; ++i) {
    const Vec p = rng.unit_vector(3);
    const double t0 = rng.uniform(3.5, 10.0);
    const HypChart chart = build_chart(fam, p, t0, 60.0, 0.0, Warp{WarpKind::Exp});
    const Mat f00 = pullback(fam, chart)->jet({0.0, 0.0, 0.0}).g;
    const double e2l = std::exp(2.0 * chart.lambda);
    CHECK(std::fabs(f00(0, 0) - e2l) < 1e-12);
    CHECK(std::fabs(f00(1, 1) - e2l) < 1e-12);
    CHECK(std::fabs(f00(0, 1)) < 1e-12);
    CHECK(f00(2, 2) == 1.0);
  }
}

TEST_CASE("sinh-warp chart normalizes through k(t0)") {
  const auto sphere = make_sphere_atlas(2);
  const FamilyOnAtlas fam = constant_family(builtin_metric("round", sphere), {2.0, 12.0});
  const Vec p{0.0, 0.0, 1.0};
  const HypChart chart = build_chart(fam, p, 6.0, 4.5, 0.0, Warp{WarpKind::Sinh});
  CHECK(chart.c_eff == doctest::Approx(36.0 * 4.5));
  // A absorbs k(t0): A = (k(t0) * 4)^{-1/2} Id
  const double expected = 1.0 / std::sqrt(4.0 * KFunction::value(6.0));
  CHECK(chart.a(0, 0) == doctest::Approx(expected).epsilon(1e-12));
  const Mat f00 = pullback(fam, chart)->jet({0.0, 0.0, 0.0}).g;
  CHECK(f00(0, 0) == doctest::Approx(std::exp(2.0 * chart.lambda)).epsilon(1e-12));
}

TEST_CASE("image-ball invariant over random factorizations") {
  Rng rng(404);
  for (int trial = 0; trial < 10000; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 3);
    const double c = rng.uniform(1.5, 15.0);
    Vec eig(n);
    for (int i = 0; i < n; ++i) eig[i] = rng.uniform(0.95, 0.95 * c);
    Mat g = Mat::diag(eig);
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        const double th = rng.uniform(0.0, 6.283185307179586);
        Mat rot = Mat::identity(n);
        rot(p, p) = std::cos(th);
        rot(q, q) = std::cos(th);
        rot(p, q) = -std::sin(th);
        rot(q, p) = std::sin(th);
        g = congruence(rot, g);
      }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const double s = 0.5 * (g(i, j) + g(j, i));
        g(i, j) = s;
        g(j, i) = s;
      }
    const double t0 = rng.uniform(0.1, 12.0);
    const BoundedFactorization f = spd_factor(g, c);
    const double c4 = std::sqrt(n * factorial(n) * std::pow(c, n));
    const double lambda = std::min(0.0, t0 - std::log(n * c4));
    const Mat m = std::exp(lambda - t0) * f.f_inv;
    // worst stretch of the unit ball
    Mat mtm(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int k = 0; k < n; ++k) s += m(k, i) * m(k, j);
        mtm(i, j) = s;
      }
    double top = 0.0;
    for (double mu : jacobi_eigen(mtm).eigenvalues) top = std::max(top, mu);
    CHECK(std::sqrt(top) < 1.0);
  }
}

TEST_CASE("radial closeness: domain errors and the eps = 0 edge") {
  const auto sphere = make_sphere_atlas(2);
  const FamilyOnAtlas fam = constant_family(builtin_metric("round", sphere), {2.0, 12.0});
  const ChartSupplier supplier = chart_supplier(fam, 84.6 * 1.2, 0.0, Warp{WarpKind::Exp});

  std::vector<Center> bad{{Vec{0.0, 0.0, 1.0}, 2.5}};
  CHECK_THROWS_AS(radially_close_verdict(fam.t, bad, 0.0, 1e-2, supplier, BlockGridSpec{5, 9}), Error);

  std::vector<Center> centers{{Vec{0.0, 0.0, 1.0}, 5.0}};
  const RadialCloseVerdict zero =
      radially_close_verdict(fam.t, centers, 0.0, 0.0, supplier, BlockGridSpec{5, 9});
  CHECK_FALSE(zero.close);
}

TEST_CASE("exact hyperbolic block is radially close at moderate centers") {
  const auto sphere = make_sphere_atlas(2);
  const FamilyOnAtlas fam = constant_family(builtin_metric("round", sphere), {2.0, 12.0});
  // c = 2 keeps lambda = 0 beyond t0 = ln(144 c) ~ 5.7; the factorization
  // hypotheses hold at every center because k g stays near Id/4
  const ChartSupplier supplier = chart_supplier(fam, 2.0, 0.0, Warp{WarpKind::Sinh});
  std::vector<Center> centers{{Vec{0.0, 0.0, 1.0}, 7.0}, {generic(), 9.0}};
  const RadialCloseVerdict verdict =
      radially_close_verdict(fam.t, centers, 0.0, 1e-2, supplier, BlockGridSpec{9, 17});
  CHECK(verdict.close);
  CHECK(verdict.worst_deviation < 1e-2);
}

TEST_CASE("sinh pullback deviation decreases in t0") {
  const auto sphere = make_sphere_atlas(2);
  const FamilyOnAtlas fam = constant_family(builtin_metric("round", sphere), {2.0, 22.0});
  const Vec p = generic();
  const ModelBlock block{2, 0.0};
  double prev = 1e300;
  for (double t0 : {4.0, 6.0, 9.0, 13.0, 18.0}) {
    const HypChart chart = build_chart(fam, p, t0, 100.0, 0.0, Warp{WarpKind::Sinh});
    const double dev = deviation(*pullback(fam, chart), block, BlockGridSpec{9, 17}).c2_norm;
    CHECK(dev < prev);
    prev = dev;
  }
}

TEST_CASE("eta bound holds with huge headroom on the round family") {
  const auto sphere = make_sphere_atlas(2);
  const FamilyOnAtlas fam = constant_family(builtin_metric("round", sphere), {2.0, 12.0});
  RegularityGrid grid;
  grid.space_points = 5;
  grid.t_points = 3;
  // c = 4.5 covers the hypotheses at the chosen centers and keeps lambda = 0
  std::vector<Center> centers{{generic(), 5.0}, {generic(), 8.0}};
  const EtaBoundReport rep = eta_bound_check(fam, 4.5, 0.0, centers, Warp{WarpKind::Exp}, grid,
                                             SlownessSampling{8, 2, 2, 1}, BlockGridSpec{9, 17});
  CHECK(rep.pass);
  CHECK(rep.eps_hat == 0.0);
  CHECK(rep.measured_eta < 0.5);
  CHECK(rep.bound_eta > 1e3);
}
