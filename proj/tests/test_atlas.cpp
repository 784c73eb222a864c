#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "hypwarp/atlas.hpp"
#include "hypwarp/common.hpp"

using namespace hypwarp;

TEST_CASE("sphere atlas niceness") {
  const auto atlas = make_sphere_atlas(2);
  CHECK(atlas->niceness_margin() >= 1.0);
  CHECK(atlas->niceness_margin() == doctest::Approx(SphereAtlas::kDomainRadius - 1.0).epsilon(1e-6));

  // the north pole sits at the origin of the south-pole chart
  Vec north{0.0, 0.0, 1.0};
  const ChartLocation loc = atlas->best_chart(north);
  CHECK(loc.chart == 1);
  CHECK(norm(loc.coords) < 1e-12);
  CHECK(loc.margin == doctest::Approx(SphereAtlas::kDomainRadius));

  // equator points are covered by both charts with unit coordinates
  Vec equator{1.0, 0.0, 0.0};
  CHECK(norm(atlas->to_chart(0, equator)) == doctest::Approx(1.0));
  CHECK(norm(atlas->to_chart(1, equator)) == doctest::Approx(1.0));
  CHECK(atlas->best_chart(equator).margin == doctest::Approx(SphereAtlas::kDomainRadius - 1.0));

  // random points: round trip + margin
  Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    const Vec p = rng.unit_vector(3);
    const ChartLocation best = atlas->best_chart(p);
    CHECK(best.margin >= 1.0);
    const Vec back = atlas->to_ambient(best.chart, best.coords);
    CHECK(norm(back - p) < 1e-12);
  }
}

TEST_CASE("transition maps are smooth with nonvanishing jacobian on overlaps") {
  const auto atlas = make_sphere_atlas(2);
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    Vec p = rng.unit_vector(3);
    p[2] *= 0.5;  // keep away from both poles so both charts cover it
    const double r = norm(p);
    for (double& v : p) v /= r;
    const Vec x0 = atlas->to_chart(0, p);
    const Vec x1 = atlas->transition(0, 1, x0);
    CHECK(norm(atlas->to_ambient(1, x1) - p) < 1e-12);
    // numeric jacobian of chart-0 -> chart-1
    const double h = 1e-6;
    Mat jac(2);
    for (int k = 0; k < 2; ++k) {
      Vec xp = x0, xm = x0;
      xp[k] += h;
      xm[k] -= h;
      const Vec fp = atlas->transition(0, 1, xp);
      const Vec fm = atlas->transition(0, 1, xm);
      for (int r2 = 0; r2 < 2; ++r2) jac(r2, k) = (fp[r2] - fm[r2]) / (2.0 * h);
    }
    CHECK(std::fabs(determinant(jac)) > 1e-4);
  }
}

TEST_CASE("torus atlas covers with margin pi/2") {
  const auto atlas = make_torus_atlas(2);
  CHECK(atlas->num_charts() == 4);
  CHECK(atlas->niceness_margin() >= 1.0);
  CHECK(atlas->niceness_margin() == doctest::Approx(3.14159265 / 2.0).epsilon(1e-3));
}

TEST_CASE("round metric: conformal factor 4 at the chart origin") {
  const auto atlas = make_sphere_atlas(2);
  const MetricOnAtlas round = builtin_metric("round", atlas);
  const Mat g0 = round.fields[0]->value({0.0, 0.0});
  CHECK(g0(0, 0) == doctest::Approx(4.0));
  CHECK(g0(1, 1) == doctest::Approx(4.0));
  CHECK(std::fabs(g0(0, 1)) < 1e-15);
}

TEST_CASE("round metric matches great-circle arc length") {
  // the segment x in [0, 1] along an axis maps to a quarter of a great circle
  const auto atlas = make_sphere_atlas(2);
  const MetricOnAtlas round = builtin_metric("round", atlas);
  const int steps = 20000;
  double len = 0.0;
  for (int i = 0; i < steps; ++i) {
    const double x = (i + 0.5) / steps;
    const Mat g = round.fields[1]->value({x, 0.0});
    len += std::sqrt(g(0, 0)) / steps;
  }
  CHECK(len == doctest::Approx(3.14159265358979 / 2.0).epsilon(1e-6));
}

TEST_CASE("unit ellipsoid and zero-amplitude bumpy reduce to round") {
  const auto atlas = make_sphere_atlas(2);
  const MetricOnAtlas round = builtin_metric("round", atlas);
  const MetricOnAtlas ell = builtin_metric("ellipsoid:1,1,1", atlas);
  const MetricOnAtlas bump = builtin_metric("bumpy:0,3", atlas);
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    Vec x{rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)};
    for (int chart = 0; chart < 2; ++chart) {
      CHECK((ell.fields[chart]->value(x) - round.fields[chart]->value(x)).max_abs() < 1e-12);
      CHECK((bump.fields[chart]->value(x) - round.fields[chart]->value(x)).max_abs() < 1e-12);
    }
  }
}

TEST_CASE("ellipsoid metric agrees across charts at shared points") {
  const auto atlas = make_sphere_atlas(2);
  const MetricOnAtlas ell = builtin_metric("ellipsoid:1,1,2", atlas);
  Rng rng(9);
  for (int i = 0; i < 100; ++i) {
    Vec p = rng.unit_vector(3);
    p[2] *= 0.4;
    const double r = norm(p);
    for (double& v : p) v /= r;
    const Vec x0 = atlas->to_chart(0, p);
    const Vec x1 = atlas->to_chart(1, p);
    // compare the quadratic form on a tangent vector pushed through the transition
    const double h = 1e-6;
    Vec u{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    Vec xp = x0, xm = x0;
    for (int k = 0; k < 2; ++k) {
      xp[k] += h * u[k];
      xm[k] -= h * u[k];
    }
    const Vec fp = atlas->transition(0, 1, xp);
    const Vec fm = atlas->transition(0, 1, xm);
    Vec u1{(fp[0] - fm[0]) / (2.0 * h), (fp[1] - fm[1]) / (2.0 * h)};
    const double q0 = bilinear(ell.fields[0]->value(x0), u, u);
    const double q1 = bilinear(ell.fields[1]->value(x1), u1, u1);
    CHECK(q0 == doctest::Approx(q1).epsilon(1e-5));
  }
}

TEST_CASE("metric spec validation") {
  const auto atlas = make_sphere_atlas(2);
  CHECK_THROWS_AS(builtin_metric("ellipsoid:1,1", atlas), Error);     // needs n+1 axes
  CHECK_THROWS_AS(builtin_metric("ellipsoid:1,-1,2", atlas), Error);  // positive axes
  CHECK_THROWS_AS(builtin_metric("bumpy:0.7,3", atlas), Error);       // amp < 0.5
  CHECK_THROWS_AS(builtin_metric("nonsense", atlas), Error);
  try {
    builtin_metric("bumpy:0.7,3", atlas);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InputOutOfRange);
  }
}

TEST_CASE("interpolation family endpoints and SPD guard") {
  const auto atlas = make_sphere_atlas(2);
  const MetricOnAtlas ell = builtin_metric("ellipsoid:1,1,2", atlas);
  const MetricOnAtlas round = builtin_metric("round", atlas);

  FamilyOnAtlas at_zero = family_from_interpolation(ell, Schedule::constant(0.0), {0.0, 1.0});
  FamilyOnAtlas at_one = family_from_interpolation(ell, Schedule::constant(1.0), {0.0, 1.0});
  const Vec x{0.4, -0.2};
  CHECK((at_zero.families[0]->value(x, 0.5) - round.fields[0]->value(x)).max_abs() < 1e-15);
  CHECK((at_one.families[0]->value(x, 0.5) - ell.fields[0]->value(x)).max_abs() < 1e-15);
}
