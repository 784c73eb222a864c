#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cfloat>
#include <cmath>

#include "hypwarp/common.hpp"
#include "hypwarp/constants.hpp"

using namespace hypwarp;

namespace {

ConstantsLedger make(int n, double c, double xi, double eps, double t0, double eps_g = 0.0,
                     double c_sphere = 0.0) {
  LedgerInputs in;
  in.n = n;
  in.c = c;
  in.xi = xi;
  in.eps = eps;
  in.t0 = t0;
  in.eps_g = eps_g;
  in.c_sphere = c_sphere;
  return ledger(in);
}

}  // namespace

TEST_CASE("worked example n=2, c=2, xi=0") {
  const ConstantsLedger led = make(2, 2.0, 0.0, 0.0, 5.0);
  // c3 = 3 * 2^{3/2} + (9/2) * 2 * 2^4
  CHECK(static_cast<double>(led.c3) == doctest::Approx(152.48528137423857).epsilon(1e-12));
  CHECK(static_cast<double>(led.c4) == doctest::Approx(4.0).epsilon(1e-14));
  // C = 27 e^2 * 16 * 256 * c3 * 4
  const double expected_c = 27.0 * std::exp(2.0) * 16.0 * 256.0 * 152.48528137423857 * 4.0;
  CHECK(static_cast<double>(led.big_c) == doctest::Approx(expected_c).epsilon(1e-12));
  CHECK(static_cast<double>(led.big_c) == doctest::Approx(4.98e8).epsilon(2e-3));
}

TEST_CASE("chart-construction constants for the round example") {
  const ConstantsLedger led = make(2, 4.5, 0.0, 0.0, 5.0);
  CHECK(static_cast<double>(led.c4) == doctest::Approx(9.0).epsilon(1e-14));  // sqrt(2*2*4.5^2)
}

TEST_CASE("excess ratio: C(xi=1)/C(xi=0) = (31/27) e^2") {
  const ConstantsLedger led0 = make(2, 2.0, 0.0, 0.0, 5.0);
  const ConstantsLedger led1 = make(2, 2.0, 1.0, 0.0, 5.0);
  CHECK(static_cast<double>(led1.big_c / led0.big_c) ==
        doctest::Approx(31.0 / 27.0 * std::exp(2.0)).epsilon(1e-12));
}

TEST_CASE("dominance of the per-class bounds by C (e^{-t0} + eps)") {
  Rng rng(77);
  for (int i = 0; i < 2000; ++i) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 3);
    const ConstantsLedger led =
        make(n, rng.uniform(1.05, 30.0), rng.uniform(0.0, 2.0), rng.uniform(0.0, 5.0), rng.uniform(0.05, 15.0));
    const real_ext bound = led.big_c * (expl(-led.in.t0) + led.in.eps);
    CHECK(led.max_deviation_bound <= bound);
  }
}

TEST_CASE("monotonicity of C, C1, C2 in c and xi") {
  real_ext prev_c = 0, prev_c1 = 0;
  for (double c : {1.5, 2.0, 3.0, 5.0, 9.0}) {
    const ConstantsLedger led = make(2, c, 0.5, 0.1, 3.0, 0.2);
    CHECK(led.big_c >= prev_c);
    CHECK(led.big_c1 >= prev_c1);
    prev_c = led.big_c;
    prev_c1 = led.big_c1;
  }
  real_ext prev = 0;
  for (double xi : {0.0, 0.5, 1.0, 2.0}) {
    const ConstantsLedger led = make(2, 2.0, xi, 0.1, 3.0, 0.2);
    CHECK(led.big_c2 >= prev);
    prev = led.big_c2;
  }
}

TEST_CASE("C2 (e^{-b} + 1/d) dominates C1 (e^{-b} + 12 eps_g / d)") {
  const ConstantsLedger led = make(2, 3.0, 0.0, 0.1, 3.0, 0.7);
  for (double b : {0.5, 1.0, 4.0, 10.0})
    for (double d : {1.0, 8.0, 64.0, 1e4}) {
      const real_ext lhs = led.big_c2 * (expl(-static_cast<real_ext>(b)) + 1.0L / d);
      const real_ext rhs = led.big_c1 * (expl(-static_cast<real_ext>(b)) + 12.0L * 0.7L / d);
      CHECK(lhs >= rhs);
    }
}

TEST_CASE("threshold identities") {
  const ConstantsLedger a = make(2, 2.0, 0.0, 0.01, 3.0, 0.3, 4.5);
  const ConstantsLedger b = make(2, 2.0, 0.0, 0.02, 3.0, 0.3, 4.5);
  CHECK(static_cast<double>(a.hyp_threshold - b.hyp_threshold) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(static_cast<double>(a.d_threshold * a.in.eps) ==
        doctest::Approx(static_cast<double>(2.0L * a.big_c2)).epsilon(1e-15));
  // eps = C1' makes the radius threshold vanish
  const real_ext c1p = const_big_c1(2, 4.5L, 0.0L);
  LedgerInputs in;
  in.n = 2;
  in.c = 2.0L;
  in.eps = c1p;
  in.t0 = 3.0L;
  in.c_sphere = 4.5L;
  CHECK(std::fabs(static_cast<double>(ledger(in).hyp_threshold)) < 1e-12);
}

TEST_CASE("extended precision is genuinely wider than double") {
  // the interpolation slowness bound for n=4, c=10 leaves the double range
  const real_ext eg = eps_g_bound(4, 10.0L, 10.0L);
  CHECK(std::isfinite(eg));
  CHECK(eg > static_cast<real_ext>(DBL_MAX));
}

TEST_CASE("eps3 decomposition matches the assembled constant") {
  real_ext a = 0, b = 0;
  eps3_coefficients(3, 2.5L, a, b);
  const real_ext c14 = const_bridge_c14(3, 2.5L);
  real_ext nfac = 6.0L;
  const real_ext common = 9.0L * powl(nfac * powl(2.5L, 3), 1.5L);
  CHECK(static_cast<double>(a) == doctest::Approx(static_cast<double>(2.0L * c14 * common)).epsilon(1e-14));
  CHECK(static_cast<double>(b) == doctest::Approx(static_cast<double>(3.0L * common)).epsilon(1e-14));
}

TEST_CASE("input validation and overflow reporting") {
  CHECK_THROWS_AS(make(1, 2.0, 0.0, 0.0, 1.0), Error);
  CHECK_THROWS_AS(make(2, 1.0, 0.0, 0.0, 1.0), Error);
  CHECK_THROWS_AS(make(2, 2.0, -0.1, 0.0, 1.0), Error);
  CHECK_THROWS_AS(make(2, 2.0, 0.0, -1.0, 1.0), Error);
  CHECK_THROWS_AS(make(2, 2.0, 0.0, 0.0, 0.0), Error);
  try {
    make(8, 1e300, 0.0, 0.0, 1.0);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Overflow);
  }
}
