#include "hypwarp/constants.hpp"

#include <cmath>
#include <sstream>

namespace hypwarp {

namespace {

real_ext factorial_ext(int n) {
  real_ext f = 1.0L;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

void require(bool ok, const char* what) {
  if (!ok) fail(ErrorCode::InputOutOfRange, what);
}

real_ext checked(real_ext v, const char* name) {
  if (!std::isfinite(v)) {
    std::ostringstream msg;
    msg << "constant " << name << " left the extended-precision range";
    fail(ErrorCode::Overflow, msg.str());
  }
  return v;
}

void validate(int n, real_ext c) {
  require(n >= 2, "ledger needs n >= 2");
  require(c > 1.0L, "ledger needs c > 1");
}

}  // namespace

real_ext const_c3(int n, real_ext c) {
  validate(n, c);
  return checked(3.0L * powl(c, 1.5L) + 4.5L * factorial_ext(n) * powl(c, n + 2), "c3");
}

real_ext const_c4(int n, real_ext c) {
  validate(n, c);
  return checked(sqrtl(n * factorial_ext(n) * powl(c, n)), "c4");
}

real_ext const_big_c(int n, real_ext c, real_ext xi) {
  validate(n, c);
  require(xi >= 0.0L, "ledger needs xi >= 0");
  const real_ext c4 = const_c4(n, c);
  const real_ext c3 = const_c3(n, c);
  const real_ext v = (27.0L + 4.0L * xi) * expl(2.0L * (1.0L + xi)) * powl(n, 4) * powl(c4, 4) * c3 * c * c;
  return checked(v, "C");
}

real_ext const_big_c1(int n, real_ext c, real_ext xi) {
  return checked(30.0L * const_big_c(n, powl(6.0L, n) * c, xi), "C1");
}

real_ext const_bridge_c14(int n, real_ext c) {
  validate(n, c);
  return checked(1.5L * powl(n, 1.5L) * factorial_ext(n) * powl(c, n + 2), "c14");
}

void eps3_coefficients(int n, real_ext c, real_ext& a, real_ext& b) {
  validate(n, c);
  const real_ext common = powl(n, 2) * powl(factorial_ext(n) * powl(c, n), 1.5L);
  a = checked(2.0L * const_bridge_c14(n, c) * common, "eps3_coeff_a");
  b = checked(n * common, "eps3_coeff_b");
}

real_ext eps_g_bound(int n, real_ext c_g, real_ext c_sphere) {
  require(c_g > 1.0L, "eps_g_bound needs c_g > 1");
  require(c_sphere > 0.0L, "eps_g_bound needs c_sphere > 0");
  const real_ext x = c_g + c_sphere;
  const real_ext x_prime = checked(powl(factorial_ext(n) * powl(x, n + 1), n), "eps_g x'");
  real_ext a = 0, b = 0;
  eps3_coefficients(n, x_prime, a, b);
  return checked(x * (a + b), "eps_g");
}

ConstantsLedger ledger(const LedgerInputs& raw) {
  LedgerInputs in = raw;
  if (in.c_sphere <= 0.0L) in.c_sphere = in.c;
  validate(in.n, in.c);
  require(in.xi >= 0.0L, "ledger needs xi >= 0");
  require(in.eps >= 0.0L, "ledger needs eps >= 0");
  require(in.t0 > 0.0L, "ledger needs t0 > 0");
  require(in.eps_g >= 0.0L, "ledger needs eps_g >= 0");

  const int n = in.n;
  const real_ext c = in.c;
  const real_ext xi = in.xi;
  const real_ext eps = in.eps;
  const real_ext nfac = factorial_ext(n);
  const real_ext e2xi = expl(2.0L * (1.0L + xi));
  const real_ext decay = expl(-in.t0);

  ConstantsLedger led;
  led.in = in;
  led.c1 = checked(1.5L * nfac * powl(c, (2.0L * n + 3.0L) / 2.0L), "c1");
  led.c2 = checked(powl(c, 1.5L) + 1.5L * nfac * powl(c, n + 2), "c2");
  led.c3 = const_c3(n, c);
  led.c4 = const_c4(n, c);
  led.c5 = checked(3.0L * n * n * led.c4 * led.c4 * c * eps, "c5");
  led.c6 = checked(eps * powl(n, 3) * led.c3 * powl(led.c4, 3) * decay, "c6");
  led.c7 = checked(n * led.c4 * decay + (1.0L + xi) * led.c5, "c7");
  led.c8 = checked(powl(n, 3) * powl(led.c4, 3) * c * decay, "c8");
  led.c9 = checked(e2xi * (sqrtl(static_cast<real_ext>(n)) * led.c8 + led.c7), "c9");
  led.c10 = checked(e2xi * powl(n, 4) * powl(led.c4, 4) * c * c * decay, "c10");
  led.c11 = checked(2.0L * led.c9 + e2xi * led.c5, "c11");
  led.c12 = checked(4.0L * led.c9 + 5.0L * e2xi * led.c5, "c12");
  led.c13 = checked(2.0L * led.c10 + e2xi * led.c6, "c13");
  led.max_deviation_bound = std::max({led.c9, led.c10, led.c11, led.c12, led.c13});
  led.big_c = const_big_c(n, c, xi);
  led.big_c1 = const_big_c1(n, c, xi);
  led.big_c2 = checked((1.0L + 12.0L * in.eps_g) * led.big_c1, "C2");
  led.big_c2_prime = checked(expl(1.0L) * led.big_c2, "C2'");
  led.slowness_bridge_c14 = const_bridge_c14(n, c);
  // a' carries the bridge constant evaluated at c = 2
  led.a_prime = checked(3.0L * e2xi * (n + 6.0L * const_bridge_c14(n, 2.0L)) * n * n *
                            powl(nfac * powl(2.0L, n), 1.5L),
                        "a_prime");
  eps3_coefficients(n, c, led.eps3_coeff_a, led.eps3_coeff_b);

  if (eps > 0.0L) {
    led.hyp_threshold = checked(logl(const_big_c1(n, in.c_sphere, xi) / eps), "hyp_threshold");
    led.a_threshold = checked(logl(2.0L * led.big_c2 / eps) + led.hyp_threshold, "a_threshold");
    led.d_threshold = checked(2.0L * led.big_c2 / eps, "d_threshold");
  } else {
    led.hyp_threshold = std::numeric_limits<real_ext>::quiet_NaN();
    led.a_threshold = std::numeric_limits<real_ext>::quiet_NaN();
    led.d_threshold = std::numeric_limits<real_ext>::quiet_NaN();
  }
  return led;
}

}  // namespace hypwarp
