#pragma once

#include <limits>

#include "hypwarp/common.hpp"

namespace hypwarp {

// The constant chain is evaluated in extended precision: for moderate inputs
// (n = 4, c = 10) it already leaves the double range via the slowness-bound
// coefficients. x86-64 long double carries a 64-bit mantissa and ~1.19e4932
// range, which covers every input the tests exercise; anything beyond raises
// Overflow instead of saturating.
using real_ext = long double;
static_assert(std::numeric_limits<real_ext>::digits >= 64,
              "extended-precision constant chain needs >= 64 mantissa bits");

struct LedgerInputs {
  int n = 2;            // manifold dimension (the sphere factor)
  real_ext c = 2.0L;    // boundedness constant, > 1
  real_ext xi = 0.0L;   // chart excess
  real_ext eps = 0.0L;  // slowness of the family
  real_ext t0 = 1.0L;   // chart center time
  real_ext eps_g = 0.0L;     // slowness of the s-interpolated family
  real_ext c_sphere = 0.0L;  // boundedness of the round metric (defaults to c)
};

// Every named constant of the deviation estimates, evaluated as pure closed
// forms of (n, c, xi, eps, t0). c5/c6 carry eps, c6/c7/c8/c10 carry e^{-t0};
// they are bounds rather than bare constants and are stored as such.
struct ConstantsLedger {
  LedgerInputs in;

  real_ext c1 = 0, c2 = 0, c3 = 0, c4 = 0;
  real_ext c5 = 0, c6 = 0, c7 = 0, c8 = 0;
  real_ext c9 = 0, c10 = 0, c11 = 0, c12 = 0, c13 = 0;
  real_ext max_deviation_bound = 0;  // max{c9..c13}
  real_ext big_c = 0;                // C(c, n, xi)
  real_ext big_c1 = 0;               // C1 = 30 C(6^n c, n, xi)
  real_ext big_c2 = 0;               // C2 = (1 + 12 eps_g) C1
  real_ext big_c2_prime = 0;         // e * C2
  real_ext slowness_bridge_c14 = 0;          // (3/2) n^{3/2} n! c^{n+2}
  real_ext a_prime = 0;              // slowness factor of the closeness converse
  real_ext eps3_coeff_a = 0;         // eps3 = a eps1 + b eps2
  real_ext eps3_coeff_b = 0;
  real_ext hyp_threshold = 0;        // a(eps, n+1, xi) = ln(C1(c_sphere)/eps), needs eps > 0
  real_ext a_threshold = 0;          // ln(2 C2 / eps) + hyp_threshold
  real_ext d_threshold = 0;          // 2 C2 / eps
};

// Building blocks, usable on their own (all validated, Overflow on non-finite).
real_ext const_c3(int n, real_ext c);
real_ext const_c4(int n, real_ext c);
real_ext const_big_c(int n, real_ext c, real_ext xi);   // (27+4xi) e^{2(1+xi)} n^4 c4^4 c3 c^2
real_ext const_big_c1(int n, real_ext c, real_ext xi);  // 30 C(6^n c, n, xi)
real_ext const_bridge_c14(int n, real_ext c);
// eps3 = a*eps1 + b*eps2 decomposition of the slowness bound
void eps3_coefficients(int n, real_ext c, real_ext& a, real_ext& b);

// Throws InputOutOfRange for invalid inputs, Overflow when the chain leaves
// the extended range. eps may be 0; thresholds needing eps > 0 are NaN then.
ConstantsLedger ledger(const LedgerInputs& in);

// Slowness budget of the interpolation family: eps_g(c_g, n) = A(n, c_g + c_sphere) with
// A(n,x) = x (a(n,x') + b(n,x')), x' = [n! x^{n+1}]^n.
real_ext eps_g_bound(int n, real_ext c_g, real_ext c_sphere);

}  // namespace hypwarp
