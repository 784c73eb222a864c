#pragma once

#include <cmath>

namespace hypwarp {

// Quintic smoothstep bump: 0 for t <= 0, 1 for t >= 1, C^2 at the knots.
// Stays well under the envelopes |rho'| < 3 and |rho''| < 12 that the
// deformation bounds assume: sup|rho'| = 15/8, sup|rho''| = 10/sqrt(3).
struct BumpFunction {
  static double value(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return ((6.0 * t - 15.0) * t + 10.0) * t * t * t;
  }
  static double d1(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    const double u = t * (1.0 - t);
    return 30.0 * u * u;
  }
  static double d2(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    return 60.0 * t * (2.0 * t - 1.0) * (t - 1.0);
  }

  static constexpr double sup_d1 = 15.0 / 8.0;
  static double sup_d2() { return 10.0 / std::sqrt(3.0); }
  // interior critical points of rho'': roots of 6t^2 - 6t + 1
  static double d2_argmax_lo() { return (3.0 - std::sqrt(3.0)) / 6.0; }
  static double d2_argmax_hi() { return (3.0 + std::sqrt(3.0)) / 6.0; }
};

// rho_{a,d}(t) = rho(2 (t-a)/d), the two-variable deformation schedule.
struct DeformationParams {
  double a = 0.0;
  double d = 0.0;

  double phase(double t) const { return 2.0 * (t - a) / d; }
  double value(double t) const { return BumpFunction::value(phase(t)); }
  double d1(double t) const { return BumpFunction::d1(phase(t)) * (2.0 / d); }
  double d2(double t) const { return BumpFunction::d2(phase(t)) * (4.0 / (d * d)); }

  double d1_envelope() const { return 6.0 / d; }         // strict bound on |rho'_{a,d}|
  double d2_envelope() const { return 48.0 / (d * d); }  // strict bound on |rho''_{a,d}|
};

// k(t) = sinh^2(t) / e^{2t} = (1 - e^{-2t})^2 / 4, the bridge between the
// sinh and exponential warps. For t >= 1: 1/6 < k < 1/4, 0 < k' < e^{-2t},
// |k''| < 2 e^{-2t}.
struct KFunction {
  static double value(double t) {
    const double e = std::exp(-2.0 * t);
    return (1.0 - e) * (1.0 - e) / 4.0;
  }
  static double d1(double t) {
    const double e = std::exp(-2.0 * t);
    return (1.0 - e) * e;
  }
  static double d2(double t) {
    const double e = std::exp(-2.0 * t);
    return e * (4.0 * e - 2.0);
  }
};

enum class WarpKind { Exp, Sinh, None };

// w(t) with two derivatives; the block metric is w(t) g_t + dt^2.
struct Warp {
  WarpKind kind = WarpKind::Exp;

  double value(double t) const {
    switch (kind) {
      case WarpKind::Exp: return std::exp(2.0 * t);
      case WarpKind::Sinh: { const double s = std::sinh(t); return s * s; }
      case WarpKind::None: return 1.0;
    }
    return 1.0;
  }
  double d1(double t) const {
    switch (kind) {
      case WarpKind::Exp: return 2.0 * std::exp(2.0 * t);
      case WarpKind::Sinh: return std::sinh(2.0 * t);
      case WarpKind::None: return 0.0;
    }
    return 0.0;
  }
  double d2(double t) const {
    switch (kind) {
      case WarpKind::Exp: return 4.0 * std::exp(2.0 * t);
      case WarpKind::Sinh: return 2.0 * std::cosh(2.0 * t);
      case WarpKind::None: return 0.0;
    }
    return 0.0;
  }

  const char* name() const {
    switch (kind) {
      case WarpKind::Exp: return "exp";
      case WarpKind::Sinh: return "sinh";
      case WarpKind::None: return "none";
    }
    return "?";
  }
};

}  // namespace hypwarp
