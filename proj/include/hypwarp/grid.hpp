#pragma once

#include "hypwarp/mat.hpp"

namespace hypwarp {

// Chart domains are open balls or boxes; grids sample them inclusively up to
// a hair inside the boundary so that sup scans stay inside the open set.
struct Domain {
  enum class Kind { Ball, Box };
  Kind kind = Kind::Ball;
  int n = 0;
  double radius = 1.0;
  Vec lo, hi;

  static Domain ball(int n, double r) {
    Domain d;
    d.kind = Kind::Ball;
    d.n = n;
    d.radius = r;
    return d;
  }
  static Domain box(Vec lo, Vec hi) {
    Domain d;
    d.kind = Kind::Box;
    d.n = static_cast<int>(lo.size());
    d.lo = std::move(lo);
    d.hi = std::move(hi);
    return d;
  }

  int dim() const { return n; }

  // distance from x to the complement; negative when x is outside
  double margin(const Vec& x) const {
    if (kind == Kind::Ball) return radius - norm(x);
    double m = 1e300;
    for (int i = 0; i < n; ++i) m = std::min({m, x[i] - lo[i], hi[i] - x[i]});
    return m;
  }

  bool contains(const Vec& x) const { return margin(x) > 0.0; }
};

std::vector<double> linspace(double a, double b, int count);

// Axis-product grid over the domain's bounding box, pruned to the domain
// (shrunk by a relative 1e-9 so no sample sits on the boundary).
std::vector<Vec> grid_points(const Domain& dom, int per_axis);

}  // namespace hypwarp
