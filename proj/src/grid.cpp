#include "hypwarp/grid.hpp"

namespace hypwarp {

std::vector<double> linspace(double a, double b, int count) {
  std::vector<double> v(count);
  if (count == 1) {
    v[0] = 0.5 * (a + b);
    return v;
  }
  for (int i = 0; i < count; ++i) v[i] = a + (b - a) * static_cast<double>(i) / (count - 1);
  return v;
}

std::vector<Vec> grid_points(const Domain& dom, int per_axis) {
  const int n = dom.dim();
  const double shrink = 1.0 - 1e-9;
  std::vector<std::vector<double>> axes(n);
  for (int i = 0; i < n; ++i) {
    if (dom.kind == Domain::Kind::Ball)
      axes[i] = linspace(-dom.radius * shrink, dom.radius * shrink, per_axis);
    else {
      const double mid = 0.5 * (dom.lo[i] + dom.hi[i]);
      const double half = 0.5 * (dom.hi[i] - dom.lo[i]) * shrink;
      axes[i] = linspace(mid - half, mid + half, per_axis);
    }
  }
  std::vector<Vec> pts;
  Vec x(n, 0.0);
  std::vector<int> idx(n, 0);
  for (;;) {
    for (int i = 0; i < n; ++i) x[i] = axes[i][idx[i]];
    if (dom.kind == Domain::Kind::Box || norm(x) <= dom.radius * shrink) pts.push_back(x);
    int axis = 0;
    while (axis < n && ++idx[axis] == per_axis) idx[axis++] = 0;
    if (axis == n) break;
  }
  return pts;
}

}  // namespace hypwarp
