#pragma once

#include <functional>

#include "hypwarp/grid.hpp"
#include "hypwarp/metric.hpp"

namespace hypwarp {

// The reference block: B^n x (-(1+xi), 1+xi) with sigma = e^{2t} sigma_{R^n} + dt^2.
struct ModelBlock {
  int n = 2;
  double xi = 0.0;

  Interval t_range() const { return {-(1.0 + xi), 1.0 + xi}; }
  WarpedBlockPtr sigma() const;

  // I(xi) for a family living on I: centers t0 with (t0 - (1+xi), t0 + (1+xi)) inside I.
  static Interval admissible_centers(Interval i, double xi) {
    return {i.lo + 1.0 + xi, i.hi - (1.0 + xi)};
  }
};

struct BlockGridSpec {
  int space_points = 17;
  int t_points = 33;
};

// Sampled C^2 distance between a metric on the block and sigma, split by
// derivative class: 1 + (n+1) + (n+1)(n+2)/2 classes in total.
struct DeviationReport {
  double c0 = 0.0;
  std::vector<double> d1_sup;            // per axis (space..., t)
  std::vector<double> d2_sup;            // pairs (a,b), a <= b, row-major over upper triangle
  double c2_norm = 0.0;
  Vec attaining_point;                   // where the c2 max is attained
  int attaining_class = 0;               // 0 = value, 1 = first derivatives, 2 = second
  BlockGridSpec grid;

  std::size_t class_count() const { return 1 + d1_sup.size() + d2_sup.size(); }
};

// f is any metric on the (n+1)-block with an order-2 oracle (warped blocks
// included); its C^2 distance to sigma is scanned over the grid.
DeviationReport deviation(const SpaceMetric& f, const ModelBlock& block, BlockGridSpec grid = {});

// Radius beyond which punctured hyperbolic (n+1)-space is radially eps-close:
// ln(C1(c_sphere, n, xi) / eps).
double hyperbolic_threshold(double eps, int n_plus_1, double xi, double c_sphere);

struct Center {
  Vec ambient;  // manifold point
  double t0 = 0.0;
};

using ChartSupplier = std::function<WarpedBlockPtr(const Center&)>;

struct RadialCloseVerdict {
  bool close = false;
  double eps = 0.0;
  double worst_deviation = 0.0;
  Center worst_center;
  DeviationReport worst_report;
  std::size_t centers_checked = 0;
};

// Builds the product-respecting chart for every center, pulls the metric
// back, measures the deviation. Throws CenterOutOfRange when some t0 is not
// an admissible center for the family's interval.
RadialCloseVerdict radially_close_verdict(Interval family_interval, const std::vector<Center>& centers,
                                          double xi, double eps, const ChartSupplier& supplier,
                                          BlockGridSpec grid = {});

}  // namespace hypwarp
