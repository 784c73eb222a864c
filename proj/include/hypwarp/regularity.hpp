#pragma once

#include "hypwarp/atlas.hpp"
#include "hypwarp/grid.hpp"
#include "hypwarp/metric.hpp"
#include "hypwarp/model_block.hpp"

namespace hypwarp {

struct RegularityGrid {
  int space_points = 9;
  int t_points = 9;
  // explicit t samples override the linspace over the family interval
  std::vector<double> t_samples;
};

struct ChartSup {
  int chart = -1;
  double value = 0.0;
  Vec point;
  double t = 0.0;
};

// c-boundedness certificate at grid resolution: c_hat is the smallest
// constant the sampled sups verify, max over charts of
// max(sup ||g||_{C^2}, 1 / inf |det g|), floored at 1 + 1e-9.
struct BoundednessReport {
  double c_hat = 0.0;
  double sup_c2 = 0.0;
  double inv_det = 0.0;  // 1 / inf |det g|
  ChartSup attained;
  RegularityGrid grid;
  std::vector<double> per_chart;
};

// One chart's worth of a family plus the region it is measured on.
struct FamilyPatch {
  MetricFamilyPtr family;
  Domain domain;
};

BoundednessReport check_bounded(const std::vector<FamilyPatch>& patches, Interval t_range,
                                const RegularityGrid& grid);
BoundednessReport check_bounded(const MetricOnAtlas& g, const RegularityGrid& grid);
BoundednessReport check_bounded(const FamilyOnAtlas& fam, const RegularityGrid& grid);

struct SlownessSampling {
  int random_const_fields = 32;
  int random_linear_fields = 8;
  int random_directions = 4;  // extra v draws beyond coordinate directions
  std::uint64_t seed = 0;
};

struct SlownessReport {
  double eps1 = 0.0;       // sup over k in {1,2} of |d^k_t g_ij|
  double eps1_k1 = 0.0;
  double eps1_k2 = 0.0;
  double eps2 = 0.0;       // sup |d^2_{t,x} g_ij|
  double eps3 = 0.0;       // closed-form bound assembled from eps1/eps2 with the caller's c
  double direct_eps = 0.0; // empirical sup of the defining ratios
  double direct_eps_i = 0.0;
  double direct_eps_ii = 0.0;
  double c_used = 0.0;
  RegularityGrid grid;
  SlownessSampling sampling;
};

// Requires the family to be c-bounded (checked first, NotBounded otherwise).
SlownessReport measure_slowness(const std::vector<FamilyPatch>& patches, Interval t_range, double c,
                                const RegularityGrid& grid, const SlownessSampling& sampling);
SlownessReport measure_slowness(const FamilyOnAtlas& fam, double c, const RegularityGrid& grid,
                                const SlownessSampling& sampling);

std::vector<FamilyPatch> patches_of(const FamilyOnAtlas& fam);

// Shift / reparametrization / pullback stability of the slowness measurement.
struct StabilityReport {
  bool shift_pass = false;
  bool reparam_pass = false;
  bool pullback_pass = false;
  double base_eps1 = 0.0, shifted_eps1 = 0.0;
  double base_direct = 0.0, reparam_direct = 0.0, reparam_bound = 0.0;
  double pullback_direct = 0.0;
};

// b: time shift; reparam phi(s) = a s with the derivative bound a; the
// pullback is a rotation of the sphere applied to a round-based family.
StabilityReport verify_shift_reparam_pullback(const FamilyOnAtlas& fam, double b, double reparam_a,
                                              const FamilyOnAtlas& rotated, double c,
                                              const RegularityGrid& grid, const SlownessSampling& sampling);

struct ConverseReport {
  double measured_deviation = 0.0;  // C^2 distance of the block from sigma
  double a_prime = 0.0;
  double slow_bound = 0.0;          // a' * eps
  double measured_direct_eps = 0.0;
  bool slowness_within_bound = false;
  double two_bounded_threshold = 0.0;  // 1 / (3^2 2^2 n! e^{2(1+xi)})
  bool threshold_met = false;
  double measured_c_hat = 0.0;
  bool two_bounded = false;  // only asserted when threshold_met
};

// For a block e^{2t} g_t + dt^2 on T_xi that is eps-close to hyperbolic:
// the family is a'(n, xi) * eps slow, and 2-bounded below the eps threshold.
ConverseReport converse_close_implies_slow(const MetricFamilyPtr& family, double eps, double xi,
                                           const RegularityGrid& grid, const SlownessSampling& sampling);

}  // namespace hypwarp
