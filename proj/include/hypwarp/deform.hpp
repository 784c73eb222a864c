#pragma once

#include "hypwarp/chart.hpp"

namespace hypwarp {

// sinh^2 t (sigma_{S^n} + rho_{a,d}(t)(g - sigma_{S^n})) + dt^2 on S^n x (0, inf).
// Hyperbolic inside radius a, equal to the g-warp beyond a + d/2; both by the
// algebraic short-circuit rho = 0 / rho = 1, not by floating cancellation.
struct DeformedMetric {
  MetricOnAtlas g;
  DeformationParams params;
  FamilyOnAtlas family;

  WarpedBlockPtr block(int chart) const {
    return std::make_shared<WarpedBlockMetric>(family.families[chart], Warp{WarpKind::Sinh});
  }
};

DeformedMetric deform(const MetricOnAtlas& g, DeformationParams params);

// {k(t) g_t}: the exp-normalized image of the sinh warp.
FamilyOnAtlas k_scaled_family(const FamilyOnAtlas& fam);

struct KBoundsReport {
  bool pass = false;
  double worst_margin = 0.0;  // smallest slack across all inequality lines
  std::size_t samples = 0;
};

// Sweeps (1/6 < k < 1/4, 0 < k' < e^{-2t} < 1/2, |k''| < 2 e^{-2t} < 1) over a grid.
KBoundsReport k_bounds_check(Interval t_range, int points);

struct DeformationSlownessReport {
  double eps_g = 0.0;    // measured slowness of {sigma + s (g - sigma)}, s in [0,1]
  double bound = 0.0;    // (12 / d) eps_g
  double measured = 0.0; // measured slowness of the t-family over the transition zone
  bool pass = false;
};

// pre: d >= 8 for the reindexation bound to apply.
DeformationSlownessReport deformation_slowness_bound(const MetricOnAtlas& g, DeformationParams params,
                                                     const RegularityGrid& grid,
                                                     const SlownessSampling& sampling);

struct BallCloseOptions {
  double xi = 0.0;
  double c = 0.0;               // boundedness constant threaded to the charts
  double hyp_threshold = 0.0;   // a(eps, n+1, xi) from the ledger
  bool enforce_radius = true;   // a > hyp_threshold + 1 + xi, RadiusTooSmall otherwise
  int sphere_samples = 6;
  std::uint64_t seed = 0;
  BlockGridSpec grid{9, 17};
  int condition1_samples = 400;
};

struct BallCloseReport {
  bool verdict = false;
  bool condition1_exact = false;  // equality with the hyperbolic warp on t < a
  bool radius_ok = false;
  double required_radius = 0.0;   // hyp_threshold + 1 + xi
  double eps = 0.0;
  RadialCloseVerdict radial;      // condition (2), outside B_{a-1-xi}
  std::vector<Center> centers;
};

BallCloseReport ball_close_verdict(const DeformedMetric& h, double eps, const BallCloseOptions& opt);

// Deterministic sphere centers: both poles, an equator point, plus seeded
// random points.
std::vector<Vec> sphere_center_points(const AtlasPtr& atlas, int random_count, std::uint64_t seed);

}  // namespace hypwarp
