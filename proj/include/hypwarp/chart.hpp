#pragma once

#include "hypwarp/atlas.hpp"
#include "hypwarp/model_block.hpp"
#include "hypwarp/regularity.hpp"

namespace hypwarp {

// The explicit chart phi(x, t) = (psi(x0 + e^{lambda - t0} A x), t + t0).
// For the sinh warp the construction runs on the k-normalized family
// {k(t) g_t} with boundedness 6^n c, so A factors k(t0) g_{t0}(p) there.
struct HypChart {
  int chart_index = -1;
  Vec center_coords;   // x0, translated chart coordinates of p
  Vec center_ambient;
  double t0 = 0.0;
  Mat a;               // F^{-1} from the bounded factorization at the center
  double lambda = 0.0; // min{0, t0 - ln(n c4)}
  double c4 = 0.0;     // sqrt(n n! c_eff^n)
  double c = 0.0;      // caller's boundedness constant
  double c_eff = 0.0;  // c (exp) or 6^n c (sinh)
  double xi = 0.0;
  Warp warp;

  // x -> x0 + e^{lambda - t0} A x
  Mat contraction() const { return std::exp(lambda - t0) * a; }
  bool lambda_active() const { return lambda < 0.0; }
};

// Throws ChartConstructionFailure when no chart reaches margin >= 1 at p,
// CenterOutOfRange when t0 is not admissible, HypothesisViolated when the
// factorization hypotheses fail at the center.
HypChart build_chart(const FamilyOnAtlas& fam, const Vec& ambient_p, double t0, double c, double xi,
                     Warp warp = Warp{WarpKind::Exp});

// Chart-side metric e^{2t} f_t + dt^2 on the model block, as a warped block
// whose family is the pullback through the chart. Throws DomainEscape if the
// chart image were to leave the base chart's unit ball (cannot happen when
// the invariants hold; verified via the operator norm).
WarpedBlockPtr pullback(const FamilyOnAtlas& fam, const HypChart& chart);

ChartSupplier chart_supplier(const FamilyOnAtlas& fam, double c, double xi, Warp warp);

struct CenterDeviation {
  Center center;
  double deviation = 0.0;
  double lambda = 0.0;
};

struct EtaBoundReport {
  double measured_eta = 0.0;
  double bound_eta = 0.0;      // C (e^{-T} + eps_hat), C1 for the sinh warp
  double eps_hat = 0.0;        // measured direct slowness
  double c_hat = 0.0;
  double big_t = 0.0;          // T = 1 + xi + inf I
  bool pass = false;
  std::vector<CenterDeviation> per_center;
};

EtaBoundReport eta_bound_check(const FamilyOnAtlas& fam, double c, double xi,
                               const std::vector<Center>& centers, Warp warp,
                               const RegularityGrid& slowness_grid, const SlownessSampling& sampling,
                               BlockGridSpec deviation_grid = {});

}  // namespace hypwarp
