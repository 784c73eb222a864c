#pragma once

#include <optional>

#include "hypwarp/common.hpp"
#include "hypwarp/metric.hpp"

namespace hypwarp {

// Levi-Civita connection coefficients Gamma^k_{ij} at one point, stored as
// gamma[k](i,j). When a boundedness constant is supplied, the component bound
// |Gamma^k_ij| < (3/2)(n-1)! c^{n+1} that c-bounded metrics satisfy is
// asserted (HypothesisViolated otherwise).
std::vector<Mat> christoffel(const SpaceJet& jet, std::optional<double> c_bound = std::nullopt);

inline std::vector<Mat> christoffel(const SpaceMetric& g, const Vec& x,
                                    std::optional<double> c_bound = std::nullopt) {
  return christoffel(g.jet(x), c_bound);
}

// Covariant curvature tensor R_{ijkl} = <R(e_i,e_j)e_k, e_l> assembled from
// one jet; riemann[((i*n+j)*n+k)*n+l].
std::vector<double> riemann_tensor(const SpaceJet& jet);

double sectional_curvature(const SpaceJet& jet, const std::vector<double>& riemann, const Vec& u,
                           const Vec& v);

struct CurvatureSample {
  Vec point;     // block coordinates (x..., t)
  Vec u, v;      // g-orthonormalized 2-frame
  double k = 0;  // sectional curvature of span(u, v)
};

// K for seeded random planes plus all coordinate planes at each point.
// Degenerate draws (|u ^ v| < 1e-10) are resampled, DegeneratePlane only
// after the retry budget burns out.
std::vector<CurvatureSample> sectional_curvatures(const SpaceMetric& block, const std::vector<Vec>& points,
                                                  int planes_per_point, std::uint64_t seed);

struct PinchingReport {
  double sup_deviation = 0.0;  // sup |K + 1|
  double k_min = 0.0, k_max = 0.0;
  std::size_t samples = 0;
  bool pass = false;
  double eps = 0.0;
  std::vector<std::pair<double, std::size_t>> histogram;  // (bin center of K+1, count)
  Vec worst_point;
};

PinchingReport pinching_report(const SpaceMetric& block, const std::vector<Vec>& points,
                               int planes_per_point, std::uint64_t seed, double eps, int bins = 24);

}  // namespace hypwarp
