#include "hypwarp/curvature.hpp"

#include <cmath>
#include <sstream>

#include "hypwarp/spd.hpp"

namespace hypwarp {

std::vector<Mat> christoffel(const SpaceJet& jet, std::optional<double> c_bound) {
  const int n = jet.g.n();
  const Mat ginv = inverse(jet.g);
  if (!ginv.is_finite()) fail(ErrorCode::NotSpd, "christoffel: metric is singular");

  std::vector<Mat> gamma(n, Mat(n));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l)
          s += ginv(k, l) * (jet.d1[i](j, l) + jet.d1[j](i, l) - jet.d1[l](i, j));
        gamma[k](i, j) = 0.5 * s;
        gamma[k](j, i) = gamma[k](i, j);
      }

  if (c_bound) {
    const double cap = 1.5 * factorial(n - 1) * std::pow(*c_bound, n + 1);
    for (int k = 0; k < n; ++k)
      if (!(gamma[k].max_abs() < cap)) {
        std::ostringstream msg;
        msg << "christoffel: |Gamma| = " << gamma[k].max_abs() << " exceeds the c-bounded cap " << cap;
        fail(ErrorCode::HypothesisViolated, msg.str());
      }
  }
  return gamma;
}

std::vector<double> riemann_tensor(const SpaceJet& jet) {
  const int n = jet.g.n();
  const Mat ginv = inverse(jet.g);
  const std::vector<Mat> gamma = christoffel(jet);

  // del_i Gamma^l_{jk} = -g^{lp} (del_i g)_{pq} Gamma^q_{jk}
  //                      + 1/2 g^{lm} (del_i del_j g_{km} + del_i del_k g_{jm} - del_i del_m g_{jk})
  auto dgamma = [&](int i, int l, int j, int k) {
    double s = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) s -= ginv(l, p) * jet.d1[i](p, q) * gamma[q](j, k);
    for (int m = 0; m < n; ++m)
      s += 0.5 * ginv(l, m) * (jet.second(i, j)(k, m) + jet.second(i, k)(j, m) - jet.second(i, m)(j, k));
    return s;
  };

  std::vector<double> r(static_cast<std::size_t>(n) * n * n * n, 0.0);
  auto at = [n](int i, int j, int k, int l) { return ((static_cast<std::size_t>(i) * n + j) * n + k) * n + l; };

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (int k = 0; k < n; ++k) {
        // R^m_{kij} = del_i Gamma^m_{jk} - del_j Gamma^m_{ik}
        //             + Gamma^m_{ip} Gamma^p_{jk} - Gamma^m_{jp} Gamma^p_{ik}
        for (int m = 0; m < n; ++m) {
          double up = dgamma(i, m, j, k) - dgamma(j, m, i, k);
          for (int p = 0; p < n; ++p) up += gamma[m](i, p) * gamma[p](j, k) - gamma[m](j, p) * gamma[p](i, k);
          for (int l = 0; l < n; ++l) r[at(i, j, k, l)] += jet.g(l, m) * up;
        }
      }
    }
  return r;
}

double sectional_curvature(const SpaceJet& jet, const std::vector<double>& riemann, const Vec& u,
                           const Vec& v) {
  const int n = jet.g.n();
  auto at = [n](int i, int j, int k, int l) { return ((static_cast<std::size_t>(i) * n + j) * n + k) * n + l; };
  double num = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double uv = u[i] * v[j];
      if (uv == 0.0) continue;
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) num += uv * v[k] * u[l] * riemann[at(i, j, k, l)];
    }
  const double guu = bilinear(jet.g, u, u);
  const double gvv = bilinear(jet.g, v, v);
  const double guv = bilinear(jet.g, u, v);
  const double gram = guu * gvv - guv * guv;
  if (!(gram > 1e-10 * std::max(guu * gvv, 1e-300)))
    fail(ErrorCode::DegeneratePlane, "sectional_curvature: degenerate 2-plane");
  return num / gram;
}

namespace {

// g-orthonormalize (u, v) in place; returns false for a degenerate plane.
bool gram_schmidt(const Mat& g, Vec& u, Vec& v) {
  const double guu = bilinear(g, u, u);
  if (!(guu > 1e-14)) return false;
  u = (1.0 / std::sqrt(guu)) * u;
  const double guv = bilinear(g, u, v);
  v = v - guv * u;
  const double gvv = bilinear(g, v, v);
  if (!(gvv > 1e-10)) return false;
  v = (1.0 / std::sqrt(gvv)) * v;
  return true;
}

}  // namespace

std::vector<CurvatureSample> sectional_curvatures(const SpaceMetric& block, const std::vector<Vec>& points,
                                                  int planes_per_point, std::uint64_t seed) {
  const int n = block.dim();
  std::vector<CurvatureSample> out(points.size() * (planes_per_point + n * (n - 1) / 2));
  std::vector<char> filled(out.size(), 0);

  parallel_for(points.size(), [&](std::size_t pi) {
    Rng rng = Rng(seed).fork(pi);
    const SpaceJet jet = block.jet(points[pi]);
    if (!jet.g.is_finite()) fail(ErrorCode::EvaluationFailure, "curvature: metric not finite at sample");
    const std::vector<double> riem = riemann_tensor(jet);
    std::size_t slot = pi * (planes_per_point + n * (n - 1) / 2);

    auto emit = [&](Vec u, Vec v) {
      if (!gram_schmidt(jet.g, u, v)) return false;
      CurvatureSample s;
      s.point = points[pi];
      s.u = u;
      s.v = v;
      s.k = sectional_curvature(jet, riem, u, v);
      out[slot] = std::move(s);
      filled[slot] = 1;
      ++slot;
      return true;
    };

    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        Vec u(n, 0.0), v(n, 0.0);
        u[i] = 1.0;
        v[j] = 1.0;
        emit(u, v);
      }
    for (int p = 0; p < planes_per_point; ++p) {
      bool ok = false;
      for (int attempt = 0; attempt < 100 && !ok; ++attempt) ok = emit(rng.unit_vector(n), rng.unit_vector(n));
      if (!ok) fail(ErrorCode::DegeneratePlane, "curvature: plane resampling budget exhausted");
    }
  });

  std::vector<CurvatureSample> kept;
  kept.reserve(out.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    if (filled[i]) kept.push_back(std::move(out[i]));
  return kept;
}

PinchingReport pinching_report(const SpaceMetric& block, const std::vector<Vec>& points,
                               int planes_per_point, std::uint64_t seed, double eps, int bins) {
  const std::vector<CurvatureSample> samples = sectional_curvatures(block, points, planes_per_point, seed);
  PinchingReport rep;
  rep.eps = eps;
  rep.samples = samples.size();
  rep.k_min = 1e300;
  rep.k_max = -1e300;
  for (const CurvatureSample& s : samples) {
    const double dev = std::fabs(s.k + 1.0);
    if (dev > rep.sup_deviation) {
      rep.sup_deviation = dev;
      rep.worst_point = s.point;
    }
    rep.k_min = std::min(rep.k_min, s.k);
    rep.k_max = std::max(rep.k_max, s.k);
  }
  rep.pass = rep.sup_deviation < eps;

  const double lo = rep.k_min + 1.0;
  const double hi = rep.k_max + 1.0;
  const double width = (hi - lo > 0.0) ? (hi - lo) : 1.0;
  std::vector<std::size_t> counts(bins, 0);
  for (const CurvatureSample& s : samples) {
    int b = static_cast<int>((s.k + 1.0 - lo) / width * bins);
    b = std::min(std::max(b, 0), bins - 1);
    ++counts[b];
  }
  for (int b = 0; b < bins; ++b)
    rep.histogram.emplace_back(lo + (b + 0.5) * width / bins, counts[b]);
  return rep;
}

}  // namespace hypwarp
