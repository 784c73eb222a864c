#include "hypwarp/model_block.hpp"

#include <cmath>
#include <sstream>

#include "hypwarp/constants.hpp"

namespace hypwarp {

WarpedBlockPtr ModelBlock::sigma() const {
  auto flat = std::make_shared<FlatMetric>(n);
  auto fam = std::make_shared<ConstantFamily>(flat, t_range());
  return std::make_shared<WarpedBlockMetric>(fam, Warp{WarpKind::Exp});
}

DeviationReport deviation(const SpaceMetric& f, const ModelBlock& block, BlockGridSpec grid) {
  const int n = block.n;
  const int nb = n + 1;
  if (f.dim() != nb) fail(ErrorCode::InputOutOfRange, "deviation: dimension mismatch");

  const WarpedBlockPtr sigma = block.sigma();
  const std::vector<Vec> space = grid_points(Domain::ball(n, 1.0), grid.space_points);
  const std::vector<double> times = linspace(block.t_range().lo, block.t_range().hi, grid.t_points);

  struct Slot {
    double c0 = 0.0;
    std::vector<double> d1, d2;
    double worst = 0.0;
    Vec point;
    int cls = 0;
  };
  std::vector<Slot> slots(space.size());

  const int pairs = nb * (nb + 1) / 2;
  parallel_for(space.size(), [&](std::size_t si) {
    Slot& s = slots[si];
    s.d1.assign(nb, 0.0);
    s.d2.assign(pairs, 0.0);
    Vec xt(nb, 0.0);
    for (int i = 0; i < n; ++i) xt[i] = space[si][i];
    for (double t : times) {
      xt[n] = t;
      const SpaceJet jf = f.jet(xt);
      const SpaceJet js = sigma->jet(xt);
      if (!jf.g.is_finite()) {
        std::ostringstream msg;
        msg << "deviation: non-finite metric at t = " << t;
        fail(ErrorCode::EvaluationFailure, msg.str());
      }
      auto track = [&](double value, int cls) {
        if (value > s.worst) {
          s.worst = value;
          s.point = xt;
          s.cls = cls;
        }
      };
      const double v0 = (jf.g - js.g).max_abs();
      s.c0 = std::max(s.c0, v0);
      track(v0, 0);
      for (int a = 0; a < nb; ++a) {
        const double v1 = (jf.d1[a] - js.d1[a]).max_abs();
        s.d1[a] = std::max(s.d1[a], v1);
        track(v1, 1);
      }
      int pair = 0;
      for (int a = 0; a < nb; ++a)
        for (int b = a; b < nb; ++b, ++pair) {
          const double v2 = (jf.second(a, b) - js.second(a, b)).max_abs();
          s.d2[pair] = std::max(s.d2[pair], v2);
          track(v2, 2);
        }
    }
  });

  DeviationReport rep;
  rep.grid = grid;
  rep.d1_sup.assign(nb, 0.0);
  rep.d2_sup.assign(pairs, 0.0);
  double worst = -1.0;
  for (const Slot& s : slots) {
    rep.c0 = std::max(rep.c0, s.c0);
    for (int a = 0; a < nb; ++a) rep.d1_sup[a] = std::max(rep.d1_sup[a], s.d1[a]);
    for (int p = 0; p < pairs; ++p) rep.d2_sup[p] = std::max(rep.d2_sup[p], s.d2[p]);
    if (s.worst > worst) {
      worst = s.worst;
      rep.attaining_point = s.point;
      rep.attaining_class = s.cls;
    }
  }
  rep.c2_norm = rep.c0;
  for (double v : rep.d1_sup) rep.c2_norm = std::max(rep.c2_norm, v);
  for (double v : rep.d2_sup) rep.c2_norm = std::max(rep.c2_norm, v);
  return rep;
}

double hyperbolic_threshold(double eps, int n_plus_1, double xi, double c_sphere) {
  if (!(eps > 0.0)) fail(ErrorCode::InputOutOfRange, "hyperbolic_threshold needs eps > 0");
  const real_ext c1 = const_big_c1(n_plus_1 - 1, static_cast<real_ext>(c_sphere), static_cast<real_ext>(xi));
  return static_cast<double>(logl(c1 / static_cast<real_ext>(eps)));
}

RadialCloseVerdict radially_close_verdict(Interval family_interval, const std::vector<Center>& centers,
                                          double xi, double eps, const ChartSupplier& supplier,
                                          BlockGridSpec grid) {
  const Interval admissible = ModelBlock::admissible_centers(family_interval, xi);
  RadialCloseVerdict verdict;
  verdict.eps = eps;
  verdict.worst_deviation = -1.0;

  for (const Center& center : centers) {
    if (!(center.t0 > admissible.lo && center.t0 < admissible.hi)) {
      std::ostringstream msg;
      msg << "center t0 = " << center.t0 << " outside admissible (" << admissible.lo << ", "
          << admissible.hi << ")";
      fail(ErrorCode::CenterOutOfRange, msg.str());
    }
    WarpedBlockPtr pulled = supplier(center);
    ModelBlock block{pulled->family().dim(), xi};
    const DeviationReport rep = deviation(*pulled, block, grid);
    ++verdict.centers_checked;
    if (rep.c2_norm > verdict.worst_deviation) {
      verdict.worst_deviation = rep.c2_norm;
      verdict.worst_center = center;
      verdict.worst_report = rep;
    }
  }
  verdict.close = verdict.centers_checked > 0 && verdict.worst_deviation < eps;
  return verdict;
}

}  // namespace hypwarp
