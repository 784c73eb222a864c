#include "hypwarp/regularity.hpp"

#include <cmath>
#include <sstream>

#include "hypwarp/constants.hpp"
#include "hypwarp/curvature.hpp"
#include "hypwarp/spd.hpp"

namespace hypwarp {

namespace {

std::vector<double> time_samples(Interval t_range, const RegularityGrid& grid) {
  if (!grid.t_samples.empty()) return grid.t_samples;
  if (!std::isfinite(t_range.length()))
    fail(ErrorCode::InputOutOfRange, "unbounded family interval needs explicit t samples");
  return linspace(t_range.lo, t_range.hi, grid.t_points);
}

SpaceJet space_slice(const FamilyJet& j) {
  SpaceJet s;
  s.g = j.g;
  s.d1 = j.dx;
  s.d2 = j.dxx;
  return s;
}

double space_c2_sup(const FamilyJet& j) {
  double m = j.g.max_abs();
  for (const Mat& d : j.dx) m = std::max(m, d.max_abs());
  for (const Mat& d : j.dxx) m = std::max(m, d.max_abs());
  return m;
}

}  // namespace

std::vector<FamilyPatch> patches_of(const FamilyOnAtlas& fam) {
  std::vector<FamilyPatch> patches;
  for (int c = 0; c < fam.atlas->num_charts(); ++c)
    patches.push_back({fam.families[c], fam.atlas->chart_domain(c)});
  return patches;
}

BoundednessReport check_bounded(const std::vector<FamilyPatch>& patches, Interval t_range,
                                const RegularityGrid& grid) {
  BoundednessReport rep;
  rep.grid = grid;
  rep.inv_det = 0.0;
  const std::vector<double> times = time_samples(t_range, grid);

  for (std::size_t pi = 0; pi < patches.size(); ++pi) {
    const FamilyPatch& patch = patches[pi];
    const std::vector<Vec> pts = grid_points(patch.domain, grid.space_points);
    struct Slot {
      double sup = 0.0, inv_det = 0.0;
      Vec point;
      double t = 0.0;
    };
    std::vector<Slot> slots(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
      Slot& s = slots[i];
      for (double t : times) {
        const FamilyJet j = patch.family->jet(pts[i], t);
        if (!j.g.is_finite()) {
          std::ostringstream msg;
          msg << "check_bounded: non-finite metric on chart " << pi << " at t = " << t;
          fail(ErrorCode::EvaluationFailure, msg.str());
        }
        const double sup = space_c2_sup(j);
        const double det = std::fabs(determinant(j.g));
        const double inv = det > 0.0 ? 1.0 / det : 1e300;
        if (sup > s.sup || inv > s.inv_det) {
          s.point = pts[i];
          s.t = t;
        }
        s.sup = std::max(s.sup, sup);
        s.inv_det = std::max(s.inv_det, inv);
      }
    });
    double chart_c = 0.0;
    for (const Slot& s : slots) {
      if (std::max(s.sup, s.inv_det) > std::max(rep.sup_c2, rep.inv_det)) {
        rep.attained = {static_cast<int>(pi), std::max(s.sup, s.inv_det), s.point, s.t};
      }
      rep.sup_c2 = std::max(rep.sup_c2, s.sup);
      rep.inv_det = std::max(rep.inv_det, s.inv_det);
      chart_c = std::max({chart_c, s.sup, s.inv_det});
    }
    rep.per_chart.push_back(chart_c);
  }
  rep.c_hat = std::max({rep.sup_c2, rep.inv_det, 1.0 + 1e-9});
  return rep;
}

BoundednessReport check_bounded(const MetricOnAtlas& g, const RegularityGrid& grid) {
  FamilyOnAtlas fam = constant_family(g, {0.0, 1.0});
  RegularityGrid g1 = grid;
  g1.t_samples = {0.0};
  return check_bounded(patches_of(fam), fam.t, g1);
}

BoundednessReport check_bounded(const FamilyOnAtlas& fam, const RegularityGrid& grid) {
  return check_bounded(patches_of(fam), fam.t, grid);
}

namespace {

struct FieldSample {
  Vec u;       // value at the point
  Mat du;      // du(k, l) = del_l u^k; zero for constant fields
  bool linear = false;
};

struct RatioSups {
  double i_k1 = 0.0, i_k2 = 0.0, ii = 0.0;
};

RatioSups direct_ratios(const FamilyJet& j, const std::vector<Mat>& gamma,
                        const std::vector<FieldSample>& fields, const std::vector<Vec>& directions) {
  const int n = j.g.n();
  RatioSups sup;

  for (const FieldSample& f : fields) {
    const double guu = bilinear(j.g, f.u, f.u);
    if (!(guu > 1e-14)) continue;
    sup.i_k1 = std::max(sup.i_k1, std::fabs(bilinear(j.dt, f.u, f.u)) / guu);
    sup.i_k2 = std::max(sup.i_k2, std::fabs(bilinear(j.dtt, f.u, f.u)) / guu);

    for (const Vec& v : directions) {
      // d/dt [v g(u,u)] = v^l (del_t del_l g)(u,u) + 2 (del_t g)(u, del_v u)
      double num = 0.0;
      for (int l = 0; l < n; ++l)
        if (v[l] != 0.0) num += v[l] * bilinear(j.dtdx[l], f.u, f.u);
      Vec dvu(n, 0.0);
      if (f.linear)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) dvu[k] += f.du(k, l) * v[l];
      if (f.linear) {
        double cross = 0.0;
        for (int a = 0; a < n; ++a)
          for (int bq = 0; bq < n; ++bq) cross += j.dt(a, bq) * f.u[a] * dvu[bq];
        num += 2.0 * cross;
      }

      // nabla_v u = del_v u + Gamma(v, u)
      Vec nvu = dvu;
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
          for (int l = 0; l < n; ++l) nvu[k] += gamma[k](i, l) * v[i] * f.u[l];
      const double den =
          guu * std::sqrt(bilinear(j.g, v, v)) + std::sqrt(guu) * std::sqrt(bilinear(j.g, nvu, nvu));
      if (den > 1e-14) sup.ii = std::max(sup.ii, std::fabs(num) / den);
    }
  }
  return sup;
}

}  // namespace

SlownessReport measure_slowness(const std::vector<FamilyPatch>& patches, Interval t_range, double c,
                                const RegularityGrid& grid, const SlownessSampling& sampling) {
  const BoundednessReport bounded = check_bounded(patches, t_range, grid);
  if (bounded.c_hat > c) {
    std::ostringstream msg;
    msg << "measure_slowness: family is not " << c << "-bounded (measured c_hat = " << bounded.c_hat << ")";
    fail(ErrorCode::NotBounded, msg.str());
  }

  SlownessReport rep;
  rep.c_used = c;
  rep.grid = grid;
  rep.sampling = sampling;
  const std::vector<double> times = time_samples(t_range, grid);

  for (std::size_t pi = 0; pi < patches.size(); ++pi) {
    const FamilyPatch& patch = patches[pi];
    const int n = patch.family->dim();
    const std::vector<Vec> pts = grid_points(patch.domain, grid.space_points);

    struct Slot {
      double e1k1 = 0, e1k2 = 0, e2 = 0;
      RatioSups ratios;
    };
    std::vector<Slot> slots(pts.size());

    parallel_for(pts.size(), [&](std::size_t i) {
      Slot& s = slots[i];
      Rng rng = Rng(sampling.seed).fork(pi * 1000003 + i);

      // The field set: coordinate fields, their pair sums, seeded random
      // constant fields, and seeded random linear fields so that nabla_v u
      // exercises both terms of the denominator.
      std::vector<FieldSample> fields;
      for (int k = 0; k < n; ++k) {
        FieldSample f;
        f.u = Vec(n, 0.0);
        f.u[k] = 1.0;
        f.du = Mat(n);
        fields.push_back(f);
      }
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
          FieldSample f;
          f.u = Vec(n, 0.0);
          f.u[a] = 1.0;
          f.u[b] = 1.0;
          f.du = Mat(n);
          fields.push_back(f);
        }
      for (int r = 0; r < sampling.random_const_fields; ++r) {
        FieldSample f;
        f.u = rng.unit_vector(n);
        f.du = Mat(n);
        fields.push_back(f);
      }
      for (int r = 0; r < sampling.random_linear_fields; ++r) {
        FieldSample f;
        f.u = rng.unit_vector(n);
        f.du = Mat(n);
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) f.du(a, b) = rng.uniform(-1.0, 1.0);
        f.linear = true;
        fields.push_back(f);
      }

      std::vector<Vec> directions;
      for (int k = 0; k < n; ++k) {
        Vec v(n, 0.0);
        v[k] = 1.0;
        directions.push_back(v);
      }
      for (int r = 0; r < sampling.random_directions; ++r) directions.push_back(rng.unit_vector(n));

      for (double t : times) {
        const FamilyJet j = patch.family->jet(pts[i], t);
        s.e1k1 = std::max(s.e1k1, j.dt.max_abs());
        s.e1k2 = std::max(s.e1k2, j.dtt.max_abs());
        for (const Mat& m : j.dtdx) s.e2 = std::max(s.e2, m.max_abs());

        const std::vector<Mat> gamma = christoffel(space_slice(j));
        const RatioSups r = direct_ratios(j, gamma, fields, directions);
        s.ratios.i_k1 = std::max(s.ratios.i_k1, r.i_k1);
        s.ratios.i_k2 = std::max(s.ratios.i_k2, r.i_k2);
        s.ratios.ii = std::max(s.ratios.ii, r.ii);
      }
    });

    for (const Slot& s : slots) {
      rep.eps1_k1 = std::max(rep.eps1_k1, s.e1k1);
      rep.eps1_k2 = std::max(rep.eps1_k2, s.e1k2);
      rep.eps2 = std::max(rep.eps2, s.e2);
      rep.direct_eps_i = std::max({rep.direct_eps_i, s.ratios.i_k1, s.ratios.i_k2});
      rep.direct_eps_ii = std::max(rep.direct_eps_ii, s.ratios.ii);
    }
  }

  rep.eps1 = std::max(rep.eps1_k1, rep.eps1_k2);
  rep.direct_eps = std::max(rep.direct_eps_i, rep.direct_eps_ii);

  const int n = patches.empty() ? 2 : patches.front().family->dim();
  real_ext a = 0, b = 0;
  eps3_coefficients(n, static_cast<real_ext>(c), a, b);
  rep.eps3 = static_cast<double>(a * static_cast<real_ext>(rep.eps1) + b * static_cast<real_ext>(rep.eps2));
  return rep;
}

SlownessReport measure_slowness(const FamilyOnAtlas& fam, double c, const RegularityGrid& grid,
                                const SlownessSampling& sampling) {
  return measure_slowness(patches_of(fam), fam.t, c, grid, sampling);
}

StabilityReport verify_shift_reparam_pullback(const FamilyOnAtlas& fam, double b, double reparam_a,
                                              const FamilyOnAtlas& rotated, double c,
                                              const RegularityGrid& grid, const SlownessSampling& sampling) {
  StabilityReport rep;
  const SlownessReport base = measure_slowness(fam, c, grid, sampling);
  rep.base_eps1 = base.eps1;
  rep.base_direct = base.direct_eps;

  // (1) time shift: identical component sups up to rounding of (t - b) + b
  {
    FamilyOnAtlas shifted = shifted_family(fam, b);
    RegularityGrid shifted_grid = grid;
    shifted_grid.t_samples.clear();
    for (double t : linspace(fam.t.lo, fam.t.hi, grid.t_points)) shifted_grid.t_samples.push_back(t - b);
    const SlownessReport sh = measure_slowness(shifted, c, shifted_grid, sampling);
    rep.shifted_eps1 = sh.eps1;
    rep.shift_pass = std::fabs(sh.eps1 - base.eps1) <= 1e-9 * std::max(1.0, base.eps1);
  }

  // (2) reparametrization phi(s) = a s: at most (a + a^2) times slower
  {
    const Schedule phi = Schedule::linear(reparam_a, 0.0);
    const Interval j{fam.t.lo / reparam_a, fam.t.hi / reparam_a};
    FamilyOnAtlas re = reparam_family(fam, phi, j);
    RegularityGrid re_grid = grid;
    re_grid.t_samples.clear();
    for (double t : linspace(fam.t.lo, fam.t.hi, grid.t_points)) re_grid.t_samples.push_back(t / reparam_a);
    const SlownessReport rr = measure_slowness(re, c, re_grid, sampling);
    rep.reparam_direct = rr.direct_eps;
    rep.reparam_bound = (reparam_a + reparam_a * reparam_a) * base.direct_eps;
    rep.reparam_pass = rr.direct_eps <= rep.reparam_bound * (1.0 + 1e-9) + 1e-15;
  }

  // (3) pullback by an isometry: the intrinsic measurement is unchanged
  {
    const SlownessReport pb = measure_slowness(rotated, c, grid, sampling);
    rep.pullback_direct = pb.direct_eps;
    rep.pullback_pass = std::fabs(pb.direct_eps - base.direct_eps) <= 1e-8 * std::max(1.0, base.direct_eps);
  }
  return rep;
}

ConverseReport converse_close_implies_slow(const MetricFamilyPtr& family, double eps, double xi,
                                           const RegularityGrid& grid, const SlownessSampling& sampling) {
  const int n = family->dim();
  ConverseReport rep;

  auto block = std::make_shared<WarpedBlockMetric>(family, Warp{WarpKind::Exp});
  const ModelBlock model{n, xi};
  rep.measured_deviation = deviation(*block, model, BlockGridSpec{9, 17}).c2_norm;

  const real_ext e2xi = expl(2.0L * (1.0L + static_cast<real_ext>(xi)));
  real_ext nfac = 1.0L;
  for (int k = 2; k <= n; ++k) nfac *= k;
  rep.a_prime = static_cast<double>(3.0L * e2xi * (n + 6.0L * const_bridge_c14(n, 2.0L)) * n * n *
                                    powl(nfac * powl(2.0L, n), 1.5L));
  rep.slow_bound = rep.a_prime * eps;

  std::vector<FamilyPatch> patches{{family, Domain::ball(n, 1.0)}};
  const Interval t_range = model.t_range();
  const BoundednessReport bounded = check_bounded(patches, t_range, grid);
  rep.measured_c_hat = bounded.c_hat;

  const SlownessReport slow =
      measure_slowness(patches, t_range, bounded.c_hat * (1.0 + 1e-9), grid, sampling);
  rep.measured_direct_eps = slow.direct_eps;
  rep.slowness_within_bound = slow.direct_eps <= rep.slow_bound * (1.0 + 1e-9);

  rep.two_bounded_threshold = static_cast<double>(1.0L / (36.0L * nfac * e2xi));
  rep.threshold_met = eps < rep.two_bounded_threshold;
  rep.two_bounded = rep.threshold_met && bounded.c_hat < 2.0;
  return rep;
}

}  // namespace hypwarp
