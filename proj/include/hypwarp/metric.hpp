#pragma once

#include <functional>
#include <memory>

#include "hypwarp/common.hpp"
#include "hypwarp/jet.hpp"
#include "hypwarp/mat.hpp"
#include "hypwarp/warpfn.hpp"

namespace hypwarp {

// Full order-2 derivative data of a metric at one point. All measurement
// loops (sup norms, curvature, slowness) consume one jet per point, so the
// jet is the primary virtual and scalar accessors are derived from it.
struct SpaceJet {
  Mat g;
  std::vector<Mat> d1;  // d1[k] = del_k g
  std::vector<Mat> d2;  // d2[k*n+l] = del_k del_l g, symmetric in (k,l)

  const Mat& second(int k, int l) const { return d2[k * static_cast<int>(d1.size()) + l]; }
};

class SpaceMetric {
 public:
  virtual ~SpaceMetric() = default;
  virtual int dim() const = 0;
  virtual SpaceJet jet(const Vec& x) const = 0;

  Mat value(const Vec& x) const { return jet(x).g; }
  // multi-index access, |J| <= 2 (J lists differentiation axes)
  Mat deriv(const Vec& x, const std::vector<int>& multi_index) const;
};

struct FamilyJet {
  Mat g;
  std::vector<Mat> dx;    // del_l g
  std::vector<Mat> dxx;   // [l*n+m]
  Mat dt;
  Mat dtt;
  std::vector<Mat> dtdx;  // del_t del_l g

  const Mat& second_space(int l, int m) const { return dxx[l * static_cast<int>(dx.size()) + m]; }
};

// t-indexed family of metrics on a chart, with the mixed derivatives the
// slowness estimates need.
class MetricFamily {
 public:
  virtual ~MetricFamily() = default;
  virtual int dim() const = 0;
  virtual Interval t_interval() const = 0;
  virtual FamilyJet jet(const Vec& x, double t) const = 0;

  virtual Mat value(const Vec& x, double t) const { return jet(x, t).g; }
};

using SpaceMetricPtr = std::shared_ptr<const SpaceMetric>;
using MetricFamilyPtr = std::shared_ptr<const MetricFamily>;

// ---- concrete space metrics ------------------------------------------------

class FlatMetric final : public SpaceMetric {
 public:
  explicit FlatMetric(int n) : n_(n) {}
  int dim() const override { return n_; }
  SpaceJet jet(const Vec& x) const override;

 private:
  int n_;
};

// Round sphere metric in stereographic coordinates: g = 4/(1+|x|^2)^2 * Id.
class ConformalRoundMetric final : public SpaceMetric {
 public:
  explicit ConformalRoundMetric(int n) : n_(n) {}
  int dim() const override { return n_; }
  SpaceJet jet(const Vec& x) const override;

 private:
  int n_;
};

// Metric induced by an embedding E: R^n -> R^m supplied as a jet program.
class EmbeddedMetric final : public SpaceMetric {
 public:
  using EmbeddingFn = std::function<std::vector<Jet3>(const Vec& x)>;
  EmbeddedMetric(int n, EmbeddingFn embedding) : n_(n), embedding_(std::move(embedding)) {}
  int dim() const override { return n_; }
  SpaceJet jet(const Vec& x) const override;

 private:
  int n_;
  EmbeddingFn embedding_;
};

// Central finite differences of order 2 around an evaluation-only metric.
class FdSpaceMetric final : public SpaceMetric {
 public:
  using EvalFn = std::function<Mat(const Vec&)>;
  FdSpaceMetric(int n, EvalFn eval, double step) : n_(n), eval_(std::move(eval)), h_(step) {}
  int dim() const override { return n_; }
  SpaceJet jet(const Vec& x) const override;

 private:
  int n_;
  EvalFn eval_;
  double h_;
};

// ---- schedules and families -------------------------------------------------

// Scalar function of t with two derivatives; used for interpolation schedules
// and time-dependent scalings.
struct Schedule {
  std::function<double(double)> f, df, ddf;

  static Schedule constant(double c) {
    return {[c](double) { return c; }, [](double) { return 0.0; }, [](double) { return 0.0; }};
  }
  static Schedule linear(double slope, double offset = 1.0) {
    return {[=](double t) { return offset + slope * t; }, [=](double) { return slope; },
            [](double) { return 0.0; }};
  }
  static Schedule bump(DeformationParams p) {
    return {[p](double t) { return p.value(t); }, [p](double t) { return p.d1(t); },
            [p](double t) { return p.d2(t); }};
  }
};

class ConstantFamily final : public MetricFamily {
 public:
  ConstantFamily(SpaceMetricPtr g, Interval t) : g_(std::move(g)), t_(t) {}
  int dim() const override { return g_->dim(); }
  Interval t_interval() const override { return t_; }
  FamilyJet jet(const Vec& x, double t) const override;
  Mat value(const Vec& x, double t) const override { return g_->value(x); }

 private:
  SpaceMetricPtr g_;
  Interval t_;
};

// g_t = base + s(t) (target - base)
class InterpolatedFamily final : public MetricFamily {
 public:
  InterpolatedFamily(SpaceMetricPtr base, SpaceMetricPtr target, Schedule s, Interval t)
      : base_(std::move(base)), target_(std::move(target)), s_(std::move(s)), t_(t) {}
  int dim() const override { return base_->dim(); }
  Interval t_interval() const override { return t_; }
  FamilyJet jet(const Vec& x, double t) const override;
  Mat value(const Vec& x, double t) const override;

 private:
  SpaceMetricPtr base_, target_;
  Schedule s_;
  Interval t_;
};

// kappa(t) * g_t
class ScaledFamily final : public MetricFamily {
 public:
  ScaledFamily(MetricFamilyPtr base, Schedule kappa) : base_(std::move(base)), kappa_(std::move(kappa)) {}
  int dim() const override { return base_->dim(); }
  Interval t_interval() const override { return base_->t_interval(); }
  FamilyJet jet(const Vec& x, double t) const override;
  Mat value(const Vec& x, double t) const override { return kappa_.f(t) * base_->value(x, t); }

 private:
  MetricFamilyPtr base_;
  Schedule kappa_;
};

// {g_{t+b}} on I - b
class TimeShiftedFamily final : public MetricFamily {
 public:
  TimeShiftedFamily(MetricFamilyPtr base, double b) : base_(std::move(base)), b_(b) {}
  int dim() const override { return base_->dim(); }
  Interval t_interval() const override {
    Interval i = base_->t_interval();
    return {i.lo - b_, i.hi - b_};
  }
  FamilyJet jet(const Vec& x, double t) const override { return base_->jet(x, t + b_); }
  Mat value(const Vec& x, double t) const override { return base_->value(x, t + b_); }

 private:
  MetricFamilyPtr base_;
  double b_;
};

// {g_{phi(s)}} for a reparametrization phi: J -> I
class ReparamFamily final : public MetricFamily {
 public:
  ReparamFamily(MetricFamilyPtr base, Schedule phi, Interval j)
      : base_(std::move(base)), phi_(std::move(phi)), j_(j) {}
  int dim() const override { return base_->dim(); }
  Interval t_interval() const override { return j_; }
  FamilyJet jet(const Vec& x, double s) const override;
  Mat value(const Vec& x, double s) const override { return base_->value(x, phi_.f(s)); }

 private:
  MetricFamilyPtr base_;
  Schedule phi_;
  Interval j_;
};

// f_t(x) = kappa(t) B^T g_{t+t0}(x0 + Mx) B — the chart-side family of the
// explicit chart construction.
class PullbackFamily final : public MetricFamily {
 public:
  PullbackFamily(MetricFamilyPtr base, double t0, Vec offset, Mat space_map, Mat congruence,
                 Schedule kappa, Interval t)
      : base_(std::move(base)), t0_(t0), x0_(std::move(offset)), m_(std::move(space_map)),
        b_(std::move(congruence)), kappa_(std::move(kappa)), t_(t) {}
  int dim() const override { return base_->dim(); }
  Interval t_interval() const override { return t_; }
  FamilyJet jet(const Vec& x, double t) const override;
  Mat value(const Vec& x, double t) const override;

 private:
  Vec image_point(const Vec& x) const;
  MetricFamilyPtr base_;
  double t0_;
  Vec x0_;
  Mat m_, b_;
  Schedule kappa_;
  Interval t_;
};

// Finite differences in t around a family with spatial jets available.
class FdTimeFamily final : public MetricFamily {
 public:
  using SliceFn = std::function<SpaceJet(const Vec&, double)>;
  FdTimeFamily(int n, Interval t, SliceFn slice, double step)
      : n_(n), t_(t), slice_(std::move(slice)), h_(step) {}
  int dim() const override { return n_; }
  Interval t_interval() const override { return t_; }
  FamilyJet jet(const Vec& x, double t) const override;

 private:
  int n_;
  Interval t_;
  SliceFn slice_;
  double h_;
};

// The family frozen at one time, as a plain space metric.
class FamilySliceMetric final : public SpaceMetric {
 public:
  FamilySliceMetric(MetricFamilyPtr fam, double t) : fam_(std::move(fam)), t_(t) {}
  int dim() const override { return fam_->dim(); }
  SpaceJet jet(const Vec& x) const override;

 private:
  MetricFamilyPtr fam_;
  double t_;
};

// ---- the (n+1)-block w(t) g_t + dt^2 ----------------------------------------

// Exposes the warped variable metric as an (n+1)-dimensional SpaceMetric with
// coordinates (x_0..x_{n-1}, t); t is the last axis. Block structure is exact:
// no cross terms, h_tt = 1.
class WarpedBlockMetric final : public SpaceMetric {
 public:
  WarpedBlockMetric(MetricFamilyPtr family, Warp warp) : fam_(std::move(family)), warp_(warp) {}
  int dim() const override { return fam_->dim() + 1; }
  SpaceJet jet(const Vec& xt) const override;
  Mat value_at(const Vec& x, double t) const;
  const MetricFamily& family() const { return *fam_; }
  MetricFamilyPtr family_ptr() const { return fam_; }
  Warp warp() const { return warp_; }
  Interval t_interval() const { return fam_->t_interval(); }

 private:
  MetricFamilyPtr fam_;
  Warp warp_;
};

using WarpedBlockPtr = std::shared_ptr<const WarpedBlockMetric>;

}  // namespace hypwarp
