#pragma once

#include <memory>
#include <string>

#include "hypwarp/grid.hpp"
#include "hypwarp/jet.hpp"
#include "hypwarp/metric.hpp"

namespace hypwarp {

struct ChartLocation {
  int chart = -1;
  Vec coords;
  double margin = 0.0;
};

// Finite atlas of a closed manifold. Points are passed around in an ambient
// representation (unit vectors in R^{n+1} for the sphere, wrapped coordinates
// for the torus); charts convert both ways. "Nice" means every point is
// covered by some chart with margin >= 1 in chart coordinates.
class Atlas {
 public:
  virtual ~Atlas() = default;
  virtual int dim() const = 0;
  virtual int ambient_dim() const = 0;
  virtual int num_charts() const = 0;
  virtual Domain chart_domain(int i) const = 0;
  virtual Vec to_ambient(int i, const Vec& coords) const = 0;
  virtual Vec to_chart(int i, const Vec& ambient) const = 0;

  // Chart with the largest margin; ties go to the lowest index.
  ChartLocation best_chart(const Vec& ambient) const;

  Vec transition(int from, int to, const Vec& coords) const {
    return to_chart(to, to_ambient(from, coords));
  }

  double niceness_margin() const { return verified_margin_; }
  void set_verified_margin(double m) { verified_margin_ = m; }

 private:
  double verified_margin_ = 0.0;
};

using AtlasPtr = std::shared_ptr<const Atlas>;

// Two stereographic charts (projection from the north and south poles), each
// with domain radius 2.25 so that the covered closed hemisphere (|x| <= 1)
// keeps margin 1.25 from the boundary.
class SphereAtlas final : public Atlas {
 public:
  explicit SphereAtlas(int n);
  int dim() const override { return n_; }
  int ambient_dim() const override { return n_ + 1; }
  int num_charts() const override { return 2; }
  Domain chart_domain(int) const override { return Domain::ball(n_, kDomainRadius); }
  Vec to_ambient(int i, const Vec& coords) const override;
  Vec to_chart(int i, const Vec& ambient) const override;

  static constexpr double kDomainRadius = 2.25;

 private:
  int n_;
};

// Flat torus R^n / 2pi Z^n with 2^n shifted box charts; every point sits in
// some chart with margin >= pi/2.
class TorusAtlas final : public Atlas {
 public:
  explicit TorusAtlas(int n);
  int dim() const override { return n_; }
  int ambient_dim() const override { return n_; }
  int num_charts() const override { return 1 << n_; }
  Domain chart_domain(int) const override;
  Vec to_ambient(int i, const Vec& coords) const override;
  Vec to_chart(int i, const Vec& ambient) const override;

 private:
  Vec offset(int i) const;
  int n_;
};

// Builds the atlas and verifies the niceness margin by a seeded scan
// (poles, axis points and 10^4 random points for the sphere).
std::shared_ptr<const SphereAtlas> make_sphere_atlas(int n);
std::shared_ptr<const TorusAtlas> make_torus_atlas(int n);

// Sphere point as degree-3 jets in chart coordinates. chart 0 projects from
// the north pole (origin maps to the south pole), chart 1 from the south.
std::vector<Jet3> stereographic_embedding(int chart, const Vec& x);

// ---- metrics expressed chart-wise -------------------------------------------

struct MetricOnAtlas {
  AtlasPtr atlas;
  std::vector<SpaceMetricPtr> fields;  // one per chart
  std::string spec;

  const SpaceMetric& field(int i) const { return *fields[i]; }
};

// Spec strings: "round" | "ellipsoid:a1,...,a_{n+1}" | "bumpy:amp,freq" on the
// sphere atlas, "flat" on the torus atlas. Validates SPD on a sample grid.
MetricOnAtlas builtin_metric(const std::string& spec, const AtlasPtr& atlas);

// Induced metric of x -> L * p(x) with p the stereographic sphere point; L is
// any linear map of R^{n+1}. Rotated and stretched spheres come from here.
SpaceMetricPtr linear_image_sphere_metric(int chart, int n, const Mat& l);

struct FamilyOnAtlas {
  AtlasPtr atlas;
  std::vector<MetricFamilyPtr> families;
  Interval t;

  const MetricFamily& family(int i) const { return *families[i]; }
};

FamilyOnAtlas constant_family(const MetricOnAtlas& g, Interval t);

// t -> sigma_{S^n} + s(t) (g - sigma_{S^n}); the base round metric comes from
// the same atlas. SPD is asserted on a sample grid.
FamilyOnAtlas family_from_interpolation(const MetricOnAtlas& g, const Schedule& s, Interval t);

// kappa(t) * g_t applied chart-wise.
FamilyOnAtlas scaled_family(const FamilyOnAtlas& fam, const Schedule& kappa);

FamilyOnAtlas shifted_family(const FamilyOnAtlas& fam, double b);
FamilyOnAtlas reparam_family(const FamilyOnAtlas& fam, const Schedule& phi, Interval j);

}  // namespace hypwarp
