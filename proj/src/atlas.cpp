#include "hypwarp/atlas.hpp"

#include <cmath>
#include <sstream>

#include "hypwarp/spd.hpp"

namespace hypwarp {

ChartLocation Atlas::best_chart(const Vec& ambient) const {
  ChartLocation best;
  best.margin = -1e300;
  for (int i = 0; i < num_charts(); ++i) {
    Vec coords = to_chart(i, ambient);
    const double margin = chart_domain(i).margin(coords);
    if (margin > best.margin + 1e-12) {
      best.chart = i;
      best.coords = std::move(coords);
      best.margin = margin;
    }
  }
  return best;
}

// ---- sphere ------------------------------------------------------------------

SphereAtlas::SphereAtlas(int n) : n_(n) {
  if (n < 2) fail(ErrorCode::InputOutOfRange, "sphere atlas needs n >= 2");
}

Vec SphereAtlas::to_ambient(int i, const Vec& coords) const {
  double r2 = 0.0;
  for (double c : coords) r2 += c * c;
  const double s = 1.0 / (1.0 + r2);
  Vec p(n_ + 1);
  for (int k = 0; k < n_; ++k) p[k] = 2.0 * coords[k] * s;
  p[n_] = (i == 0) ? (1.0 - 2.0 * s) : (2.0 * s - 1.0);
  return p;
}

Vec SphereAtlas::to_chart(int i, const Vec& ambient) const {
  const double denom = (i == 0) ? (1.0 - ambient[n_]) : (1.0 + ambient[n_]);
  Vec x(n_);
  if (std::fabs(denom) < 1e-12) {
    for (int k = 0; k < n_; ++k) x[k] = 1e9;
    return x;
  }
  for (int k = 0; k < n_; ++k) x[k] = ambient[k] / denom;
  return x;
}

std::vector<Jet3> stereographic_embedding(int chart, const Vec& x) {
  const int n = static_cast<int>(x.size());
  Jet3 r2(n, 0.0);
  std::vector<Jet3> xi(n);
  for (int k = 0; k < n; ++k) {
    xi[k] = Jet3::coordinate(n, k, x[k]);
    r2 = r2 + xi[k] * xi[k];
  }
  const Jet3 s = (r2 + 1.0).reciprocal();
  std::vector<Jet3> p(n + 1);
  for (int k = 0; k < n; ++k) p[k] = 2.0 * (xi[k] * s);
  p[n] = (chart == 0) ? (1.0 - 2.0 * s) : (2.0 * s + (-1.0));
  return p;
}

// ---- torus -------------------------------------------------------------------

static double wrap_angle(double v) {
  const double two_pi = 6.283185307179586476925286766559;
  double w = std::fmod(v + two_pi / 2.0, two_pi);
  if (w < 0.0) w += two_pi;
  return w - two_pi / 2.0;
}

TorusAtlas::TorusAtlas(int n) : n_(n) {
  if (n < 1 || n > 8) fail(ErrorCode::InputOutOfRange, "torus atlas needs 1 <= n <= 8");
}

Domain TorusAtlas::chart_domain(int) const {
  const double pi = 3.141592653589793238462643383280;
  return Domain::box(Vec(n_, -pi), Vec(n_, pi));
}

Vec TorusAtlas::offset(int i) const {
  const double pi = 3.141592653589793238462643383280;
  Vec o(n_, 0.0);
  for (int b = 0; b < n_; ++b)
    if (i & (1 << b)) o[b] = pi;
  return o;
}

Vec TorusAtlas::to_ambient(int i, const Vec& coords) const {
  const Vec o = offset(i);
  Vec p(n_);
  for (int k = 0; k < n_; ++k) p[k] = wrap_angle(coords[k] + o[k]);
  return p;
}

Vec TorusAtlas::to_chart(int i, const Vec& ambient) const {
  const Vec o = offset(i);
  Vec q(n_);
  for (int k = 0; k < n_; ++k) q[k] = wrap_angle(ambient[k] - o[k]);
  return q;
}

// ---- construction with margin scan --------------------------------------------

namespace {

double scan_margin(const Atlas& atlas, const std::vector<Vec>& samples) {
  double worst = 1e300;
  for (const Vec& p : samples) worst = std::min(worst, atlas.best_chart(p).margin);
  return worst;
}

}  // namespace

std::shared_ptr<const SphereAtlas> make_sphere_atlas(int n) {
  auto atlas = std::make_shared<SphereAtlas>(n);
  Rng rng(0x73a11a5ull);
  std::vector<Vec> samples;
  samples.reserve(10000 + 2 * (n + 1));
  for (int i = 0; i < 10000; ++i) samples.push_back(rng.unit_vector(n + 1));
  for (int k = 0; k <= n; ++k) {
    Vec e(n + 1, 0.0);
    e[k] = 1.0;
    samples.push_back(e);
    e[k] = -1.0;
    samples.push_back(e);
  }
  atlas->set_verified_margin(scan_margin(*atlas, samples));
  return atlas;
}

std::shared_ptr<const TorusAtlas> make_torus_atlas(int n) {
  auto atlas = std::make_shared<TorusAtlas>(n);
  Rng rng(0x70b05ull);
  const double pi = 3.141592653589793238462643383280;
  std::vector<Vec> samples;
  samples.reserve(10000);
  for (int i = 0; i < 10000; ++i) {
    Vec p(n);
    for (int k = 0; k < n; ++k) p[k] = rng.uniform(-pi, pi);
    samples.push_back(p);
  }
  atlas->set_verified_margin(scan_margin(*atlas, samples));
  return atlas;
}

// ---- built-in metrics ----------------------------------------------------------

SpaceMetricPtr linear_image_sphere_metric(int chart, int n, const Mat& l) {
  return std::make_shared<EmbeddedMetric>(n, [chart, l](const Vec& x) {
    const std::vector<Jet3> p = stereographic_embedding(chart, x);
    const int m = static_cast<int>(p.size());
    std::vector<Jet3> e(m, Jet3(static_cast<int>(x.size()), 0.0));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (l(i, j) != 0.0) e[i] = e[i] + l(i, j) * p[j];
    return e;
  });
}

namespace {

std::vector<double> parse_args(const std::string& spec, const std::string& name) {
  std::vector<double> args;
  const auto colon = spec.find(':');
  if (colon == std::string::npos) return args;
  std::stringstream ss(spec.substr(colon + 1));
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      args.push_back(std::stod(tok));
    } catch (const std::exception&) {
      fail(ErrorCode::ConfigParse, "bad numeric argument '" + tok + "' in metric spec '" + name + "'");
    }
  }
  return args;
}

void validate_spd_on_grid(const MetricOnAtlas& m) {
  for (int c = 0; c < m.atlas->num_charts(); ++c) {
    for (const Vec& x : grid_points(m.atlas->chart_domain(c), 5)) {
      const Mat g = m.fields[c]->value(x);
      if (!g.is_finite()) fail(ErrorCode::EvaluationFailure, "metric evaluation not finite");
      SymEigen eig = jacobi_eigen(g);
      for (double mu : eig.eigenvalues)
        if (!(mu > 0.0))
          fail(ErrorCode::NotPositiveDefinite, "metric '" + m.spec + "' loses positivity on chart grid");
    }
  }
}

}  // namespace

MetricOnAtlas builtin_metric(const std::string& spec, const AtlasPtr& atlas) {
  const std::string name = spec.substr(0, spec.find(':'));
  const std::vector<double> args = parse_args(spec, name);
  const int n = atlas->dim();

  MetricOnAtlas out;
  out.atlas = atlas;
  out.spec = spec;

  if (name == "round") {
    for (int c = 0; c < atlas->num_charts(); ++c)
      out.fields.push_back(std::make_shared<ConformalRoundMetric>(n));
  } else if (name == "ellipsoid") {
    if (static_cast<int>(args.size()) != n + 1)
      fail(ErrorCode::ConfigParse, "ellipsoid needs n+1 semi-axes");
    for (double a : args)
      if (!(a > 0.0)) fail(ErrorCode::InputOutOfRange, "ellipsoid semi-axes must be positive");
    Mat l(n + 1);
    for (int i = 0; i <= n; ++i) l(i, i) = args[i];
    for (int c = 0; c < atlas->num_charts(); ++c)
      out.fields.push_back(linear_image_sphere_metric(c, n, l));
  } else if (name == "bumpy") {
    if (args.size() != 2) fail(ErrorCode::ConfigParse, "bumpy needs amp,freq");
    const double amp = args[0];
    const double freq = args[1];
    if (!(std::fabs(amp) < 0.5)) fail(ErrorCode::InputOutOfRange, "bumpy amplitude must satisfy |amp| < 0.5");
    for (int c = 0; c < atlas->num_charts(); ++c) {
      out.fields.push_back(std::make_shared<EmbeddedMetric>(n, [c, amp, freq, n](const Vec& x) {
        std::vector<Jet3> p = stereographic_embedding(c, x);
        const Jet3 radial = (amp * (freq * p[n]).cos()) + 1.0;
        for (Jet3& comp : p) comp = radial * comp;
        return p;
      }));
    }
  } else if (name == "flat") {
    for (int c = 0; c < atlas->num_charts(); ++c) out.fields.push_back(std::make_shared<FlatMetric>(n));
  } else {
    fail(ErrorCode::ConfigParse, "unknown metric spec '" + spec + "'");
  }

  validate_spd_on_grid(out);
  return out;
}

// ---- families over an atlas -----------------------------------------------------

FamilyOnAtlas constant_family(const MetricOnAtlas& g, Interval t) {
  FamilyOnAtlas fam;
  fam.atlas = g.atlas;
  fam.t = t;
  for (const auto& field : g.fields) fam.families.push_back(std::make_shared<ConstantFamily>(field, t));
  return fam;
}

FamilyOnAtlas family_from_interpolation(const MetricOnAtlas& g, const Schedule& s, Interval t) {
  const MetricOnAtlas round = builtin_metric("round", g.atlas);
  FamilyOnAtlas fam;
  fam.atlas = g.atlas;
  fam.t = t;
  for (int c = 0; c < g.atlas->num_charts(); ++c)
    fam.families.push_back(std::make_shared<InterpolatedFamily>(round.fields[c], g.fields[c], s, t));

  // The segment between SPD endpoints stays SPD; asserted on a coarse grid anyway.
  std::vector<double> t_probe;
  if (std::isfinite(t.length()))
    t_probe = {t.lo + 0.01 * t.length(), t.lo + 0.5 * t.length(), t.hi - 0.01 * t.length()};
  else
    t_probe = {t.lo + 0.1, t.lo + 1.0, t.lo + 10.0, t.lo + 100.0};
  for (int c = 0; c < g.atlas->num_charts(); ++c) {
    for (double tt : t_probe) {
      for (const Vec& x : grid_points(g.atlas->chart_domain(c), 4)) {
        SymEigen eig = jacobi_eigen(fam.families[c]->value(x, tt));
        for (double mu : eig.eigenvalues)
          if (!(mu > 0.0)) fail(ErrorCode::NotPositiveDefinite, "interpolated family leaves the SPD cone");
      }
    }
  }
  return fam;
}

FamilyOnAtlas scaled_family(const FamilyOnAtlas& fam, const Schedule& kappa) {
  FamilyOnAtlas out;
  out.atlas = fam.atlas;
  out.t = fam.t;
  for (const auto& f : fam.families) out.families.push_back(std::make_shared<ScaledFamily>(f, kappa));
  return out;
}

FamilyOnAtlas shifted_family(const FamilyOnAtlas& fam, double b) {
  FamilyOnAtlas out;
  out.atlas = fam.atlas;
  out.t = {fam.t.lo - b, fam.t.hi - b};
  for (const auto& f : fam.families) out.families.push_back(std::make_shared<TimeShiftedFamily>(f, b));
  return out;
}

FamilyOnAtlas reparam_family(const FamilyOnAtlas& fam, const Schedule& phi, Interval j) {
  FamilyOnAtlas out;
  out.atlas = fam.atlas;
  out.t = j;
  for (const auto& f : fam.families) out.families.push_back(std::make_shared<ReparamFamily>(f, phi, j));
  return out;
}

}  // namespace hypwarp
