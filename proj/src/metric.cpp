#include "hypwarp/metric.hpp"

#include <cmath>

#include "hypwarp/jet.hpp"

namespace hypwarp {

Mat SpaceMetric::deriv(const Vec& x, const std::vector<int>& multi_index) const {
  if (multi_index.size() > 2) fail(ErrorCode::InputOutOfRange, "deriv: multi-index order must be <= 2");
  const SpaceJet j = jet(x);
  if (multi_index.empty()) return j.g;
  if (multi_index.size() == 1) return j.d1[multi_index[0]];
  return j.second(multi_index[0], multi_index[1]);
}

static SpaceJet make_zero_space_jet(int n) {
  SpaceJet j;
  j.g = Mat(n);
  j.d1.assign(n, Mat(n));
  j.d2.assign(static_cast<std::size_t>(n) * n, Mat(n));
  return j;
}

SpaceJet FlatMetric::jet(const Vec&) const {
  SpaceJet j = make_zero_space_jet(n_);
  j.g = Mat::identity(n_);
  return j;
}

SpaceJet ConformalRoundMetric::jet(const Vec& x) const {
  const int n = n_;
  SpaceJet j = make_zero_space_jet(n);
  double r2 = 0.0;
  for (int i = 0; i < n; ++i) r2 += x[i] * x[i];
  const double s = 1.0 / (1.0 + r2);
  const double lam = 4.0 * s * s;
  // del_k lam = -16 x_k s^3,  del_l del_k lam = -16 delta_kl s^3 + 96 x_k x_l s^4
  for (int i = 0; i < n; ++i) j.g(i, i) = lam;
  for (int k = 0; k < n; ++k) {
    const double dk = -16.0 * x[k] * s * s * s;
    for (int i = 0; i < n; ++i) j.d1[k](i, i) = dk;
  }
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      double dkl = 96.0 * x[k] * x[l] * s * s * s * s;
      if (k == l) dkl += -16.0 * s * s * s;
      for (int i = 0; i < n; ++i) j.d2[k * n + l](i, i) = dkl;
    }
  return j;
}

SpaceJet EmbeddedMetric::jet(const Vec& x) const {
  const int n = n_;
  const std::vector<Jet3> e = embedding_(x);
  SpaceJet j = make_zero_space_jet(n);
  for (const Jet3& comp : e) {
    for (int i = 0; i < n; ++i)
      for (int jj = i; jj < n; ++jj) {
        j.g(i, jj) += comp.d1(i) * comp.d1(jj);
        for (int k = 0; k < n; ++k) j.d1[k](i, jj) += comp.d2(k, i) * comp.d1(jj) + comp.d1(i) * comp.d2(k, jj);
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l)
            j.d2[k * n + l](i, jj) += comp.d3(l, k, i) * comp.d1(jj) + comp.d2(k, i) * comp.d2(l, jj) +
                                      comp.d2(l, i) * comp.d2(k, jj) + comp.d1(i) * comp.d3(l, k, jj);
      }
  }
  // mirror the upper triangles
  for (int i = 0; i < n; ++i)
    for (int jj = 0; jj < i; ++jj) {
      j.g(i, jj) = j.g(jj, i);
      for (int k = 0; k < n; ++k) j.d1[k](i, jj) = j.d1[k](jj, i);
      for (int k = 0; k < n * n; ++k) j.d2[k](i, jj) = j.d2[k](jj, i);
    }
  return j;
}

SpaceJet FdSpaceMetric::jet(const Vec& x) const {
  const int n = n_;
  SpaceJet j = make_zero_space_jet(n);
  const Mat center = eval_(x);
  j.g = center;
  auto shifted = [&](int k, double s, int l = -1, double s2 = 0.0) {
    Vec y = x;
    y[k] += s;
    if (l >= 0) y[l] += s2;
    return eval_(y);
  };
  for (int k = 0; k < n; ++k) {
    const Mat plus = shifted(k, h_);
    const Mat minus = shifted(k, -h_);
    j.d1[k] = (1.0 / (2.0 * h_)) * (plus - minus);
    j.d2[k * n + k] = (1.0 / (h_ * h_)) * (plus - 2.0 * center + minus);
  }
  for (int k = 0; k < n; ++k)
    for (int l = k + 1; l < n; ++l) {
      const Mat pp = shifted(k, h_, l, h_);
      const Mat pm = shifted(k, h_, l, -h_);
      const Mat mp = shifted(k, -h_, l, h_);
      const Mat mm = shifted(k, -h_, l, -h_);
      j.d2[k * n + l] = (1.0 / (4.0 * h_ * h_)) * ((pp - pm) - (mp - mm));
      j.d2[l * n + k] = j.d2[k * n + l];
    }
  return j;
}

static FamilyJet static_family_jet(const SpaceJet& s) {
  FamilyJet f;
  const int n = static_cast<int>(s.d1.size());
  f.g = s.g;
  f.dx = s.d1;
  f.dxx = s.d2;
  f.dt = Mat(n);
  f.dtt = Mat(n);
  f.dtdx.assign(n, Mat(n));
  return f;
}

FamilyJet ConstantFamily::jet(const Vec& x, double) const { return static_family_jet(g_->jet(x)); }

Mat InterpolatedFamily::value(const Vec& x, double t) const {
  const double s = s_.f(t);
  Mat g = base_->value(x);
  if (s != 0.0) g += s * (target_->value(x) - base_->value(x));
  return g;
}

FamilyJet InterpolatedFamily::jet(const Vec& x, double t) const {
  const SpaceJet jb = base_->jet(x);
  const SpaceJet jt = target_->jet(x);
  const int n = dim();
  const double s = s_.f(t);
  const double s1 = s_.df(t);
  const double s2 = s_.ddf(t);

  FamilyJet f;
  f.g = jb.g + s * (jt.g - jb.g);
  f.dx.resize(n);
  f.dtdx.resize(n);
  for (int l = 0; l < n; ++l) {
    f.dx[l] = jb.d1[l] + s * (jt.d1[l] - jb.d1[l]);
    f.dtdx[l] = s1 * (jt.d1[l] - jb.d1[l]);
  }
  f.dxx.resize(static_cast<std::size_t>(n) * n);
  for (int k = 0; k < n * n; ++k) f.dxx[k] = jb.d2[k] + s * (jt.d2[k] - jb.d2[k]);
  f.dt = s1 * (jt.g - jb.g);
  f.dtt = s2 * (jt.g - jb.g);
  return f;
}

FamilyJet ScaledFamily::jet(const Vec& x, double t) const {
  FamilyJet j = base_->jet(x, t);
  const double k = kappa_.f(t);
  const double k1 = kappa_.df(t);
  const double k2 = kappa_.ddf(t);

  FamilyJet f;
  const int n = dim();
  f.g = k * j.g;
  f.dx.resize(n);
  f.dtdx.resize(n);
  for (int l = 0; l < n; ++l) {
    f.dx[l] = k * j.dx[l];
    f.dtdx[l] = k1 * j.dx[l] + k * j.dtdx[l];
  }
  f.dxx.resize(static_cast<std::size_t>(n) * n);
  for (int m = 0; m < n * n; ++m) f.dxx[m] = k * j.dxx[m];
  f.dt = k1 * j.g + k * j.dt;
  f.dtt = k2 * j.g + 2.0 * k1 * j.dt + k * j.dtt;
  return f;
}

FamilyJet ReparamFamily::jet(const Vec& x, double s) const {
  FamilyJet j = base_->jet(x, phi_.f(s));
  const double p1 = phi_.df(s);
  const double p2 = phi_.ddf(s);
  FamilyJet f = j;
  f.dt = p1 * j.dt;
  f.dtt = p2 * j.dt + (p1 * p1) * j.dtt;
  for (std::size_t l = 0; l < f.dtdx.size(); ++l) f.dtdx[l] = p1 * j.dtdx[l];
  return f;
}

Vec PullbackFamily::image_point(const Vec& x) const {
  Vec y = m_.apply(x);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += x0_[i];
  return y;
}

Mat PullbackFamily::value(const Vec& x, double t) const {
  return kappa_.f(t) * congruence(b_, base_->value(image_point(x), t + t0_));
}

FamilyJet PullbackFamily::jet(const Vec& x, double t) const {
  const int n = dim();
  const FamilyJet j = base_->jet(image_point(x), t + t0_);
  const double k = kappa_.f(t);
  const double k1 = kappa_.df(t);
  const double k2 = kappa_.ddf(t);

  auto conj = [&](const Mat& g) { return congruence(b_, g); };

  // chain rule through y = Mx
  std::vector<Mat> dy(n, Mat(n));
  for (int l = 0; l < n; ++l)
    for (int m2 = 0; m2 < n; ++m2)
      if (m_(m2, l) != 0.0) dy[l] += m_(m2, l) * j.dx[m2];

  FamilyJet f;
  const Mat cg = conj(j.g);
  const Mat cdt = conj(j.dt);
  f.g = k * cg;
  f.dt = k1 * cg + k * cdt;
  f.dtt = k2 * cg + 2.0 * k1 * cdt + k * conj(j.dtt);
  f.dx.resize(n);
  f.dtdx.resize(n);
  for (int l = 0; l < n; ++l) {
    f.dx[l] = k * conj(dy[l]);
    Mat mixed(n);
    for (int m2 = 0; m2 < n; ++m2)
      if (m_(m2, l) != 0.0) mixed += m_(m2, l) * j.dtdx[m2];
    f.dtdx[l] = k1 * conj(dy[l]) + k * conj(mixed);
  }
  f.dxx.resize(static_cast<std::size_t>(n) * n);
  for (int l = 0; l < n; ++l)
    for (int q = 0; q < n; ++q) {
      Mat acc(n);
      for (int m2 = 0; m2 < n; ++m2) {
        if (m_(m2, l) == 0.0) continue;
        for (int p = 0; p < n; ++p)
          if (m_(p, q) != 0.0) acc += (m_(m2, l) * m_(p, q)) * j.second_space(m2, p);
      }
      f.dxx[l * n + q] = k * conj(acc);
    }
  return f;
}

FamilyJet FdTimeFamily::jet(const Vec& x, double t) const {
  const SpaceJet c = slice_(x, t);
  const SpaceJet p = slice_(x, t + h_);
  const SpaceJet m = slice_(x, t - h_);
  FamilyJet f = static_family_jet(c);
  f.dt = (1.0 / (2.0 * h_)) * (p.g - m.g);
  f.dtt = (1.0 / (h_ * h_)) * (p.g - 2.0 * c.g + m.g);
  for (int l = 0; l < n_; ++l) f.dtdx[l] = (1.0 / (2.0 * h_)) * (p.d1[l] - m.d1[l]);
  return f;
}

SpaceJet FamilySliceMetric::jet(const Vec& x) const {
  const FamilyJet j = fam_->jet(x, t_);
  SpaceJet s;
  s.g = j.g;
  s.d1 = j.dx;
  s.d2 = j.dxx;
  return s;
}

Mat WarpedBlockMetric::value_at(const Vec& x, double t) const {
  const int n = fam_->dim();
  const Mat g = fam_->value(x, t);
  Mat h(n + 1);
  const double w = warp_.value(t);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) h(i, j) = w * g(i, j);
  h(n, n) = 1.0;
  return h;
}

SpaceJet WarpedBlockMetric::jet(const Vec& xt) const {
  const int n = fam_->dim();
  const int nb = n + 1;
  Vec x(xt.begin(), xt.begin() + n);
  const double t = xt[n];
  const FamilyJet j = fam_->jet(x, t);
  const double w = warp_.value(t);
  const double w1 = warp_.d1(t);
  const double w2 = warp_.d2(t);

  auto embed = [&](const Mat& a, double tt_entry) {
    Mat h(nb);
    for (int i = 0; i < n; ++i)
      for (int q = 0; q < n; ++q) h(i, q) = a(i, q);
    h(n, n) = tt_entry;
    return h;
  };

  SpaceJet out;
  out.g = embed(w * j.g, 1.0);
  out.d1.resize(nb);
  for (int k = 0; k < n; ++k) out.d1[k] = embed(w * j.dx[k], 0.0);
  out.d1[n] = embed(w1 * j.g + w * j.dt, 0.0);
  out.d2.assign(static_cast<std::size_t>(nb) * nb, Mat(nb));
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) out.d2[k * nb + l] = embed(w * j.second_space(k, l), 0.0);
  for (int k = 0; k < n; ++k) {
    const Mat mixed = embed(w1 * j.dx[k] + w * j.dtdx[k], 0.0);
    out.d2[k * nb + n] = mixed;
    out.d2[n * nb + k] = mixed;
  }
  out.d2[n * nb + n] = embed(w2 * j.g + 2.0 * w1 * j.dt + w * j.dtt, 0.0);
  return out;
}

}  // namespace hypwarp
