#pragma once

#include <cmath>
#include <vector>

namespace hypwarp {

// Degree-3 Taylor data of a scalar function of n variables. Induced metrics
// need two derivatives of g_ij = <d_i E, d_j E>, hence three of the embedding
// E; carrying jets through the embedding formula is less error-prone than
// hand-differentiating rational maps.
class Jet3 {
 public:
  Jet3() = default;
  Jet3(int n, double value) : n_(n), v_(value), d1_(n, 0.0), d2_(sq(n), 0.0), d3_(cu(n), 0.0) {}

  static Jet3 coordinate(int n, int axis, double value) {
    Jet3 j(n, value);
    j.d1_[axis] = 1.0;
    return j;
  }

  int dim() const { return n_; }
  double value() const { return v_; }
  double d1(int i) const { return d1_[i]; }
  double d2(int i, int j) const { return d2_[i * n_ + j]; }
  double d3(int i, int j, int k) const { return d3_[(i * n_ + j) * n_ + k]; }

  friend Jet3 operator+(const Jet3& a, const Jet3& b) {
    Jet3 c = a;
    c.v_ += b.v_;
    for (std::size_t i = 0; i < c.d1_.size(); ++i) c.d1_[i] += b.d1_[i];
    for (std::size_t i = 0; i < c.d2_.size(); ++i) c.d2_[i] += b.d2_[i];
    for (std::size_t i = 0; i < c.d3_.size(); ++i) c.d3_[i] += b.d3_[i];
    return c;
  }

  friend Jet3 operator-(const Jet3& a, const Jet3& b) {
    Jet3 c = a;
    c.v_ -= b.v_;
    for (std::size_t i = 0; i < c.d1_.size(); ++i) c.d1_[i] -= b.d1_[i];
    for (std::size_t i = 0; i < c.d2_.size(); ++i) c.d2_[i] -= b.d2_[i];
    for (std::size_t i = 0; i < c.d3_.size(); ++i) c.d3_[i] -= b.d3_[i];
    return c;
  }

  friend Jet3 operator*(double s, const Jet3& a) {
    Jet3 c = a;
    c.v_ *= s;
    for (double& x : c.d1_) x *= s;
    for (double& x : c.d2_) x *= s;
    for (double& x : c.d3_) x *= s;
    return c;
  }

  friend Jet3 operator+(const Jet3& a, double s) {
    Jet3 c = a;
    c.v_ += s;
    return c;
  }

  friend Jet3 operator-(double s, const Jet3& a) { return (-1.0 * a) + s; }

  friend Jet3 operator*(const Jet3& a, const Jet3& b);

  // Composition with a scalar map phi given by derivatives up to order 3.
  Jet3 compose(double f0, double f1, double f2, double f3) const;

  Jet3 reciprocal() const {
    const double t = v_;
    return compose(1.0 / t, -1.0 / (t * t), 2.0 / (t * t * t), -6.0 / (t * t * t * t));
  }

  Jet3 sin() const { return compose(std::sin(v_), std::cos(v_), -std::sin(v_), -std::cos(v_)); }
  Jet3 cos() const { return compose(std::cos(v_), -std::sin(v_), -std::cos(v_), std::sin(v_)); }

 private:
  static int sq(int n) { return n * n; }
  static int cu(int n) { return n * n * n; }

  int n_ = 0;
  double v_ = 0.0;
  std::vector<double> d1_, d2_, d3_;
};

}  // namespace hypwarp
