#include "hypwarp/jet.hpp"

namespace hypwarp {

Jet3 operator*(const Jet3& a, const Jet3& b) {
  const int n = a.n_;
  Jet3 c(n, a.v_ * b.v_);
  for (int i = 0; i < n; ++i) c.d1_[i] = a.d1_[i] * b.v_ + a.v_ * b.d1_[i];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      c.d2_[i * n + j] = a.d2(i, j) * b.v_ + a.d1_[i] * b.d1_[j] + a.d1_[j] * b.d1_[i] + a.v_ * b.d2(i, j);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double s = a.d3(i, j, k) * b.v_ + a.v_ * b.d3(i, j, k);
        s += a.d2(i, j) * b.d1_[k] + a.d2(i, k) * b.d1_[j] + a.d2(j, k) * b.d1_[i];
        s += a.d1_[i] * b.d2(j, k) + a.d1_[j] * b.d2(i, k) + a.d1_[k] * b.d2(i, j);
        c.d3_[(i * n + j) * n + k] = s;
      }
  return c;
}

Jet3 Jet3::compose(double f0, double f1, double f2, double f3) const {
  const int n = n_;
  Jet3 c(n, f0);
  for (int i = 0; i < n; ++i) c.d1_[i] = f1 * d1_[i];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c.d2_[i * n + j] = f2 * d1_[i] * d1_[j] + f1 * d2(i, j);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double s = f3 * d1_[i] * d1_[j] * d1_[k];
        s += f2 * (d2(i, j) * d1_[k] + d2(i, k) * d1_[j] + d2(j, k) * d1_[i]);
        s += f1 * d3(i, j, k);
        c.d3_[(i * n + j) * n + k] = s;
      }
  return c;
}

}  // namespace hypwarp
