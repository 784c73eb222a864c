#include "hypwarp/spd.hpp"

#include <cmath>
#include <sstream>

#include "hypwarp/common.hpp"

namespace hypwarp {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

bool is_symmetric(const Mat& g, double rel_tol) {
  const double scale = std::max(g.max_abs(), 1e-300);
  for (int i = 0; i < g.n(); ++i)
    for (int j = i + 1; j < g.n(); ++j)
      if (std::fabs(g(i, j) - g(j, i)) > rel_tol * scale) return false;
  return true;
}

void check_spd_hypotheses(const Mat& g, double c, const char* where) {
  if (!(c > 1.0)) fail(ErrorCode::InputOutOfRange, std::string(where) + ": boundedness constant must be > 1");
  if (!is_symmetric(g)) fail(ErrorCode::NotSpd, std::string(where) + ": matrix is not symmetric");
  const double max_entry = g.max_abs();
  if (!(max_entry < c)) {
    std::ostringstream msg;
    msg << where << ": entry bound fails, max|G_ij| = " << max_entry << " >= c = " << c;
    fail(ErrorCode::HypothesisViolated, msg.str());
  }
  const double det = determinant(g);
  if (!(std::fabs(det) > 1.0 / c)) {
    std::ostringstream msg;
    msg << where << ": determinant bound fails, |det G| = " << std::fabs(det) << " <= 1/c = " << 1.0 / c;
    fail(ErrorCode::HypothesisViolated, msg.str());
  }
}

SymEigen jacobi_eigen(const Mat& g) {
  const int n = g.n();
  Mat a = g;
  Mat v = Mat::identity(n);
  const double tol = 1e-14 * std::max(g.frobenius(), 1e-300);

  auto offdiag = [&]() {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < 100 && offdiag() > tol; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double cs = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * cs;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = cs * akp - sn * akq;
          a(k, q) = sn * akp + cs * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = cs * apk - sn * aqk;
          a(q, k) = sn * apk + cs * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = cs * vkp - sn * vkq;
          v(k, q) = sn * vkp + cs * vkq;
        }
      }
    }
  }

  SymEigen out;
  out.eigenvalues.resize(n);
  for (int i = 0; i < n; ++i) out.eigenvalues[i] = a(i, i);
  out.eigenvectors = v;
  return out;
}

double BoundedFactorization::entry_bound() const {
  const int n = f.n();
  return n * std::sqrt(c);
}

double BoundedFactorization::inv_entry_bound() const {
  const int n = f.n();
  return n * std::sqrt(factorial(n - 1) * std::pow(c, n));
}

double BoundedFactorization::eig_lower() const {
  const int n = f.n();
  return 1.0 / (factorial(n) * std::pow(c, n));
}

double BoundedFactorization::eig_upper() const { return f.n() * c; }

BoundedFactorization spd_factor(const Mat& g, double c) {
  check_spd_hypotheses(g, c, "spd_factor");
  const int n = g.n();

  SymEigen eig = jacobi_eigen(g);
  for (int i = 0; i < n; ++i) {
    if (!(eig.eigenvalues[i] > 0.0)) {
      std::ostringstream msg;
      msg << "spd_factor: eigenvalue " << i << " = " << eig.eigenvalues[i] << " is not positive";
      fail(ErrorCode::NotSpd, msg.str());
    }
  }

  // G = V D V^T, so with O = V^T the proof's F = sqrt(D) O and F^-1 = V sqrt(D)^-1.
  BoundedFactorization out;
  out.c = c;
  out.eigenvalues = eig.eigenvalues;
  out.f = Mat(n);
  out.f_inv = Mat(n);
  for (int i = 0; i < n; ++i) {
    const double root = std::sqrt(eig.eigenvalues[i]);
    for (int j = 0; j < n; ++j) {
      out.f(i, j) = root * eig.eigenvectors(j, i);
      out.f_inv(j, i) = eig.eigenvectors(j, i) / root;
    }
  }
  return out;
}

QuadraticFormSandwich quadratic_form_sandwich(const Mat& g, double c, const Vec& u) {
  check_spd_hypotheses(g, c, "quadratic_form_sandwich");
  const int n = g.n();
  const double u2 = dot(u, u);
  if (!(u2 > 1e-300)) fail(ErrorCode::ZeroVector, "quadratic_form_sandwich: u must be nonzero");

  QuadraticFormSandwich s;
  s.lower = u2 / (factorial(n) * std::pow(c, n));
  s.upper = n * c * u2;
  s.value = bilinear(g, u, u);
  return s;
}

}  // namespace hypwarp
