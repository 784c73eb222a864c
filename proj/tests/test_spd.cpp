#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "hypwarp/common.hpp"
#include "hypwarp/spd.hpp"

using namespace hypwarp;

namespace {

Mat diag2(double a, double b) {
  Mat g(2);
  g(0, 0) = a;
  g(1, 1) = b;
  return g;
}

// Seeded SPD sample with known eigenvalue range, entries < c, det > 1/c.
Mat random_spd(Rng& rng, int n, double c) {
  Vec eig(n);
  for (int i = 0; i < n; ++i) eig[i] = rng.uniform(0.95, 0.95 * c);
  Mat g = Mat::diag(eig);
  for (int sweep = 0; sweep < 2; ++sweep)
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        const double th = rng.uniform(0.0, 6.283185307179586);
        Mat rot = Mat::identity(n);
        rot(p, p) = std::cos(th);
        rot(q, q) = std::cos(th);
        rot(p, q) = -std::sin(th);
        rot(q, p) = std::sin(th);
        g = congruence(rot, g);
      }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double s = 0.5 * (g(i, j) + g(j, i));
      g(i, j) = s;
      g(j, i) = s;
    }
  return g;
}

}  // namespace

TEST_CASE("identity factorization") {
  const BoundedFactorization f = spd_factor(Mat::identity(2), 2.0);
  CHECK((f.f - Mat::identity(2)).max_abs() < 1e-14);
  CHECK(f.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(f.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("diagonal factorization keeps diagonal order") {
  const BoundedFactorization f = spd_factor(diag2(4.0, 1.0), 5.0);
  CHECK(f.f(0, 0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(f.f(1, 1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::fabs(f.f(0, 1)) < 1e-14);
  CHECK(f.f.max_abs() == doctest::Approx(2.0));
  CHECK(f.f.max_abs() < 2.0 * std::sqrt(5.0));
  CHECK(f.f_inv.max_abs() == doctest::Approx(1.0));
  CHECK(f.f_inv.max_abs() < 10.0);  // n sqrt((n-1)! c^n) = 2 sqrt(25)
}

TEST_CASE("quadratic form sandwich, identity") {
  const QuadraticFormSandwich s = quadratic_form_sandwich(Mat::identity(2), 2.0, {1.0, 0.0});
  CHECK(s.value == doctest::Approx(1.0));
  CHECK(s.lower == doctest::Approx(1.0 / 8.0));  // |u|^2 / (n! c^n) = 1/(2*4)
  CHECK(s.upper == doctest::Approx(4.0));
  CHECK(s.strict());
}

TEST_CASE("quadratic form sandwich, diagonal") {
  const QuadraticFormSandwich s = quadratic_form_sandwich(diag2(4.0, 1.0), 5.0, {1.0, 1.0});
  CHECK(s.value == doctest::Approx(5.0));
  CHECK(s.lower == doctest::Approx(2.0 / 50.0));
  CHECK(s.upper == doctest::Approx(20.0));
  CHECK(s.strict());
}

TEST_CASE("random suite: reconstruction and every bound, strictly") {
  Rng rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 4);
    const double c = rng.uniform(1.5, 12.0);
    const Mat g = random_spd(rng, n, c);
    const BoundedFactorization f = spd_factor(g, c);

    const Mat recon = f.f.transposed() * f.f;
    CHECK((recon - g).max_abs() / g.max_abs() < 1e-10);
    CHECK(f.f.max_abs() < f.entry_bound());
    CHECK(f.f_inv.max_abs() < f.inv_entry_bound());
    for (double mu : f.eigenvalues) {
      CHECK(mu > f.eig_lower());
      CHECK(mu < f.eig_upper());
    }
    const QuadraticFormSandwich s = quadratic_form_sandwich(g, c, rng.unit_vector(n));
    CHECK(s.lower < s.value);
    CHECK(s.value < s.upper);
  }
}

TEST_CASE("scaling: s^2 G with s^2 c stays factorizable when hypotheses hold") {
  Rng rng(7);
  const Mat g = random_spd(rng, 3, 3.0);
  const BoundedFactorization base = spd_factor(g, 3.0);
  CHECK(base.f.n() == 3);
  const double s2 = 4.0;
  Mat scaled = g;
  scaled *= s2;
  const double det = determinant(scaled);
  REQUIRE(std::fabs(det) > 1.0 / (s2 * 3.0));
  const BoundedFactorization f = spd_factor(scaled, s2 * 3.0);
  CHECK((f.f.transposed() * f.f - scaled).max_abs() / scaled.max_abs() < 1e-10);
}

TEST_CASE("error paths") {
  CHECK_THROWS_AS(spd_factor(diag2(1.0, -1.0), 2.0), Error);        // negative eigenvalue
  CHECK_THROWS_AS(spd_factor(diag2(3.0, 1.0), 2.0), Error);         // entry bound
  CHECK_THROWS_AS(spd_factor(diag2(0.1, 0.1), 2.0), Error);         // determinant bound
  CHECK_THROWS_AS(quadratic_form_sandwich(Mat::identity(2), 2.0, {0.0, 0.0}), Error);
  CHECK_THROWS_AS(spd_factor(Mat::identity(2), 1.0), Error);        // c must exceed 1

  try {
    spd_factor(diag2(3.0, 1.0), 2.0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::HypothesisViolated);
    CHECK(std::string(e.what()).find("entry bound") != std::string::npos);
  }
  try {
    spd_factor(diag2(1.0, -1.0), 2.0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotSpd);
  }
}

TEST_CASE("jacobi matches the characteristic polynomial on a 2x2") {
  Mat g(2);
  g(0, 0) = 3.0;
  g(0, 1) = 1.0;
  g(1, 0) = 1.0;
  g(1, 1) = 2.0;
  const SymEigen eig = jacobi_eigen(g);
  // roots of mu^2 - 5 mu + 5
  const double lo = (5.0 - std::sqrt(5.0)) / 2.0;
  const double hi = (5.0 + std::sqrt(5.0)) / 2.0;
  const double a = std::min(eig.eigenvalues[0], eig.eigenvalues[1]);
  const double b = std::max(eig.eigenvalues[0], eig.eigenvalues[1]);
  CHECK(a == doctest::Approx(lo).epsilon(1e-12));
  CHECK(b == doctest::Approx(hi).epsilon(1e-12));
}
