#pragma once

#include "hypwarp/mat.hpp"

namespace hypwarp {

// Eigendecomposition of a symmetric matrix by cyclic Jacobi sweeps.
// G = V diag(eig) V^T with V's columns the eigenvectors. Deterministic:
// fixed sweep order, no eigenvalue reordering (a diagonal input comes back
// unchanged). Converged when the off-diagonal Frobenius mass drops below
// 1e-14 * ||G||_F.
struct SymEigen {
  Vec eigenvalues;
  Mat eigenvectors;  // columns
};

SymEigen jacobi_eigen(const Mat& g);

// G = F^T F with F = sqrt(D) O taken from the eigendecomposition G = O^T D O
// (a deterministic choice among the orthogonal factors), with the bounds that
// come along when
// |G_ij| < c and |det G| > 1/c:
//   max|F_ij| < n sqrt(c),   max|(F^-1)_ij| < n sqrt((n-1)! c^n),
//   1/(n! c^n) < mu < n c for every eigenvalue mu.
struct BoundedFactorization {
  Mat f;
  Mat f_inv;
  Vec eigenvalues;
  double c = 0.0;

  double entry_bound() const;       // n sqrt(c)
  double inv_entry_bound() const;   // n sqrt((n-1)! c^n)
  double eig_lower() const;         // 1/(n! c^n)
  double eig_upper() const;         // n c
};

// Throws: NotSpd if an eigenvalue is ≤ 0; HypothesisViolated if the entry or
// determinant hypothesis fails (the message names which). c must be > 1 and
// is never inferred from G.
BoundedFactorization spd_factor(const Mat& g, double c);

struct QuadraticFormSandwich {
  double lower = 0.0;  // |u|^2 / (n! c^n)
  double upper = 0.0;  // n c |u|^2
  double value = 0.0;  // u^T G u
  bool strict() const { return lower < value && value < upper; }
};

QuadraticFormSandwich quadratic_form_sandwich(const Mat& g, double c, const Vec& u);

// Symmetry gate shared by the SPD entry points: relative tolerance 1e-12.
bool is_symmetric(const Mat& g, double rel_tol = 1e-12);

// Checks only the entry and determinant hypotheses, without factorizing. Used where a pointwise precondition has to be cheap.
void check_spd_hypotheses(const Mat& g, double c, const char* where);

double factorial(int n);

}  // namespace hypwarp
