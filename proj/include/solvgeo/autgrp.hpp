#pragma once

#include <cstdint>

#include "solvgeo/liealg.hpp"
#include "solvgeo/types.hpp"

namespace solvgeo {

/// Element of Aut(ch^n) in block form
///
///   F = [[1, 0,   0     ],
///        [u, M,   0     ],
///        [a, v^T, lambda]]
///
/// with M^T J M = lambda J, lambda != 0 and u = (1/(2 lambda)) M J v. The
/// fields are the source of truth; the 2n x 2n matrix is assembled once.
class Automorphism {
 public:
  /// Throws Error(Singular) for lambda == 0 and Error(ConstraintViolation)
  /// when ||M^T J M - lambda J||_max > tol * max(1, ||M||_max^2).
  static Automorphism make(int n, double lambda, const Matrix& M, const Vector& v,
                           double a, double tol = 1e-9);

  /// Re-decomposes an assembled 2n x 2n matrix into (lambda, M, v, a).
  /// Rejects matrices that do not have the block shape or whose u column is
  /// inconsistent with (lambda, M, v).
  static Automorphism from_matrix(const Matrix& F, double tol = 1e-9);

  static Automorphism identity(int n);
  /// diag(1, alpha I, alpha^2), the D factor.
  static Automorphism diagonal(int n, double alpha);
  /// diag(1, M, 1) with M symplectic, the Sp factor.
  static Automorphism symplectic(const Matrix& M, double tol = 1e-9);
  /// Generalized translation with u = J v / 2, the T factor.
  static Automorphism translation(const Vector& v, double a);

  int n() const noexcept { return n_; }
  double lambda() const noexcept { return lambda_; }
  const Matrix& M() const noexcept { return M_; }
  const Vector& v() const noexcept { return v_; }
  double a() const noexcept { return a_; }
  const Vector& u() const noexcept { return u_; }
  const Matrix& matrix() const noexcept { return F_; }

 private:
  Automorphism(int n, double lambda, Matrix M, Vector v, double a);

  int n_ = 0;
  double lambda_ = 1.0;
  Matrix M_;
  Vector v_;
  double a_ = 0.0;
  Vector u_;
  Matrix F_;
};

/// Brute-force bracket preservation: ||[F e_i, F e_j] - F [e_i, e_j]|| <= tol
/// for every basis pair. Throws Error(Dimension) on size mismatch.
bool is_automorphism(const Matrix& F, const LieAlgebraCHn& alg, double tol = 1e-9);

/// Orbit action S -> F^T S F.
Matrix act_on_metric(const Automorphism& F, const Matrix& S);

/// Matrix product F G. Throws Error(Dimension) when n differs.
Automorphism compose(const Automorphism& F, const Automorphism& G);
Automorphism inverse(const Automorphism& F);

/// Seeded sample from the identity component D x| (Sp x| T). `spread`
/// scales every random parameter; spread = 0 yields the identity.
Automorphism random_automorphism(int n, std::uint64_t seed, double spread = 1.0);

/// Random symplectic 2m x 2m matrix built from phase rotations, diagonal
/// squeezes diag(t, 1/t), shears [[I, B], [0, I]] (B symmetric) and
/// diag(A, A^{-T}).
Matrix random_symplectic(int m, std::uint64_t seed, double spread = 1.0);

}  // namespace solvgeo
