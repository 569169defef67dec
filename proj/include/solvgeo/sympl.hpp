#pragma once

#include "solvgeo/types.hpp"

namespace solvgeo {

/// J_m = [[0, I_m], [-I_m, 0]].
Matrix standard_symplectic_form(int m);

/// True iff ||F^T J F - J||_max <= tol. Throws Error(Dimension) for a
/// non-square or odd-sized F.
bool is_symplectic(const Matrix& F, double tol = 1e-9);

enum class EigenOrder { Descending, Ascending };

/// Williamson normal form M^T S M = diag(d, d) with M symplectic.
struct WilliamsonDecomposition {
  Matrix M;
  Vector d;  // symplectic eigenvalues in the requested order
};

struct WilliamsonOptions {
  EigenOrder order = EigenOrder::Descending;
  double tol = 1e-9;                 // symmetry / definiteness gate, relative to ||S||
  double condition_cap = 1e12;       // reject S with larger 2-norm condition number
};

/// Symplectic diagonalization of a symmetric positive-definite 2m x 2m
/// matrix.
///
/// With S = L L^T, the skew matrix K = L^{-1} J L^{-T} has eigenvalues
/// +-i/d_j. An eigenvector a + ib of the Hermitian iK for +1/d_j yields the
/// orthonormal pair (sqrt2 b, sqrt2 a), and M = L^{-T} Q diag(d,d)^{1/2}.
/// Equal eigenvalues keep the solver's frame order.
///
/// Throws Error(Domain) for non-symmetric or non-positive-definite input and
/// Error(Conditioning) when cond(S) exceeds the cap.
WilliamsonDecomposition williamson(const Matrix& S, const WilliamsonOptions& opts = {});

inline WilliamsonDecomposition williamson(const Matrix& S, EigenOrder order) {
  WilliamsonOptions opts;
  opts.order = order;
  return williamson(S, opts);
}

/// Symplectic eigenvalues only, in descending order.
Vector symplectic_eigenvalues(const Matrix& S);

/// M(theta) = [[A, -B], [B, A]] with A = diag(cos theta), B = diag(sin theta).
Matrix phase_rotation(const Vector& theta);

/// diag(Q, Q) for orthogonal Q; symplectic because Q^T Q = I.
Matrix unitary_block(const Matrix& Q);

}  // namespace solvgeo
