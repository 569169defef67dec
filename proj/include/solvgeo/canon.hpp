#pragma once

#include "solvgeo/autgrp.hpp"
#include "solvgeo/types.hpp"

namespace solvgeo {

/// Validated symmetric positive-definite 2n x 2n inner product in the basis
/// (X, Y, Z, W).
class MetricMatrix {
 public:
  /// Throws Error(Dimension) for a non-square or odd matrix, Error(Domain)
  /// when S is not symmetric (1e-12 relative) or not positive definite.
  static MetricMatrix make(const Matrix& S);

  int n() const noexcept { return static_cast<int>(S_.rows() / 2); }
  const Matrix& matrix() const noexcept { return S_; }

 private:
  explicit MetricMatrix(Matrix S) : S_(std::move(S)) {}
  Matrix S_;
};

/// Orbit representative S(p, x, sigma, beta).
///
/// `sigma` holds sigma_1 >= ... >= sigma_{n-2} >= 1; sigma_{n-1} = 1 is
/// implicit. Within a run of equal sigma values only the first x-entry may be
/// nonzero.
struct CanonicalMetric {
  int n = 2;
  double p = 1.0;
  Vector x;      // length n-1
  Vector sigma;  // length n-2
  double beta = 1.0;

  static CanonicalMetric einstein(int n, double p);

  /// (sigma_1, ..., sigma_{n-2}, 1).
  Vector sigma_full() const;
  /// z = p - sum x_i^2 / sigma_i, the Schur complement of the sigma block.
  double z() const;

  /// Throws Error(Domain) naming the first violated invariant.
  void validate() const;
};

/// Relative width under which neighbouring symplectic eigenvalues count as
/// equal.
inline constexpr double kSigmaTieTolerance = 1e-9;

/// Block matrix [[p, x^T, 0, 0], [x, sigma, 0, 0], [0, 0, sigma, 0],
/// [0, 0, 0, beta]].
Matrix expand(const CanonicalMetric& c);

struct Canonicalization {
  CanonicalMetric canonical;
  Automorphism automorphism;  // F with F^T S F = expand(canonical)
  double residual = 0.0;      // ||F^T S F - expand(canonical)||_max
};

/// Reduces S to its canonical representative. The automorphism is the
/// composition of
///   1. a translation (v = -w/beta_1, a = 0) clearing the (Y,Z)-W coupling,
///   2. Williamson diagonalization of the (Y,Z) block, eigenvalues descending,
///   3. a translation (v = 0, a = -q_1/beta_1) clearing the X-W coupling,
///   4. the diagonal automorphism alpha = sigma_min^{-1/2},
///   5. a phase rotation making the X-(Y,Z) coupling real and nonnegative,
///   6. within each run of equal sigma, a reflection diag(Q, Q) moving the
///      run's coupling onto its first entry.
/// Throws Error(Conditioning) when the Schur complement z is degenerate.
Canonicalization canonicalize(const MetricMatrix& S);

/// Component-wise comparison of canonical tuples (absolute tolerance).
bool same_canonical(const CanonicalMetric& a, const CanonicalMetric& b, double tol);

/// Same orbit of Aut(ch^n) <=> canonical tuples agree within tol.
bool is_isometric(const MetricMatrix& S1, const MetricMatrix& S2, double tol = 1e-7);

}  // namespace solvgeo
