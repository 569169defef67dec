#pragma once

#include <optional>
#include <vector>

#include "solvgeo/canon.hpp"
#include "solvgeo/liealg.hpp"
#include "solvgeo/types.hpp"

namespace solvgeo {

/// Levi-Civita connection of a left-invariant metric. nabla[a].col(b) holds
/// the coefficients of nabla_{e_a} e_b, so Gamma[i][j][k] = nabla[i](k, j).
struct ConnectionTable {
  std::vector<Matrix> nabla;

  int dim() const noexcept { return static_cast<int>(nabla.size()); }
  double gamma(int i, int j, int k) const { return nabla[i](k, j); }
  Vector covariant(int i, int j) const { return nabla[i].col(j); }
};

/// Curvature operators R(e_a, e_b) for every ordered pair, with the Ricci
/// form and scalar curvature.
struct CurvatureData {
  int dim = 0;
  std::vector<Matrix> operators;  // index a * dim + b
  Matrix ricci;
  double scalar = 0.0;

  const Matrix& op(int a, int b) const { return operators[a * dim + b]; }
  Matrix& op(int a, int b) { return operators[a * dim + b]; }

  /// R(u, w) by bilinearity.
  Matrix op(const Vector& u, const Vector& w) const;
};

/// Curvature operators written over 2-vectors. coefficients[a * dim + b] is an
/// antisymmetric matrix A with R(e_a, e_b) = sum_{c<e} A(c, e) e_c ^ e_e, where
/// (u ^ v)(t) = g(v, t) u - g(u, t) v. The endomorphism is A S.
struct WedgeExpansion {
  int dim = 0;
  std::vector<Matrix> coefficients;

  const Matrix& coefficient(int a, int b) const { return coefficients[a * dim + b]; }
  Matrix to_operator(int a, int b, const Matrix& S) const { return coefficient(a, b) * S; }
};

/// Endomorphism of u ^ w: t -> g(w, t) u - g(u, t) w.
Matrix wedge_operator(const Vector& u, const Vector& w, const Matrix& S);

// ---------------------------------------------------------------------------
// Structure-constant oracle. Works for any structure tensor and metric.

/// Solves 2 g(nabla_a b, c) = g([a,b],c) - g([b,c],a) + g([c,a],b) for every
/// basis pair. Throws Error(Conditioning) for a numerically singular S.
ConnectionTable koszul_connection(const StructureTensor& c, const Matrix& S);

/// R(a,b) = nabla_a nabla_b - nabla_b nabla_a - nabla_[a,b]; Ricci by
/// Ric(e_i, e_j) = tr(t -> R(t, e_i) e_j); scalar = tr(S^{-1} Ric).
CurvatureData curvature_oracle(const StructureTensor& c, const Matrix& S);

/// Ricci form through an S-orthonormal frame {f_a}:
/// Ric(e_i, e_j) = sum_a g(R(f_a, e_i) e_j, f_a). Independent of the trace
/// path used by curvature_oracle.
Matrix ricci_orthonormal_trace(const CurvatureData& curv, const Matrix& S);

inline ConnectionTable koszul_connection(const LieAlgebraCHn& alg, const MetricMatrix& S) {
  return koszul_connection(alg.structure(), S.matrix());
}
inline CurvatureData curvature_oracle(const LieAlgebraCHn& alg, const MetricMatrix& S) {
  return curvature_oracle(alg.structure(), S.matrix());
}

// ---------------------------------------------------------------------------
// Closed forms for the canonical metrics S(p, x, sigma, beta). Each throws
// Error(Domain) on an invalid tuple, including z <= 1e-12 p.

ConnectionTable closed_form_connection(const CanonicalMetric& c);
CurvatureData curvature_closed_form(const CanonicalMetric& c);
WedgeExpansion curvature_wedge(const CanonicalMetric& c);
Matrix ricci_closed_form(const CanonicalMetric& c);
double scalar_closed_form(const CanonicalMetric& c);

struct EinsteinTest {
  bool parameters = false;  // p beta = 1, x = 0, sigma = 1
  bool matrix = false;      // ||Ric - c_E S|| <= tol ||Ric||
  double constant = 0.0;    // least-squares c_E
  double residual = 0.0;    // ||Ric - c_E S||_F / ||Ric||_F
};

EinsteinTest einstein_test(const CanonicalMetric& c, double tol = 1e-9);

/// Einstein constant when Ric = c_E S (matrix test), nothing otherwise.
std::optional<double> is_einstein(const CanonicalMetric& c, double tol = 1e-9);

/// K(u, w) = g(R(u,w)w, u) / (g(u,u) g(w,w) - g(u,w)^2). Throws Error(Domain)
/// when the Gram determinant is below tol * g(u,u) g(w,w).
double sectional_curvature(const CurvatureData& curv, const Matrix& S, const Vector& u,
                           const Vector& w, double tol = 1e-12);
double sectional_curvature(const CanonicalMetric& c, const Vector& u, const Vector& w,
                           double tol = 1e-12);

/// Jacobi operator t -> R(t, u) u.
Matrix jacobi_operator(const CurvatureData& curv, const Vector& u);

}  // namespace solvgeo
