#pragma once

#include <optional>

#include "solvgeo/canon.hpp"
#include "solvgeo/liealg.hpp"
#include "solvgeo/types.hpp"

namespace solvgeo {

/// Columns (e, f_1.., g_1.., w) of an S-orthonormal frame adapted to the
/// split a + n: e = V/|V| with V = X - sum (x_i/sigma_i) Y_i,
/// f_i = Y_i/sqrt(sigma_i), g_i = Z_i/sqrt(sigma_i), w = W/sqrt(beta).
Matrix orthonormal_frame(const CanonicalMetric& c);

struct MeanCurvature {
  Vector e;                        // unit generator of the abelian factor
  Matrix ad_e;                     // ad e in the standard basis
  double trace_ad_e = 0.0;         // tr ad e = n / sqrt(z)
  double trace_ad_e_squared = 0.0; // tr (ad e)^2 = (n+1) / (2z)
  Vector H;                        // <H, e> = tr ad e, H = (tr ad e) e
};

MeanCurvature mean_curvature_vector(const CanonicalMetric& c);

/// Orthonormal basis (columns, vectorized column-major) of Der(g): the null
/// space of D[e_i,e_j] - [De_i,e_j] - [e_i,De_j] over all basis pairs.
Matrix derivation_basis(const StructureTensor& c);

/// max over basis pairs of |D[e_i,e_j] - [De_i,e_j] - [e_i,De_j]|.
double derivation_defect(const StructureTensor& c, const Matrix& D);

struct SolitonCertificate {
  double c = 0.0;
  Matrix D;               // derivation with Ric_op = c I + D
  double residual = 0.0;  // ||Ric_op - c I - D||_F / ||Ric_op||_F
};

/// Least-squares fit of Ric_op = S^{-1} Ric by c I + D, D in Der(ch^n).
SolitonCertificate fit_soliton(const CanonicalMetric& c);

/// The fitted certificate when its residual is <= tol, nothing otherwise.
std::optional<SolitonCertificate> ricci_soliton_check(const CanonicalMetric& c,
                                                      double tol = 1e-9);

/// Heisenberg nilsoliton with metric diag(1, ..., 1, beta) on
/// (Y_1.., Z_1.., W).
struct NilsolitonData {
  int n = 2;
  double beta = 1.0;
  Matrix ricci_nil;  // c I + D1
  double c = 0.0;    // -(beta/2)(n+1)
  Matrix D1;         // n beta diag(1/2, ..., 1/2, 1)
};

/// Throws Error(InvalidDimension) for n < 2 and Error(Domain) for beta <= 0.
NilsolitonData heisenberg_nilsoliton(int n, double beta);

/// One-dimensional abelian extension a + h^n with a acting through ad X,
/// <a, h> = 0 and <A, A> = -(1/c) tr A^2. Throws Error(Domain) for c >= 0.
CanonicalMetric extend_nilsoliton(const NilsolitonData& data);

/// Derivation of the extension: zero on a, D1 - ad H on the nilradical.
Matrix extension_derivation(const NilsolitonData& data, const CanonicalMetric& extended);

}  // namespace solvgeo
