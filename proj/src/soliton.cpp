#include "solvgeo/soliton.hpp"

#include <cmath>

#include "solvgeo/curvature.hpp"
#include "solvgeo/errors.hpp"

namespace solvgeo {

Matrix orthonormal_frame(const CanonicalMetric& c) {
  c.validate();
  const int n = c.n, m = n - 1, d = 2 * n;
  const Vector s = c.sigma_full();
  Matrix B = Matrix::Zero(d, d);
  const double root_z = std::sqrt(c.z());
  B(0, 0) = 1.0 / root_z;
  for (int i = 0; i < m; ++i) {
    B(1 + i, 0) = -c.x[i] / s[i] / root_z;
    B(1 + i, 1 + i) = 1.0 / std::sqrt(s[i]);
    B(n + i, n + i) = 1.0 / std::sqrt(s[i]);
  }
  B(d - 1, d - 1) = 1.0 / std::sqrt(c.beta);
  return B;
}

MeanCurvature mean_curvature_vector(const CanonicalMetric& c) {
  const LieAlgebraCHn alg = LieAlgebraCHn::build(c.n);
  MeanCurvature out;
  out.e = orthonormal_frame(c).col(0);
  out.ad_e = alg.ad(out.e);
  out.trace_ad_e = out.ad_e.trace();
  out.trace_ad_e_squared = (out.ad_e * out.ad_e).trace();
  out.H = out.trace_ad_e * out.e;
  return out;
}

namespace {

// Rows indexed by (i<j, k), columns by vec(D) entries r + col * d.
Matrix derivation_system(const StructureTensor& c) {
  const int d = c.dim();
  Matrix A = Matrix::Zero(d * (d - 1) / 2 * d, d * d);
  int row = 0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (int k = 0; k < d; ++k, ++row) {
        for (int l = 0; l < d; ++l) A(row, k + l * d) += c(i, j, l);  // D[e_i, e_j]
        for (int r = 0; r < d; ++r) {
          A(row, r + i * d) -= c(r, j, k);  // [D e_i, e_j]
          A(row, r + j * d) -= c(i, r, k);  // [e_i, D e_j]
        }
      }
  return A;
}

}  // namespace

Matrix derivation_basis(const StructureTensor& c) {
  const Matrix A = derivation_system(c);
  Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeFullV);
  const Vector& sv = svd.singularValues();
  const double cutoff = 1e-10 * std::max(1.0, sv.size() ? sv[0] : 0.0);
  int rank = 0;
  while (rank < sv.size() && sv[rank] > cutoff) ++rank;
  return svd.matrixV().rightCols(A.cols() - rank);
}

double derivation_defect(const StructureTensor& c, const Matrix& D) {
  const int d = c.dim();
  double worst = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      const Vector ei = Vector::Unit(d, i), ej = Vector::Unit(d, j);
      const Vector lhs = D * c.bracket(ei, ej);
      const Vector rhs = c.bracket(D * ei, ej) + c.bracket(ei, D * ej);
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  return worst;
}

SolitonCertificate fit_soliton(const CanonicalMetric& c) {
  const LieAlgebraCHn alg = LieAlgebraCHn::build(c.n);
  const int d = alg.dim();
  const Matrix S = expand(c);
  const Matrix ric_op = S.ldlt().solve(ricci_closed_form(c));
  const Matrix der = derivation_basis(alg.structure());

  Matrix design(d * d, der.cols() + 1);
  design.col(0) = Matrix::Identity(d, d).reshaped();
  design.rightCols(der.cols()) = der;
  const Vector target = ric_op.reshaped();
  const Vector coef = design.colPivHouseholderQr().solve(target);

  SolitonCertificate cert;
  cert.c = coef[0];
  cert.D = (der * coef.tail(der.cols())).reshaped(d, d);
  cert.residual = (ric_op - cert.c * Matrix::Identity(d, d) - cert.D).norm() / ric_op.norm();
  return cert;
}

std::optional<SolitonCertificate> ricci_soliton_check(const CanonicalMetric& c, double tol) {
  SolitonCertificate cert = fit_soliton(c);
  if (cert.residual > tol) return std::nullopt;
  return cert;
}

NilsolitonData heisenberg_nilsoliton(int n, double beta) {
  if (n < 2) throw Error(ErrorKind::InvalidDimension, "nilsoliton needs n >= 2");
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw Error(ErrorKind::Domain, "nilsoliton needs beta > 0");
  const int dim = 2 * n - 1;
  NilsolitonData out;
  out.n = n;
  out.beta = beta;
  out.c = -(beta / 2.0) * (n + 1);
  Vector diag = Vector::Constant(dim, 0.5);
  diag[dim - 1] = 1.0;
  out.D1 = (n * beta * diag).asDiagonal();
  out.ricci_nil = out.c * Matrix::Identity(dim, dim) + out.D1;
  return out;
}

CanonicalMetric extend_nilsoliton(const NilsolitonData& data) {
  if (!(data.c < 0.0))
    throw Error(ErrorKind::Domain, "extension requires a nilsoliton constant c < 0");
  const LieAlgebraCHn alg = LieAlgebraCHn::build(data.n);
  const int d = alg.dim();
  // A = ad X restricted to the nilradical (Y, Z, W).
  const Matrix A = alg.ad(alg.basis(alg.x())).bottomRightCorner(d - 1, d - 1);

  CanonicalMetric out;
  out.n = data.n;
  out.p = -(A * A).trace() / data.c;
  out.x = Vector::Zero(data.n - 1);
  out.sigma = Vector::Ones(data.n - 2);
  out.beta = data.beta;
  out.validate();
  return out;
}

Matrix extension_derivation(const NilsolitonData& data, const CanonicalMetric& extended) {
  const int d = 2 * data.n;
  const MeanCurvature mc = mean_curvature_vector(extended);
  const LieAlgebraCHn alg = LieAlgebraCHn::build(data.n);
  const Matrix adH = alg.ad(mc.H);
  Matrix D = Matrix::Zero(d, d);
  D.bottomRightCorner(d - 1, d - 1) = data.D1 - adH.bottomRightCorner(d - 1, d - 1);
  return D;
}

}  // namespace solvgeo
