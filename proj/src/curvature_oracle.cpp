#include <cmath>

#include "solvgeo/curvature.hpp"
#include "solvgeo/errors.hpp"

namespace solvgeo {

Matrix CurvatureData::op(const Vector& u, const Vector& w) const {
  Matrix out = Matrix::Zero(dim, dim);
  for (int a = 0; a < dim; ++a) {
    if (u[a] == 0.0) continue;
    for (int b = 0; b < dim; ++b)
      if (w[b] != 0.0) out += u[a] * w[b] * op(a, b);
  }
  return out;
}

Matrix wedge_operator(const Vector& u, const Vector& w, const Matrix& S) {
  return u * (S * w).transpose() - w * (S * u).transpose();
}

ConnectionTable koszul_connection(const StructureTensor& c, const Matrix& S) {
  const int d = c.dim();
  if (S.rows() != d || S.cols() != d)
    throw Error(ErrorKind::Dimension, "koszul: metric size differs from the algebra");
  const Vector spectrum = Eigen::SelfAdjointEigenSolver<Matrix>(S, Eigen::EigenvaluesOnly).eigenvalues();
  if (!(spectrum[0] > 1e-14 * std::abs(spectrum[d - 1])))
    throw Error(ErrorKind::Conditioning, "koszul: metric is singular or indefinite");
  const Eigen::LLT<Matrix> llt(S);

  // g([e_i, e_j], e_k) for all triples.
  std::vector<double> g(static_cast<std::size_t>(d) * d * d, 0.0);
  auto gb = [&](int i, int j, int k) -> double& {
    return g[(static_cast<std::size_t>(i) * d + j) * d + k];
  };
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        double s = 0.0;
        for (int l = 0; l < d; ++l) s += c(i, j, l) * S(l, k);
        gb(i, j, k) = s;
      }

  ConnectionTable table;
  table.nabla.assign(d, Matrix::Zero(d, d));
  Vector rhs(d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      for (int k = 0; k < d; ++k)
        rhs[k] = 0.5 * (gb(a, b, k) - gb(b, k, a) + gb(k, a, b));
      table.nabla[a].col(b) = llt.solve(rhs);
    }
  return table;
}

CurvatureData curvature_oracle(const StructureTensor& c, const Matrix& S) {
  const int d = c.dim();
  const ConnectionTable conn = koszul_connection(c, S);
  CurvatureData out;
  out.dim = d;
  out.operators.assign(static_cast<std::size_t>(d) * d, Matrix::Zero(d, d));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      Matrix R = conn.nabla[a] * conn.nabla[b] - conn.nabla[b] * conn.nabla[a];
      for (int k = 0; k < d; ++k)
        if (c(a, b, k) != 0.0) R -= c(a, b, k) * conn.nabla[k];
      out.op(a, b) = R;
    }
  out.ricci = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double s = 0.0;
      for (int k = 0; k < d; ++k) s += out.op(k, i)(k, j);
      out.ricci(i, j) = s;
    }
  out.scalar = S.ldlt().solve(out.ricci).trace();
  return out;
}

Matrix ricci_orthonormal_trace(const CurvatureData& curv, const Matrix& S) {
  const int d = curv.dim;
  // Columns of B = L^{-T} are S-orthonormal when S = L L^T.
  const Matrix L = S.llt().matrixL();
  const Matrix B = L.transpose().triangularView<Eigen::Upper>().solve(Matrix::Identity(d, d));
  Matrix ric = Matrix::Zero(d, d);
  for (int a = 0; a < d; ++a) {
    const Vector f = B.col(a);
    const Vector Sf = S * f;
    for (int i = 0; i < d; ++i) {
      const Matrix R = curv.op(f, Vector::Unit(d, i));
      ric.row(i) += (Sf.transpose() * R);
    }
  }
  return ric;
}

Matrix jacobi_operator(const CurvatureData& curv, const Vector& u) {
  const int d = curv.dim;
  Matrix out(d, d);
  for (int a = 0; a < d; ++a) out.col(a) = curv.op(Vector::Unit(d, a), u) * u;
  return out;
}

double sectional_curvature(const CurvatureData& curv, const Matrix& S, const Vector& u,
                           const Vector& w, double tol) {
  const double uu = u.dot(S * u);
  const double ww = w.dot(S * w);
  const double uw = u.dot(S * w);
  const double gram = uu * ww - uw * uw;
  if (!(gram > tol * uu * ww))
    throw Error(ErrorKind::Domain, "sectional curvature: vectors do not span a plane");
  return (curv.op(u, w) * w).dot(S * u) / gram;
}

}  // namespace solvgeo
