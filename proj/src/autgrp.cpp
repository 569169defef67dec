#include "solvgeo/autgrp.hpp"

#include <cmath>
#include <random>

#include "solvgeo/errors.hpp"
#include "solvgeo/sympl.hpp"

namespace solvgeo {

Automorphism::Automorphism(int n, double lambda, Matrix M, Vector v, double a)
    : n_(n), lambda_(lambda), M_(std::move(M)), v_(std::move(v)), a_(a) {
  const int m = n - 1;
  const int d = 2 * n;
  u_ = (1.0 / (2.0 * lambda_)) * M_ * standard_symplectic_form(m) * v_;
  F_ = Matrix::Zero(d, d);
  F_(0, 0) = 1.0;
  F_.block(1, 0, 2 * m, 1) = u_;
  F_.block(1, 1, 2 * m, 2 * m) = M_;
  F_(d - 1, 0) = a_;
  F_.block(d - 1, 1, 1, 2 * m) = v_.transpose();
  F_(d - 1, d - 1) = lambda_;
}

Automorphism Automorphism::make(int n, double lambda, const Matrix& M, const Vector& v,
                                double a, double tol) {
  if (n < 2) throw Error(ErrorKind::InvalidDimension, "automorphism needs n >= 2");
  const int m = n - 1;
  if (M.rows() != 2 * m || M.cols() != 2 * m || v.size() != 2 * m)
    throw Error(ErrorKind::Dimension, "automorphism blocks have the wrong size");
  if (lambda == 0.0) throw Error(ErrorKind::Singular, "automorphism with lambda = 0");
  const Matrix J = standard_symplectic_form(m);
  const double scale = std::max(1.0, max_abs(M) * max_abs(M));
  if (max_abs(M.transpose() * J * M - lambda * J) > tol * scale)
    throw Error(ErrorKind::ConstraintViolation, "M^T J M != lambda J");
  return Automorphism(n, lambda, M, v, a);
}

Automorphism Automorphism::from_matrix(const Matrix& F, double tol) {
  if (F.rows() != F.cols() || F.rows() % 2 != 0 || F.rows() < 4)
    throw Error(ErrorKind::Dimension, "automorphism matrix must be 2n x 2n, n >= 2");
  const int d = static_cast<int>(F.rows());
  const int n = d / 2;
  const int m = n - 1;
  const double scale = std::max(1.0, max_abs(F));
  // First row (1, 0, 0) and the zero column above lambda.
  Vector first_row = F.row(0).transpose();
  first_row[0] -= 1.0;
  if (max_abs(first_row) > tol * scale || max_abs(F.block(1, d - 1, 2 * m, 1)) > tol * scale)
    throw Error(ErrorKind::ConstraintViolation, "matrix lacks the automorphism block shape");
  Automorphism out = make(n, F(d - 1, d - 1), F.block(1, 1, 2 * m, 2 * m),
                          F.block(d - 1, 1, 1, 2 * m).transpose(), F(d - 1, 0), tol);
  if (max_abs(out.u_ - F.block(1, 0, 2 * m, 1)) > tol * scale)
    throw Error(ErrorKind::ConstraintViolation, "u != M J v / (2 lambda)");
  return out;
}

Automorphism Automorphism::identity(int n) {
  const int m = n - 1;
  return make(n, 1.0, Matrix::Identity(2 * m, 2 * m), Vector::Zero(2 * m), 0.0);
}

Automorphism Automorphism::diagonal(int n, double alpha) {
  const int m = n - 1;
  return make(n, alpha * alpha, alpha * Matrix::Identity(2 * m, 2 * m),
              Vector::Zero(2 * m), 0.0);
}

Automorphism Automorphism::symplectic(const Matrix& M, double tol) {
  const int n = static_cast<int>(M.rows() / 2) + 1;
  return make(n, 1.0, M, Vector::Zero(M.rows()), 0.0, tol);
}

Automorphism Automorphism::translation(const Vector& v, double a) {
  const int n = static_cast<int>(v.size() / 2) + 1;
  return make(n, 1.0, Matrix::Identity(v.size(), v.size()), v, a);
}

bool is_automorphism(const Matrix& F, const LieAlgebraCHn& alg, double tol) {
  const int d = alg.dim();
  if (F.rows() != d || F.cols() != d)
    throw Error(ErrorKind::Dimension, "automorphism test: size mismatch");
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      const Vector lhs = alg.bracket(F.col(i), F.col(j));
      const Vector rhs = F * alg.structure().bracket(alg.basis(i), alg.basis(j));
      if ((lhs - rhs).norm() > tol) return false;
    }
  return true;
}

Matrix act_on_metric(const Automorphism& F, const Matrix& S) {
  if (S.rows() != F.matrix().rows() || S.cols() != S.rows())
    throw Error(ErrorKind::Dimension, "metric and automorphism sizes differ");
  Matrix out = F.matrix().transpose() * S * F.matrix();
  return 0.5 * (out + out.transpose());
}

Automorphism compose(const Automorphism& F, const Automorphism& G) {
  if (F.n() != G.n()) throw Error(ErrorKind::Dimension, "compose: n mismatch");
  const Matrix FG = F.matrix() * G.matrix();
  const int d = 2 * F.n();
  const int m = F.n() - 1;
  // Read the fields directly; u follows from them.
  return Automorphism::make(F.n(), FG(d - 1, d - 1), FG.block(1, 1, 2 * m, 2 * m),
                            FG.block(d - 1, 1, 1, 2 * m).transpose(), FG(d - 1, 0),
                            1e-7);
}

Automorphism inverse(const Automorphism& F) {
  const int n = F.n();
  const int m = n - 1;
  const int d = 2 * n;
  const Matrix Finv = F.matrix().inverse();
  return Automorphism::make(n, Finv(d - 1, d - 1), Finv.block(1, 1, 2 * m, 2 * m),
                            Finv.block(d - 1, 1, 1, 2 * m).transpose(), Finv(d - 1, 0),
                            1e-7);
}

Matrix random_symplectic(int m, std::uint64_t seed, double spread) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> angle(-M_PI, M_PI);

  Vector theta1(m), theta2(m), squeeze(m);
  for (int k = 0; k < m; ++k) theta1[k] = spread * angle(rng);
  for (int k = 0; k < m; ++k) theta2[k] = spread * angle(rng);
  for (int k = 0; k < m; ++k) squeeze[k] = std::exp(0.4 * spread * gauss(rng));

  Matrix B(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) B(i, j) = 0.5 * spread * gauss(rng);
  B = 0.5 * (B + B.transpose()).eval();

  // A = U diag(e^s) V^T keeps the GL(m) factor well conditioned.
  auto orthogonal = [&] {
    Matrix G(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) G(i, j) = gauss(rng);
    return Matrix(Eigen::HouseholderQR<Matrix>(G).householderQ());
  };
  const Matrix U = orthogonal(), V = orthogonal();
  Vector s(m);
  for (int k = 0; k < m; ++k) s[k] = std::exp(0.3 * spread * gauss(rng));
  Matrix A = spread == 0.0 ? Matrix::Identity(m, m) : Matrix(U * s.asDiagonal() * V.transpose());

  Matrix Dsq = Matrix::Identity(2 * m, 2 * m);
  for (int k = 0; k < m; ++k) {
    Dsq(k, k) = squeeze[k];
    Dsq(m + k, m + k) = 1.0 / squeeze[k];
  }
  Matrix shear = Matrix::Identity(2 * m, 2 * m);
  shear.topRightCorner(m, m) = B;
  Matrix linear = Matrix::Zero(2 * m, 2 * m);
  linear.topLeftCorner(m, m) = A;
  linear.bottomRightCorner(m, m) = A.inverse().transpose();

  return phase_rotation(theta1) * Dsq * shear * linear * phase_rotation(theta2);
}

Automorphism random_automorphism(int n, std::uint64_t seed, double spread) {
  if (n < 2) throw Error(ErrorKind::InvalidDimension, "automorphism needs n >= 2");
  const int m = n - 1;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  const double alpha = std::exp(0.3 * spread * gauss(rng));
  Vector v(2 * m);
  for (int k = 0; k < 2 * m; ++k) v[k] = spread * gauss(rng);
  const double a = spread * gauss(rng);
  const Matrix M = random_symplectic(m, rng(), spread);

  return compose(Automorphism::diagonal(n, alpha),
                 compose(Automorphism::symplectic(M, 1e-8),
                         Automorphism::translation(v, a)));
}

}  // namespace solvgeo
