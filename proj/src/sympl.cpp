#include "solvgeo/sympl.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include "solvgeo/errors.hpp"

namespace solvgeo {

using Complex = std::complex<double>;

Matrix standard_symplectic_form(int m) {
  Matrix J = Matrix::Zero(2 * m, 2 * m);
  J.topRightCorner(m, m).setIdentity();
  J.bottomLeftCorner(m, m) = -Matrix::Identity(m, m);
  return J;
}

bool is_symplectic(const Matrix& F, double tol) {
  if (F.rows() != F.cols() || F.rows() % 2 != 0)
    throw Error(ErrorKind::Dimension, "symplectic test needs an even square matrix");
  const Matrix J = standard_symplectic_form(static_cast<int>(F.rows() / 2));
  return max_abs(F.transpose() * J * F - J) <= tol;
}

WilliamsonDecomposition williamson(const Matrix& S, const WilliamsonOptions& opts) {
  if (S.rows() != S.cols() || S.rows() % 2 != 0 || S.rows() == 0)
    throw Error(ErrorKind::Dimension, "williamson needs a nonempty even square matrix");
  const int dim = static_cast<int>(S.rows());
  const int m = dim / 2;
  const double scale = std::max(1.0, max_abs(S));
  if (max_abs(S - S.transpose()) > opts.tol * scale)
    throw Error(ErrorKind::Domain, "williamson: matrix is not symmetric");

  const Matrix Ssym = 0.5 * (S + S.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> spectrum(Ssym, Eigen::EigenvaluesOnly);
  const double lo = spectrum.eigenvalues().minCoeff();
  const double hi = spectrum.eigenvalues().maxCoeff();
  if (!(lo > 0.0))
    throw Error(ErrorKind::Domain, "williamson: matrix is not positive definite");
  if (hi / lo > opts.condition_cap)
    throw Error(ErrorKind::Conditioning, "williamson: condition number exceeds cap");

  Eigen::LLT<Matrix> llt(Ssym);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorKind::Domain, "williamson: Cholesky factorization failed");
  const Matrix L = llt.matrixL();
  const Matrix J = standard_symplectic_form(m);

  // K = L^{-1} J L^{-T}
  const Matrix LinvJ = L.triangularView<Eigen::Lower>().solve(J);
  const Matrix K =
      L.triangularView<Eigen::Lower>().solve(LinvJ.transpose()).transpose();

  const Eigen::MatrixXcd H = Complex(0.0, 1.0) * K.cast<Complex>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(H);
  if (eig.info() != Eigen::Success)
    throw Error(ErrorKind::Conditioning, "williamson: eigen-solver did not converge");

  // The top m eigenvalues are the +1/d_j. A stable sort on d keeps equal
  // eigenvalues in the solver's frame order.
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), m);
  auto value = [&](int col) { return 1.0 / eig.eigenvalues()[col]; };
  if (opts.order == EigenOrder::Descending)
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return value(a) > value(b); });
  else
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return value(a) < value(b); });

  Matrix Q(dim, dim);
  Vector d(m);
  const double root2 = std::sqrt(2.0);
  for (int j = 0; j < m; ++j) {
    const int col = order[j];
    Eigen::VectorXcd u = eig.eigenvectors().col(col);
    // Fix the free phase: the largest entry becomes +i|.| on a position
    // coordinate or +|.| on a momentum coordinate, so diagonal S gets a
    // diagonal M with positive entries.
    Eigen::Index big = 0;
    u.cwiseAbs().maxCoeff(&big);
    const Complex target = big < m ? Complex(0.0, 1.0) : Complex(1.0, 0.0);
    u *= target * std::abs(u[big]) / u[big];
    Q.col(j) = root2 * u.imag();
    Q.col(m + j) = root2 * u.real();
    d[j] = value(col);
  }

  Vector root(dim);
  root << d.cwiseSqrt(), d.cwiseSqrt();
  WilliamsonDecomposition out;
  out.M = L.transpose().triangularView<Eigen::Upper>().solve(Q) * root.asDiagonal();
  out.d = d;
  return out;
}

Vector symplectic_eigenvalues(const Matrix& S) { return williamson(S).d; }

Matrix phase_rotation(const Vector& theta) {
  const auto m = theta.size();
  Matrix out = Matrix::Zero(2 * m, 2 * m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const double c = std::cos(theta[k]);
    const double s = std::sin(theta[k]);
    out(k, k) = c;
    out(k, m + k) = -s;
    out(m + k, k) = s;
    out(m + k, m + k) = c;
  }
  return out;
}

Matrix unitary_block(const Matrix& Q) {
  const auto m = Q.rows();
  Matrix out = Matrix::Zero(2 * m, 2 * m);
  out.topLeftCorner(m, m) = Q;
  out.bottomRightCorner(m, m) = Q;
  return out;
}

}  // namespace solvgeo
