#include "solvgeo/canon.hpp"

#include <cmath>
#include <string>

#include "solvgeo/errors.hpp"
#include "solvgeo/sympl.hpp"

namespace solvgeo {

MetricMatrix MetricMatrix::make(const Matrix& S) {
  if (S.rows() != S.cols() || S.rows() % 2 != 0 || S.rows() < 4)
    throw Error(ErrorKind::Dimension, "metric must be a 2n x 2n matrix with n >= 2");
  const double scale = std::max(1.0, max_abs(S));
  if (max_abs(S - S.transpose()) > 1e-12 * scale)
    throw Error(ErrorKind::Domain, "metric is not symmetric");
  Eigen::LLT<Matrix> llt(S);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorKind::Domain, "metric is not positive definite");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(S, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() <= 0.0)
    throw Error(ErrorKind::Domain, "metric is not positive definite");
  return MetricMatrix(0.5 * (S + S.transpose()));
}

CanonicalMetric CanonicalMetric::einstein(int n, double p) {
  CanonicalMetric c;
  c.n = n;
  c.p = p;
  c.x = Vector::Zero(n - 1);
  c.sigma = Vector::Ones(n - 2);
  c.beta = 1.0 / p;
  return c;
}

Vector CanonicalMetric::sigma_full() const {
  Vector s(n - 1);
  s.head(n - 2) = sigma;
  s[n - 2] = 1.0;
  return s;
}

double CanonicalMetric::z() const {
  return p - (x.array().square() / sigma_full().array()).sum();
}

void CanonicalMetric::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::Domain, what); };
  if (n < 2) throw Error(ErrorKind::InvalidDimension, "canonical metric needs n >= 2");
  if (x.size() != n - 1) fail("x must have n-1 entries");
  if (sigma.size() != n - 2) fail("sigma must have n-2 entries");
  if (!(p > 0.0) || !std::isfinite(p)) fail("p > 0 violated");
  if (!(beta > 0.0) || !std::isfinite(beta)) fail("beta > 0 violated");
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (!(x[i] >= 0.0) || !std::isfinite(x[i])) fail("x_i >= 0 violated");
  const Vector s = sigma_full();
  for (Eigen::Index i = 0; i + 1 < s.size(); ++i)
    if (!(s[i] >= s[i + 1]) || !std::isfinite(s[i])) fail("sigma_1 >= ... >= sigma_{n-2} >= 1 violated");
  if (!(z() > 1e-12 * p)) fail("z = p - sum x_i^2/sigma_i > 0 violated");
  const double zero_tol = 1e-12 * std::max(1.0, std::sqrt(p));
  for (Eigen::Index i = 1; i < s.size(); ++i)
    if (std::abs(s[i] - s[i - 1]) <= kSigmaTieTolerance * s[i - 1] && std::abs(x[i]) > zero_tol) {
      // i continues a run; only the run's first coupling may be nonzero
      fail("tie-normalization violated: x_" + std::to_string(i + 1) +
           " must vanish inside a run of equal sigma");
    }
}

Matrix expand(const CanonicalMetric& c) {
  c.validate();
  const int m = c.n - 1;
  const int d = 2 * c.n;
  Matrix S = Matrix::Zero(d, d);
  const Vector s = c.sigma_full();
  S(0, 0) = c.p;
  S.block(0, 1, 1, m) = c.x.transpose();
  S.block(1, 0, m, 1) = c.x;
  S.block(1, 1, m, m) = s.asDiagonal();
  S.block(1 + m, 1 + m, m, m) = s.asDiagonal();
  S(d - 1, d - 1) = c.beta;
  return S;
}

namespace {

// Householder reflection H (symmetric, orthogonal) with H x = ||x|| e_1.
Matrix reflect_onto_first(const Vector& x) {
  const auto k = x.size();
  Matrix H = Matrix::Identity(k, k);
  const double norm = x.norm();
  if (norm == 0.0) return H;
  Vector v = x;
  v[0] -= norm;
  const double vv = v.squaredNorm();
  if (vv <= 1e-30 * norm * norm) return H;
  H -= (2.0 / vv) * v * v.transpose();
  return H;
}

}  // namespace

Canonicalization canonicalize(const MetricMatrix& metric) {
  const Matrix& S = metric.matrix();
  const int n = metric.n();
  const int m = n - 1;
  const int d = 2 * n;
  const int W = d - 1;

  Automorphism F = Automorphism::identity(n);
  Matrix cur = S;
  auto apply = [&](const Automorphism& G) {
    cur = act_on_metric(G, cur);
    F = compose(F, G);
  };

  // 1. clear the (Y,Z)-W coupling
  const double beta1 = cur(W, W);
  apply(Automorphism::translation(-cur.block(1, W, 2 * m, 1) / beta1, 0.0));

  // 2. symplectic diagonalization of the (Y,Z) block
  const WilliamsonDecomposition wil = williamson(cur.block(1, 1, 2 * m, 2 * m));
  apply(Automorphism::symplectic(wil.M, 1e-8));

  // 3. clear the X-W coupling
  apply(Automorphism::translation(Vector::Zero(2 * m), -cur(0, W) / beta1));

  // 4. normalize the smallest symplectic eigenvalue to 1
  const double smallest = wil.d[m - 1];
  apply(Automorphism::diagonal(n, 1.0 / std::sqrt(smallest)));

  // 5. rotate each complex coupling onto the positive real axis
  Vector theta = Vector::Zero(m);
  const double coupling_floor = 1e-15 * std::sqrt(cur(0, 0));
  for (int k = 0; k < m; ++k) {
    const double re = cur(0, 1 + k);
    const double im = cur(0, 1 + m + k);
    if (std::hypot(re, im) > coupling_floor) theta[k] = std::atan2(im, re);
  }
  apply(Automorphism::symplectic(phase_rotation(theta), 1e-8));

  // 6. tie-normalization inside runs of equal sigma
  Vector sigma = wil.d / smallest;
  sigma[m - 1] = 1.0;
  Matrix Q = Matrix::Identity(m, m);
  bool has_run = false;
  for (int start = 0; start < m;) {
    int end = start + 1;
    while (end < m && std::abs(sigma[end] - sigma[start]) <= kSigmaTieTolerance * sigma[start])
      ++end;
    if (end - start > 1) {
      const double level = end == m ? 1.0 : sigma.segment(start, end - start).mean();
      sigma.segment(start, end - start).setConstant(level);
      Q.block(start, start, end - start, end - start) =
          reflect_onto_first(cur.block(0, 1 + start, 1, end - start).transpose());
      has_run = true;
    }
    start = end;
  }
  if (has_run) apply(Automorphism::symplectic(unitary_block(Q), 1e-8));

  CanonicalMetric c;
  c.n = n;
  c.p = cur(0, 0);
  c.beta = cur(W, W);
  c.sigma = sigma.head(m - 1);
  c.x = cur.block(0, 1, 1, m).transpose().cwiseAbs();
  for (int k = 1; k < m; ++k)
    if (std::abs(sigma[k] - sigma[k - 1]) <= kSigmaTieTolerance * sigma[k - 1]) c.x[k] = 0.0;

  if (!(c.z() > 1e-12 * c.p))
    throw Error(ErrorKind::Conditioning, "canonicalize: degenerate Schur complement z");

  Canonicalization out{c, F, 0.0};
  out.residual = max_abs(act_on_metric(F, S) - expand(c));
  return out;
}

bool same_canonical(const CanonicalMetric& a, const CanonicalMetric& b, double tol) {
  if (a.n != b.n) return false;
  if (std::abs(a.p - b.p) > tol || std::abs(a.beta - b.beta) > tol) return false;
  if (max_abs(a.x - b.x) > tol) return false;
  return a.sigma.size() == 0 || max_abs(a.sigma - b.sigma) <= tol;
}

bool is_isometric(const MetricMatrix& S1, const MetricMatrix& S2, double tol) {
  if (S1.n() != S2.n()) throw Error(ErrorKind::Dimension, "is_isometric: n mismatch");
  return same_canonical(canonicalize(S1).canonical, canonicalize(S2).canonical, tol);
}

}  // namespace solvgeo
