#include <cmath>

#include "solvgeo/curvature.hpp"
#include "solvgeo/errors.hpp"

namespace solvgeo {

namespace {

// Basis vectors and the recurring combinations of the canonical metric.
struct Frame {
  explicit Frame(const CanonicalMetric& c)
      : n(c.n), m(c.n - 1), d(2 * c.n), p(c.p), beta(c.beta), x(c.x),
        s(c.sigma_full()) {
    c.validate();
    z = c.z();
    SY = Vector::Zero(d);
    SZ2 = Vector::Zero(d);
    for (int l = 0; l < m; ++l) {
      SY[Y(l)] = x[l] / s[l];
      SZ2[Z(l)] = x[l] / (s[l] * s[l]);
    }
    xs2 = (x.array().square() / s.array()).sum();
  }

  int Y(int i) const { return 1 + i; }
  int Z(int i) const { return n + i; }
  int W() const { return d - 1; }
  Vector e(int k) const { return Vector::Unit(d, k); }
  Vector vX() const { return e(0); }
  Vector vY(int i) const { return e(Y(i)); }
  Vector vZ(int i) const { return e(Z(i)); }
  Vector vW() const { return e(W()); }
  static double delta(int i, int j) { return i == j ? 1.0 : 0.0; }

  int n, m, d;
  double p, beta, z, xs2;
  Vector x, s;
  Vector SY;   // sum_l (x_l / sigma_l) Y_l
  Vector SZ2;  // sum_l (x_l / sigma_l^2) Z_l
};

}  // namespace

ConnectionTable closed_form_connection(const CanonicalMetric& c) {
  const Frame f(c);
  const int d = f.d;
  ConnectionTable t;
  t.nabla.assign(d, Matrix::Zero(d, d));
  auto set = [&](int a, int b, const Vector& v) { t.nabla[a].col(b) = v; };

  const int X = 0, W = f.W();
  const Vector H = f.vX() - f.SY;  // X - sum (x_k/sigma_k) Y_k
  const double z = f.z;

  set(X, X, (f.xs2 * f.vX() - f.p * f.SY) / (2 * z));
  set(W, W, (f.beta / z) * H);
  set(W, X, -f.vW());
  for (int i = 0; i < f.m; ++i) {
    const double xi = f.x[i], si = f.s[i];
    set(X, f.Y(i), xi / (2 * z) * H);
    set(f.Y(i), X, xi / (2 * z) * H - 0.5 * f.vY(i));
    set(f.Y(i), f.Y(i), si / (2 * z) * H);
    set(f.Z(i), f.Z(i), si / (2 * z) * H);
    set(f.Y(i), f.Z(i), -0.5 * f.vW());
    set(f.Z(i), f.Y(i), 0.5 * f.vW());
    set(f.Y(i), W, f.beta / (2 * si) * f.vZ(i));
    set(W, f.Y(i), f.beta / (2 * si) * f.vZ(i));
    set(f.Z(i), X, -0.5 * f.vZ(i));
    const Vector wz = f.beta / (2 * z * si) * (xi * H - z * f.vY(i));
    set(W, f.Z(i), wz);
    set(f.Z(i), W, wz);
  }
  return t;
}

CurvatureData curvature_closed_form(const CanonicalMetric& c) {
  const Frame f(c);
  const int d = f.d, m = f.m;
  const double z = f.z, p = f.p, beta = f.beta;
  const int X = 0, W = f.W();
  const Vector vX = f.vX(), vW = f.vW(), SY = f.SY, SZ2 = f.SZ2;
  const auto& x = f.x;
  const auto& s = f.s;
  auto dl = Frame::delta;

  CurvatureData out;
  out.dim = d;
  out.operators.assign(static_cast<std::size_t>(d) * d, Matrix::Zero(d, d));
  // R(e_a, e_b) e_k
  auto set = [&](int a, int b, int k, const Vector& v) {
    out.op(a, b).col(k) = v;
    out.op(b, a).col(k) = -v;
  };

  // R(X, .)
  set(X, W, X, p * beta / (4 * z) * SZ2 + (z + p) / (2 * z) * vW);
  set(X, W, W, beta / z * (-vX + 0.5 * SY));
  for (int i = 0; i < m; ++i) {
    const Vector Yi = f.vY(i), Zi = f.vZ(i);
    const int y = f.Y(i), zi = f.Z(i);
    set(X, y, X, (-x[i] * vX + p * Yi) / (4 * z));
    set(X, y, W, -beta / (4 * s[i]) * Zi);
    set(X, zi, X, p / (4 * z) * (Zi + x[i] / s[i] * vW));
    set(X, zi, W, beta / (4 * z * s[i]) * (-2 * x[i] * vX + x[i] * SY + z * Yi));
    set(X, W, y, x[i] * beta / (4 * z) * SZ2 - beta / (2 * s[i]) * Zi + x[i] / (2 * z) * vW);
    set(X, W, zi, beta / (4 * z * s[i]) * (-3 * x[i] * vX + 2 * x[i] * SY + 2 * z * Yi));
    for (int j = 0; j < m; ++j) {
      set(X, y, f.Y(j), (x[j] * Yi - dl(i, j) * s[i] * vX) / (4 * z));
      set(X, y, f.Z(j), dl(i, j) / 4 * vW);
      set(X, zi, f.Y(j), x[j] / (4 * z) * (Zi + x[i] / s[i] * vW) - dl(i, j) / 4 * vW);
      set(X, zi, f.Z(j), -s[i] / (4 * z) * dl(i, j) * vX);
    }
  }

  // R(Y_i, .) and R(Z_i, .)
  for (int i = 0; i < m; ++i) {
    const Vector Yi = f.vY(i), Zi = f.vZ(i);
    const int y = f.Y(i), zi = f.Z(i);
    set(y, W, X, (beta * x[i] * SZ2 - beta * z / s[i] * Zi + 2 * x[i] * vW) / (4 * z));
    set(y, W, W, beta * beta / (4 * z * s[i] * s[i]) *
                     (-x[i] * vX + x[i] * SY + (z - 2 * s[i] * s[i] / beta) * Yi));
    set(zi, W, X, beta / (4 * z * s[i]) * (-x[i] * vX + x[i] * SY + z * Yi));
    set(zi, W, W, beta * beta / (4 * z) * ((z / (s[i] * s[i]) - 2 / beta) * Zi + x[i] / s[i] * SZ2));
    for (int j = 0; j < m; ++j) {
      const Vector Yj = f.vY(j), Zj = f.vZ(j);
      const int yj = f.Y(j), zj = f.Z(j);
      set(y, W, yj, beta / (4 * z) * dl(i, j) * (s[i] * SZ2 + (2 * s[i] / beta - z / s[i]) * vW));
      set(y, W, zj, beta / (4 * z) * (dl(i, j) * (vX - SY) - x[j] / s[j] * Yi));
      set(zi, W, yj, beta / (4 * z) * dl(i, j) * (-vX + SY));
      set(zi, W, zj, beta / (4 * z) *
                         (-x[j] / s[j] * Zi + dl(i, j) * s[i] * SZ2 +
                          (dl(i, j) * (2 * s[i] / beta - z / s[j]) - x[i] * x[j] / (s[i] * s[j])) * vW));

      // R(Y_i, Z_j)
      set(y, zj, X, (x[i] * Zj + (x[i] * x[j] / s[j] - 2 * dl(i, j) * z) * vW) / (4 * z));
      set(y, zj, W, beta / (4 * z) * (-x[j] / s[j] * Yi + 2 * dl(i, j) * (vX - SY)));
      for (int k = 0; k < m; ++k) {
        const Vector Zk = f.vZ(k);
        set(y, zj, f.Y(k),
            0.25 * (dl(j, k) * beta / s[i] * Zi + dl(i, k) * s[i] / z * Zj +
                    2 * dl(i, j) * beta / s[k] * Zk + dl(i, k) * x[j] * s[i] / (z * s[j]) * vW));
        set(y, zj, f.Z(k),
            (2 * dl(i, j) * beta / s[k] * (x[k] * vX - z * f.vY(k) - x[k] * SY) +
             dl(i, k) * beta / s[j] * (x[j] * vX - z * Yj - x[j] * SY) - dl(j, k) * s[j] * Yi) /
                (4 * z));
      }
      if (j <= i) continue;  // pairs with antisymmetric formulas

      // R(Y_i, Y_j)
      set(y, yj, X, (x[i] * Yj - x[j] * Yi) / (4 * z));
      // R(Y_i, Y_j) W = 0
      // R(Z_i, Z_j) X = 0
      set(zi, zj, W, beta / (4 * z) * (x[i] / s[i] * Zj - x[j] / s[j] * Zi));
      for (int k = 0; k < m; ++k) {
        set(y, yj, f.Y(k), (dl(i, k) * s[i] * Yj - dl(j, k) * s[j] * Yi) / (4 * z));
        set(y, yj, f.Z(k), beta / 4 * (dl(i, k) / s[j] * Zj - dl(j, k) / s[i] * Zi));
        set(zi, zj, f.Y(k),
            beta / (4 * z) *
                (dl(i, k) / s[j] * (-x[j] * vX + x[j] * SY + z * Yj) -
                 dl(j, k) / s[i] * (-x[i] * vX + x[i] * SY + z * Yi)));
        set(zi, zj, f.Z(k),
            (dl(i, k) * s[i] * (Zj + x[j] / s[j] * vW) - dl(j, k) * s[j] * (Zi + x[i] / s[i] * vW)) /
                (4 * z));
      }
    }
  }

  out.ricci = ricci_closed_form(c);
  out.scalar = scalar_closed_form(c);
  return out;
}

WedgeExpansion curvature_wedge(const CanonicalMetric& c) {
  const Frame f(c);
  const int d = f.d, m = f.m;
  const double z = f.z, beta = f.beta;
  const int X = 0, W = f.W();
  const Vector vX = f.vX(), vW = f.vW(), SY = f.SY, SZ2 = f.SZ2;
  const auto& x = f.x;
  const auto& s = f.s;
  auto dl = Frame::delta;

  WedgeExpansion out;
  out.dim = d;
  out.coefficients.assign(static_cast<std::size_t>(d) * d, Matrix::Zero(d, d));
  // u ^ v contributes u v^T - v u^T to the coefficient matrix.
  auto wd = [](const Vector& u, const Vector& v) -> Matrix {
    return u * v.transpose() - v * u.transpose();
  };
  auto set = [&](int a, int b, const Matrix& A) {
    out.coefficients[a * d + b] = A;
    out.coefficients[b * d + a] = -A;
  };

  // sum_m (1/sigma_m^2)(c_X x_m X^Z_m + x_m SY^Z_m + c_Y z Y_m^Z_m)
  auto z_sum = [&](double cx, double sign_sy, double cy) {
    Matrix acc = Matrix::Zero(d, d);
    for (int k = 0; k < m; ++k) {
      const Vector Zk = f.vZ(k);
      acc += (cx * x[k] * wd(vX, Zk) + sign_sy * x[k] * wd(SY, Zk) + cy * z * wd(f.vY(k), Zk)) /
             (s[k] * s[k]);
    }
    return acc;
  };

  set(X, W, (1 / (2 * z)) * (-2 * wd(vX, vW) + wd(SY, vW) + beta * z_sum(-1.5, 1.0, 1.0)));
  for (int i = 0; i < m; ++i) {
    const Vector Yi = f.vY(i), Zi = f.vZ(i);
    const int y = f.Y(i), zi = f.Z(i);
    set(X, y, -1 / (4 * z) * wd(vX, Yi) - 1 / (4 * s[i]) * wd(Zi, vW));
    set(X, zi, 1 / (4 * z * s[i]) *
                   (-s[i] * wd(vX, Zi) - 2 * x[i] * wd(vX, vW) + x[i] * wd(SY, vW) + z * wd(Yi, vW)));
    set(y, W, beta / (4 * z * s[i]) *
                  (x[i] / s[i] * (-wd(vX, vW) + wd(SY, vW)) + (z / s[i] - 2 * s[i] / beta) * wd(Yi, vW) +
                   wd(vX, Zi) - wd(SY, Zi) - s[i] * wd(Yi, SZ2)));
    // Sign of the SZ2 ^ Z_i term fixed against the oracle.
    set(zi, W, beta / (4 * z) *
                   (-1 / s[i] * wd(vX, Yi) + 1 / s[i] * wd(SY, Yi) + wd(SZ2, Zi) +
                    (z / (s[i] * s[i]) - 2 / beta) * wd(Zi, vW) + x[i] / s[i] * wd(SZ2, vW)));
    for (int j = 0; j < m; ++j) {
      const Vector Yj = f.vY(j), Zj = f.vZ(j);
      const double sij = s[i] * s[j];
      set(y, f.Z(j), 1 / (4 * z * sij) *
                         (-x[j] * s[i] * wd(Yi, vW) + 2 * dl(i, j) * sij * (wd(vX, vW) - wd(SY, vW)) -
                          sij * wd(Yi, Zj) + 2 * dl(i, j) * sij * beta * z_sum(1.0, -1.0, -1.0) +
                          beta * (x[j] * wd(vX, Zi) - x[j] * wd(SY, Zi) - z * wd(Yj, Zi))));
      if (j <= i) continue;
      set(y, f.Y(j), -1 / (4 * z) * wd(Yi, Yj) - beta / (4 * sij) * wd(Zi, Zj));
      set(zi, f.Z(j), 1 / (4 * z * sij) *
                          (x[i] * s[j] * wd(Zj, vW) - x[j] * s[i] * wd(Zi, vW) - sij * wd(Zi, Zj) +
                           beta * (x[i] * wd(vX, Yj) - x[j] * wd(vX, Yi) -
                                   (x[i] * wd(SY, Yj) - x[j] * wd(SY, Yi)) - z * wd(Yi, Yj))));
    }
  }
  return out;
}

Matrix ricci_closed_form(const CanonicalMetric& c) {
  c.validate();
  const int n = c.n, m = n - 1, d = 2 * n;
  const Vector s = c.sigma_full();
  const double z = c.z(), beta = c.beta;
  const Vector v = c.x.cwiseQuotient(s);
  const Vector s_inv = s.cwiseInverse();

  Matrix A = Matrix::Zero(d, d);
  A(0, 0) = n * c.p + z;
  A.block(0, 1, 1, m) = n * c.x.transpose();
  A.block(1, 0, m, 1) = n * c.x;
  const Vector diag = n * s + beta * z * s_inv;
  A.block(1, 1, m, m) = diag.asDiagonal();
  A.block(n, n, m, m) = Matrix(diag.asDiagonal()) + beta * v * v.transpose();
  A.block(n, d - 1, m, 1) = (2 * n + 1) * beta / 2 * v;
  A.block(d - 1, n, 1, m) = (2 * n + 1) * beta / 2 * v.transpose();
  A(d - 1, d - 1) = 2 * n * beta -
                    beta * beta * ((c.x.array().square() / s.array() + z) / s.array().square()).sum();
  return (-1.0 / (2 * z)) * A;
}

double scalar_closed_form(const CanonicalMetric& c) {
  c.validate();
  const int n = c.n;
  const Vector s = c.sigma_full();
  const double z = c.z();
  const double tail = ((z + c.x.array().square() / s.array()) / s.array().square()).sum();
  return -(2.0 * n * n + n + 1 + c.beta * tail) / (2 * z);
}

EinsteinTest einstein_test(const CanonicalMetric& c, double tol) {
  const Matrix ric = ricci_closed_form(c);
  const Matrix S = expand(c);
  EinsteinTest t;
  t.constant = (ric.array() * S.array()).sum() / S.squaredNorm();
  t.residual = (ric - t.constant * S).norm() / ric.norm();
  t.matrix = t.residual <= tol;
  t.parameters = std::abs(c.p * c.beta - 1.0) <= tol && c.x.cwiseAbs().maxCoeff() <= tol &&
                 (c.sigma.size() == 0 || (c.sigma.array() - 1.0).abs().maxCoeff() <= tol);
  return t;
}

std::optional<double> is_einstein(const CanonicalMetric& c, double tol) {
  const EinsteinTest t = einstein_test(c, tol);
  if (!t.matrix) return std::nullopt;
  return t.constant;
}

double sectional_curvature(const CanonicalMetric& c, const Vector& u, const Vector& w,
                           double tol) {
  return sectional_curvature(curvature_closed_form(c), expand(c), u, w, tol);
}

}  // namespace solvgeo
