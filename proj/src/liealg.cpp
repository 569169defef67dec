#include "solvgeo/liealg.hpp"

#include <cmath>

#include "solvgeo/errors.hpp"

namespace solvgeo {

void StructureTensor::set_bracket(int i, int j, int k, double value) {
  (*this)(i, j, k) = value;
  (*this)(j, i, k) = -value;
}

Vector StructureTensor::bracket(const Vector& u, const Vector& w) const {
  Vector out = Vector::Zero(dim_);
  for (int i = 0; i < dim_; ++i) {
    if (u[i] == 0.0) continue;
    for (int j = 0; j < dim_; ++j) {
      const double uw = u[i] * w[j];
      if (uw == 0.0) continue;
      for (int k = 0; k < dim_; ++k) out[k] += uw * (*this)(i, j, k);
    }
  }
  return out;
}

Matrix StructureTensor::ad(const Vector& u) const {
  Matrix out = Matrix::Zero(dim_, dim_);
  for (int i = 0; i < dim_; ++i) {
    if (u[i] == 0.0) continue;
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k) out(k, j) += u[i] * (*this)(i, j, k);
  }
  return out;
}

bool validate_jacobi(const StructureTensor& c, double tol) {
  const int d = c.dim();
  auto e = [d](int i) { return Vector::Unit(d, i); };
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        const Vector sum = c.bracket(c.bracket(e(i), e(j)), e(k)) +
                           c.bracket(c.bracket(e(j), e(k)), e(i)) +
                           c.bracket(c.bracket(e(k), e(i)), e(j));
        if (sum.cwiseAbs().maxCoeff() > tol) return false;
      }
  return true;
}

LieAlgebraCHn LieAlgebraCHn::build(int n) {
  if (n < 2)
    throw Error(ErrorKind::InvalidDimension,
                "ch^n requires n >= 2, got n = " + std::to_string(n));
  const int d = 2 * n;
  const int m = n - 1;
  StructureTensor c(d);
  const int X = 0;
  const int W = d - 1;
  for (int i = 0; i < m; ++i) {
    const int Y = 1 + i;
    const int Z = n + i;
    c.set_bracket(X, Y, Y, 0.5);
    c.set_bracket(X, Z, Z, 0.5);
    c.set_bracket(Z, Y, W, 1.0);
  }
  c.set_bracket(X, W, W, 1.0);

  std::vector<std::string> labels;
  labels.reserve(d);
  labels.emplace_back("X");
  for (int i = 1; i <= m; ++i) labels.push_back("Y" + std::to_string(i));
  for (int i = 1; i <= m; ++i) labels.push_back("Z" + std::to_string(i));
  labels.emplace_back("W");
  return LieAlgebraCHn(n, std::move(c), std::move(labels));
}

Vector LieAlgebraCHn::bracket(const Vector& u, const Vector& w) const {
  if (u.size() != dim() || w.size() != dim())
    throw Error(ErrorKind::Dimension,
                "bracket operands must have length " + std::to_string(dim()));
  return c_.bracket(u, w);
}

StructureTensor build_heisenberg(int n) {
  if (n < 2)
    throw Error(ErrorKind::InvalidDimension,
                "h^n requires n >= 2, got n = " + std::to_string(n));
  const int m = n - 1;
  StructureTensor c(2 * m + 1);
  for (int i = 0; i < m; ++i) c.set_bracket(m + i, i, 2 * m, 1.0);
  return c;
}

}  // namespace solvgeo
