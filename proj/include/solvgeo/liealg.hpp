#pragma once

#include <string>
#include <vector>

#include "solvgeo/types.hpp"

namespace solvgeo {

/// Dense structure constants: [e_i, e_j] = sum_k c(i, j, k) e_k.
class StructureTensor {
 public:
  StructureTensor() = default;
  explicit StructureTensor(int dim)
      : dim_(dim), data_(static_cast<std::size_t>(dim) * dim * dim, 0.0) {}

  int dim() const noexcept { return dim_; }

  double operator()(int i, int j, int k) const { return data_[index(i, j, k)]; }
  double& operator()(int i, int j, int k) { return data_[index(i, j, k)]; }

  /// Sets c(i,j,k) = value and c(j,i,k) = -value.
  void set_bracket(int i, int j, int k, double value);

  /// Bilinear bracket of two coefficient vectors.
  Vector bracket(const Vector& u, const Vector& w) const;

  /// Matrix of ad_u, column j holds [u, e_j].
  Matrix ad(const Vector& u) const;

 private:
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * dim_ + j) * dim_ + k;
  }

  int dim_ = 0;
  std::vector<double> data_;
};

/// True iff the cyclic sum [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]
/// vanishes (within tol) on every basis triple.
bool validate_jacobi(const StructureTensor& c, double tol = 0.0);

/// The Lie algebra ch^n = R x| h^n in the frozen basis
/// (X, Y_1..Y_{n-1}, Z_1..Z_{n-1}, W) with nonzero brackets
///   [X,Y_i] = Y_i/2, [X,Z_i] = Z_i/2, [X,W] = W, [Z_j,Y_i] = delta_ij W.
class LieAlgebraCHn {
 public:
  /// Throws Error(InvalidDimension) for n < 2.
  static LieAlgebraCHn build(int n);

  int n() const noexcept { return n_; }
  int dim() const noexcept { return 2 * n_; }

  // Basis positions, i is zero-based in 0..n-2.
  int x() const noexcept { return 0; }
  int y(int i) const noexcept { return 1 + i; }
  int z(int i) const noexcept { return n_ + i; }
  int w() const noexcept { return 2 * n_ - 1; }

  const std::vector<std::string>& basis_labels() const noexcept { return labels_; }
  const StructureTensor& structure() const noexcept { return c_; }

  Vector basis(int i) const { return Vector::Unit(dim(), i); }

  /// Throws Error(Dimension) when u or w is not of length 2n.
  Vector bracket(const Vector& u, const Vector& w) const;

  Matrix ad(const Vector& u) const { return c_.ad(u); }

 private:
  LieAlgebraCHn(int n, StructureTensor c, std::vector<std::string> labels)
      : n_(n), c_(std::move(c)), labels_(std::move(labels)) {}

  int n_;
  StructureTensor c_;
  std::vector<std::string> labels_;
};

inline LieAlgebraCHn build_chn(int n) { return LieAlgebraCHn::build(n); }

/// Heisenberg algebra h^n on (Y_1..Y_{n-1}, Z_1..Z_{n-1}, W) with
/// [Z_j, Y_i] = delta_ij W. Dimension 2n-1.
StructureTensor build_heisenberg(int n);

}  // namespace solvgeo
