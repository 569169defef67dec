#include "doctest.h"

#include "solvgeo/autgrp.hpp"
#include "solvgeo/errors.hpp"
#include "solvgeo/sympl.hpp"
#include "support/generators.hpp"

using namespace solvgeo;
using namespace solvgeo::testing;

TEST_CASE("make_automorphism examples") {
  for (int n = 2; n <= 4; ++n) {
    const int m = n - 1;
    const auto id = Automorphism::make(n, 1.0, Matrix::Identity(2 * m, 2 * m), Vector::Zero(2 * m), 0.0);
    CHECK(id.matrix().isIdentity());

    const double alpha = 1.7;
    const auto diag = Automorphism::make(n, alpha * alpha, alpha * Matrix::Identity(2 * m, 2 * m),
                                         Vector::Zero(2 * m), 0.0);
    Vector expected(2 * n);
    expected << 1.0, Vector::Constant(2 * m, alpha), alpha * alpha;
    CHECK(rel_error(diag.matrix(), Matrix(expected.asDiagonal())) < 1e-15);
  }
  Vector v(2);
  v << 0.3, -1.2;
  const auto t = Automorphism::make(2, 1.0, Matrix::Identity(2, 2), v, 0.7);
  CHECK(rel_error(t.u(), 0.5 * standard_symplectic_form(1) * v) < 1e-15);
  CHECK(t.matrix()(3, 0) == 0.7);
}

TEST_CASE("make_automorphism errors") {
  auto kind_of = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Parse;
  };
  CHECK(kind_of([] { Automorphism::make(2, 0.0, Matrix::Identity(2, 2), Vector::Zero(2), 0.0); }) ==
        ErrorKind::Singular);
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 0) = 3.0;  // det 3 != lambda = 1
  CHECK(kind_of([&] { Automorphism::make(2, 1.0, bad, Vector::Zero(2), 0.0); }) ==
        ErrorKind::ConstraintViolation);
  CHECK(kind_of([] { Automorphism::make(3, 1.0, Matrix::Identity(2, 2), Vector::Zero(2), 0.0); }) ==
        ErrorKind::Dimension);
}

TEST_CASE("is_automorphism") {
  const auto alg = build_chn(3);
  CHECK(is_automorphism(Matrix::Identity(6, 6), alg));
  Rng rng(1);
  const Matrix M = random_symplectic(2, rng());
  CHECK(is_automorphism(Automorphism::symplectic(M).matrix(), alg, 1e-9));

  Matrix scaleX = Matrix::Identity(6, 6);
  scaleX(0, 0) = 2.0;  // [FX, FW] = 2W but F[X, W] = W
  CHECK_FALSE(is_automorphism(scaleX, alg));
  CHECK_THROWS_AS(is_automorphism(Matrix::Identity(4, 4), alg), Error);
}

TEST_CASE("negative lambda branch is accepted") {
  // M = diag(I, -I) satisfies M^T J M = -J.
  for (int n = 2; n <= 4; ++n) {
    const int m = n - 1;
    Matrix M = Matrix::Identity(2 * m, 2 * m);
    M.bottomRightCorner(m, m) *= -1.0;
    Vector v = Vector::LinSpaced(2 * m, -1.0, 1.0);
    const auto F = Automorphism::make(n, -1.0, M, v, 0.4);
    CHECK(is_automorphism(F.matrix(), build_chn(n), 1e-12));
    const Matrix S = act_on_metric(F, Matrix::Identity(2 * n, 2 * n));
    CHECK(Eigen::LLT<Matrix>(S).info() == Eigen::Success);
  }
}

TEST_CASE("act_on_metric") {
  const Matrix S = Matrix::Identity(4, 4);
  CHECK(act_on_metric(Automorphism::identity(2), S) == S);
  const Matrix out = act_on_metric(Automorphism::diagonal(2, 2.0), S);
  Vector expected(4);
  expected << 1, 4, 4, 16;
  CHECK(rel_error(out, Matrix(expected.asDiagonal())) < 1e-15);

  Rng rng(4);
  for (int n = 2; n <= 5; ++n) {
    const auto F1 = random_automorphism(n, rng());
    const auto F2 = random_automorphism(n, rng());
    const Matrix T = random_spd(2 * n, rng);
    const Matrix lhs = act_on_metric(compose(F1, F2), T);
    const Matrix rhs = act_on_metric(F2, act_on_metric(F1, T));
    CHECK(rel_error(lhs, rhs) < 1e-10);
    CHECK(max_abs(lhs - lhs.transpose()) == 0.0);
    CHECK(Eigen::LLT<Matrix>(lhs).info() == Eigen::Success);
  }
}

TEST_CASE("group structure") {
  Rng rng(8);
  for (int n = 2; n <= 5; ++n) {
    const auto F = random_automorphism(n, rng());
    const auto G = random_automorphism(n, rng());
    CHECK(rel_error(compose(F, inverse(F)).matrix(), Matrix::Identity(2 * n, 2 * n)) < 1e-10);
    CHECK(std::abs(compose(F, G).lambda() - F.lambda() * G.lambda()) < 1e-12 * F.lambda() * G.lambda());
    CHECK(is_automorphism(compose(F, G).matrix(), build_chn(n), 1e-9));
    CHECK(is_automorphism(inverse(F).matrix(), build_chn(n), 1e-9));
    const auto D = Automorphism::diagonal(n, 1.9);
    CHECK(rel_error(inverse(D).matrix(), Automorphism::diagonal(n, 1.0 / 1.9).matrix()) < 1e-14);
  }
  CHECK_THROWS_AS(compose(Automorphism::identity(2), Automorphism::identity(3)), Error);
}

TEST_CASE("from_matrix round trip") {
  Rng rng(17);
  const auto F = random_automorphism(4, rng());
  const auto G = Automorphism::from_matrix(F.matrix());
  CHECK(rel_error(G.matrix(), F.matrix()) < 1e-14);
  Matrix broken = F.matrix();
  broken(1, 0) += 0.1;  // u inconsistent with (lambda, M, v)
  CHECK_THROWS_AS(Automorphism::from_matrix(broken), Error);
}

TEST_CASE("random_automorphism") {
  for (int n = 2; n <= 6; ++n) {
    const auto a = random_automorphism(n, 1234);
    const auto b = random_automorphism(n, 1234);
    CHECK(a.matrix() == b.matrix());
    CHECK(random_automorphism(n, 99, 0.0).matrix().isIdentity(1e-15));
    const auto alg = build_chn(n);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const auto F = random_automorphism(n, seed);
      CHECK(is_automorphism(F.matrix(), alg, 1e-10));
      CHECK(F.lambda() > 0.0);
      // X row fixed, W mapped to lambda W.
      CHECK(F.matrix().row(0).tail(2 * n - 1).isZero());
      CHECK(F.matrix()(0, 0) == 1.0);
      CHECK(F.matrix().col(2 * n - 1).head(2 * n - 1).isZero());
    }
  }
}
