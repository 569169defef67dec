#include "doctest.h"

#include <cmath>

#include "solvgeo/autgrp.hpp"
#include "solvgeo/curvature.hpp"
#include "solvgeo/errors.hpp"
#include "support/generators.hpp"

using namespace solvgeo;
using namespace solvgeo::testing;

namespace {

Vector basis(int dim, int i) { return Vector::Unit(dim, i); }

double scale_of(const std::vector<Matrix>& ms) {
  double s = 0.0;
  for (const auto& m : ms) s = std::max(s, max_abs(m));
  return std::max(1.0, s);
}

}  // namespace

TEST_CASE("Koszul connection examples") {
  const auto alg = build_chn(2);
  const auto nabla = koszul_connection(alg, MetricMatrix::make(Matrix::Identity(4, 4)));
  CHECK(nabla.covariant(alg.x(), alg.x()).isZero(1e-15));

  Rng rng(3);
  for (int n = 2; n <= 4; ++n) {
    const auto a = build_chn(n);
    const auto c = random_canonical(n, rng);
    const auto t = koszul_connection(a.structure(), expand(c));
    CHECK(rel_error(t.covariant(a.y(0), a.z(0)), -0.5 * basis(2 * n, a.w())) < 1e-12);
    CHECK(rel_error(t.covariant(a.w(), a.x()), -basis(2 * n, a.w())) < 1e-12);
  }
  Matrix singular = Matrix::Identity(4, 4);
  singular(3, 3) = 0.0;
  CHECK_THROWS_AS(koszul_connection(alg.structure(), singular), Error);
}

TEST_CASE("closed-form connection examples") {
  Rng rng(4);
  for (int n = 2; n <= 4; ++n) {
    const auto a = build_chn(n);
    const auto c = random_canonical(n, rng);
    const auto t = closed_form_connection(c);
    CHECK(rel_error(t.covariant(a.z(0), a.x()), -0.5 * basis(2 * n, a.z(0))) < 1e-14);
    auto e = c;
    e.x.setZero();
    const auto te = closed_form_connection(e);
    CHECK(rel_error(te.covariant(a.w(), a.w()), (e.beta / e.p) * basis(2 * n, a.x())) < 1e-14);
  }
  const auto c = make_canonical(2, 1.0, {0.5}, {}, 1.0);
  CHECK(c.z() == 0.75);
  Vector expected(4);
  expected << 1.0 / 6.0, -1.0 / 3.0, 0.0, 0.0;
  CHECK(rel_error(closed_form_connection(c).covariant(0, 0), expected) < 1e-15);
  CHECK_THROWS_AS(closed_form_connection(make_canonical(2, 1.0, {1.0}, {}, 1.0)), Error);
}

TEST_CASE("connection identities") {
  Rng rng(5);
  for (int n = 2; n <= 5; ++n) {
    const auto alg = build_chn(n);
    const int d = alg.dim();
    for (int t = 0; t < 10; ++t) {
      const auto c = random_canonical(n, rng);
      const Matrix S = expand(c);
      for (const auto& table : {koszul_connection(alg.structure(), S), closed_form_connection(c)}) {
        double torsion = 0.0, compat = 0.0;
        for (int i = 0; i < d; ++i) {
          for (int j = 0; j < d; ++j) {
            const Vector br = alg.bracket(basis(d, i), basis(d, j));
            torsion = std::max(torsion, max_abs(table.covariant(i, j) - table.covariant(j, i) - br));
          }
          // S N_i must be antisymmetric.
          const Matrix SN = S * table.nabla[i];
          compat = std::max(compat, max_abs(SN + SN.transpose()));
        }
        CHECK(torsion < 1e-10);
        CHECK(compat < 1e-10);
      }
    }
  }
}

TEST_CASE("closed forms agree with the oracle") {
  Rng rng(6);
  for (int n = 2; n <= 5; ++n) {
    const auto alg = build_chn(n);
    const int d = alg.dim();
    for (int t = 0; t < 25; ++t) {
      const auto c = random_canonical(n, rng);
      const Matrix S = expand(c);
      const auto oracle_nabla = koszul_connection(alg.structure(), S);
      const auto cf_nabla = closed_form_connection(c);
      const double ns = scale_of(oracle_nabla.nabla);
      for (int i = 0; i < d; ++i) CHECK(max_abs(cf_nabla.nabla[i] - oracle_nabla.nabla[i]) <= 1e-10 * ns);

      const auto oracle = curvature_oracle(alg.structure(), S);
      const auto cf = curvature_closed_form(c);
      const auto wedge = curvature_wedge(c);
      const double rs = scale_of(oracle.operators);
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
          INFO("n=" << n << " pair (" << alg.basis_labels()[a] << "," << alg.basis_labels()[b] << ")");
          CHECK(max_abs(cf.op(a, b) - oracle.op(a, b)) <= 1e-9 * rs);
          CHECK(max_abs(wedge.to_operator(a, b, S) - oracle.op(a, b)) <= 1e-9 * rs);
        }
      CHECK(rel_error(ricci_closed_form(c), oracle.ricci) < 1e-9);
      CHECK(std::abs(scalar_closed_form(c) - oracle.scalar) <= 1e-9 * std::abs(oracle.scalar));
    }
  }
}

TEST_CASE("Einstein curvature values") {
  const auto alg = build_chn(2);
  const auto curv = curvature_oracle(alg, MetricMatrix::make(Matrix::Identity(4, 4)));
  CHECK(rel_error(curv.ricci, -1.5 * Matrix::Identity(4, 4)) < 1e-14);
  CHECK(curv.scalar == doctest::Approx(-6.0).epsilon(1e-14));
  const auto e = CanonicalMetric::einstein(2, 1.0);
  CHECK(rel_error(ricci_closed_form(e), -1.5 * Matrix::Identity(4, 4)) < 1e-15);
  CHECK(scalar_closed_form(e) == doctest::Approx(-6.0).epsilon(1e-15));
}

TEST_CASE("curvature operator examples") {
  Rng rng(7);
  for (int n = 2; n <= 4; ++n) {
    const auto a = build_chn(n);
    const int d = a.dim();
    auto c = random_canonical(n, rng);
    const auto cf = curvature_closed_form(c);
    CHECK(rel_error(cf.op(a.x(), a.y(0)).col(a.z(0)), 0.25 * basis(d, a.w())) < 1e-14);
    if (n >= 3) CHECK(cf.op(a.y(0), a.y(1)).col(a.w()).isZero(1e-14));
    c.x.setZero();
    const auto c0 = curvature_closed_form(c);
    CHECK(rel_error(c0.op(a.x(), a.w()).col(a.w()), -(c.beta / c.z()) * basis(d, a.x())) < 1e-14);
  }
}

TEST_CASE("wedge examples") {
  Rng rng(8);
  for (int n = 3; n <= 4; ++n) {
    const auto a = build_chn(n);
    const auto c = random_canonical(n, rng);
    const auto w = curvature_wedge(c);
    const double z = c.z(), s1 = c.sigma_full()[0], s2 = c.sigma_full()[1];
    const Matrix& A = w.coefficient(a.x(), a.y(0));
    CHECK(A(a.x(), a.y(0)) == doctest::Approx(-1.0 / (4 * z)));
    CHECK(A(a.z(0), a.w()) == doctest::Approx(-1.0 / (4 * s1)));
    const Matrix& B = w.coefficient(a.y(0), a.y(1));
    CHECK(B(a.y(0), a.y(1)) == doctest::Approx(-1.0 / (4 * z)));
    CHECK(B(a.z(0), a.z(1)) == doctest::Approx(-c.beta / (4 * s1 * s2)));
    for (const auto& m : w.coefficients) CHECK(max_abs(m + m.transpose()) == 0.0);
  }
}

TEST_CASE("wedge operator") {
  Rng rng(9);
  const Matrix S = random_spd(4, rng);
  const Vector u = Vector::Random(4), w = Vector::Random(4), t = Vector::Random(4);
  const Vector expected = w.dot(S * t) * u - u.dot(S * t) * w;
  CHECK(rel_error(wedge_operator(u, w, S) * t, expected) < 1e-14);
}

TEST_CASE("Ricci at x = 0") {
  Rng rng(10);
  for (int n = 2; n <= 5; ++n)
    for (int t = 0; t < 20; ++t) {
      auto c = random_canonical(n, rng);
      c.x.setZero();
      const Vector s = c.sigma_full();
      const double p = c.p, b = c.beta;
      Vector diag(2 * n);
      diag[0] = (n + 1) * p;
      for (int i = 0; i < n - 1; ++i) diag[1 + i] = diag[n + i] = n * s[i] + b * p / s[i];
      diag[2 * n - 1] = 2 * n * b - b * b * p * s.array().square().inverse().sum();
      const Matrix expected = Matrix((-diag / (2 * p)).asDiagonal());
      CHECK(rel_error(ricci_closed_form(c), expected) < 1e-13);
    }
}

TEST_CASE("scalar curvature is negative") {
  Rng rng(11);
  for (int n = 2; n <= 5; ++n)
    for (int t = 0; t < 250; ++t) {
      const auto c = random_canonical(n, rng);
      const double tau = scalar_closed_form(c);
      CHECK(tau < -1e-12);
      CHECK(tau * 2 * c.z() <= -(2.0 * n * n + n + 1) * (1 + 1e-12));
    }
}

TEST_CASE("scalar curvature is an orbit invariant") {
  const auto alg = build_chn(2);
  Vector d(4);
  d << 1.0, 4.0, 1.0, 1.0;
  const double tau = curvature_oracle(alg.structure(), Matrix(d.asDiagonal())).scalar;
  CHECK(tau == doctest::Approx(scalar_closed_form(make_canonical(2, 1.0, {0.0}, {}, 0.25))).epsilon(1e-13));
  CHECK(tau != doctest::Approx(scalar_closed_form(make_canonical(2, 1.0, {0.0}, {}, 0.5))));

  Rng rng(12);
  for (int n = 2; n <= 4; ++n) {
    const auto c = random_canonical(n, rng);
    const Matrix S = act_on_metric(random_automorphism(n, rng()), expand(c));
    CHECK(curvature_oracle(build_chn(n).structure(), S).scalar ==
          doctest::Approx(scalar_closed_form(c)).epsilon(1e-9));
  }
}

TEST_CASE("curvature symmetries") {
  Rng rng(13);
  for (int n = 2; n <= 5; ++n) {
    const auto alg = build_chn(n);
    const int d = alg.dim();
    for (int t = 0; t < 5; ++t) {
      const auto c = random_canonical(n, rng);
      const Matrix S = expand(c);
      for (const auto& curv : {curvature_oracle(alg.structure(), S), curvature_closed_form(c)}) {
        const double sc = scale_of(curv.operators);
        double anti = 0, skew = 0, bianchi = 0, pair = 0;
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b) {
            anti = std::max(anti, max_abs(curv.op(a, b) + curv.op(b, a)));
            const Matrix SR = S * curv.op(a, b);
            skew = std::max(skew, max_abs(SR + SR.transpose()));
            for (int k = 0; k < d; ++k) {
              const Vector cyc = curv.op(a, b).col(k) + curv.op(b, k).col(a) + curv.op(k, a).col(b);
              bianchi = std::max(bianchi, max_abs(cyc));
              for (int l = 0; l < d; ++l) {
                const double lhs = (S * curv.op(a, b).col(k))[l];
                const double rhs = (S * curv.op(k, l).col(a))[b];
                pair = std::max(pair, std::abs(lhs - rhs));
              }
            }
          }
        CHECK(anti <= 1e-9 * sc);
        CHECK(skew <= 1e-9 * sc);
        CHECK(bianchi <= 1e-9 * sc);
        CHECK(pair <= 1e-9 * sc);
        CHECK(max_abs(curv.ricci - curv.ricci.transpose()) <= 1e-9 * sc);
      }
    }
  }
}

TEST_CASE("Ricci by two traces") {
  Rng rng(14);
  for (int n = 2; n <= 5; ++n) {
    const auto alg = build_chn(n);
    for (int t = 0; t < 10; ++t) {
      const Matrix S = random_spd(2 * n, rng, 0.5);
      const auto curv = curvature_oracle(alg.structure(), S);
      CHECK(rel_error(ricci_orthonormal_trace(curv, S), curv.ricci) < 1e-10);
      CHECK(curv.scalar == doctest::Approx((S.inverse() * curv.ricci).trace()).epsilon(1e-12));
    }
  }
}

TEST_CASE("Einstein test") {
  const auto e = einstein_test(make_canonical(2, 2.0, {0.0}, {}, 0.5));
  CHECK(e.parameters);
  CHECK(e.matrix);
  CHECK(e.constant == doctest::Approx(-0.75).epsilon(1e-14));
  CHECK(is_einstein(make_canonical(2, 2.0, {0.0}, {}, 0.5)).value() == doctest::Approx(-0.75));
  CHECK_FALSE(is_einstein(make_canonical(2, 1.0, {0.0}, {}, 2.0)).has_value());
  CHECK_FALSE(is_einstein(make_canonical(3, 1.0, {0.1, 0.0}, {1.0}, 1.0)).has_value());
  CHECK_FALSE(is_einstein(make_canonical(3, 1.0, {0.0, 0.0}, {1.5}, 1.0)).has_value());

  for (int n = 2; n <= 5; ++n)
    for (double p : {0.1, 0.7, 3.0, 10.0}) {
      const auto r = is_einstein(CanonicalMetric::einstein(n, p));
      REQUIRE(r.has_value());
      CHECK(*r == doctest::Approx(-(n + 1) / (2 * p)).epsilon(1e-13));
    }
}

TEST_CASE("sectional curvature") {
  const auto e = CanonicalMetric::einstein(2, 1.0);
  CHECK(sectional_curvature(e, basis(4, 0), basis(4, 3)) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(sectional_curvature(e, basis(4, 0), basis(4, 1)) == doctest::Approx(-0.25).epsilon(1e-14));

  Rng rng(15);
  const auto c = random_canonical(3, rng);
  for (int t = 0; t < 20; ++t) {
    const Vector u = Vector::Random(6), w = Vector::Random(6);
    const double k = sectional_curvature(c, u, w);
    CHECK(sectional_curvature(c, u + w, w) == doctest::Approx(k).epsilon(1e-10));
    CHECK(sectional_curvature(c, 2.5 * u, -w) == doctest::Approx(k).epsilon(1e-10));
    CHECK(sectional_curvature(c, w, u) == doctest::Approx(k).epsilon(1e-10));
  }
  const Vector u = Vector::Random(6);
  CHECK_THROWS_AS(sectional_curvature(c, u, 3.0 * u), Error);
}

TEST_CASE("Einstein metric is quarter pinched") {
  const auto e = CanonicalMetric::einstein(3, 1.0);
  const auto curv = curvature_closed_form(e);
  const Matrix S = expand(e);
  Rng rng(16);
  std::normal_distribution<double> g;
  double lo = 0, hi = -1e300;
  lo = 1e300;
  for (int t = 0; t < 500; ++t) {
    Vector u(6), w(6);
    for (int i = 0; i < 6; ++i) u[i] = g(rng), w[i] = g(rng);
    const double k = sectional_curvature(curv, S, u, w);
    lo = std::min(lo, k);
    hi = std::max(hi, k);
  }
  CHECK(lo >= -1.0 - 1e-12);
  CHECK(hi <= -0.25 + 1e-12);

  // Jacobi operator on the unit vector u has spectrum within [-1, -1/4].
  Vector u = Vector::Random(6);
  u /= std::sqrt(u.dot(S * u));
  const Matrix J = jacobi_operator(curv, u);
  CHECK(max_abs(J * u) < 1e-13);
}
