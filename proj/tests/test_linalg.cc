// tests/test_linalg.cc

// Copyright 2026  The ivcomp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.


#include <cmath>
#include <random>

#include "doctest.h"
#include "ivcomp/error.h"
#include "ivcomp/linalg.h"
#include "test_util.h"

using namespace ivcomp;
using ivcomp::testing::random_matrix;
using ivcomp::testing::random_spd;
using ivcomp::testing::random_symmetric;

namespace {

Matrix reconstruct(const EigenResult &e) {
  const std::size_t n = e.values.size();
  Matrix vl = e.vectors;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) vl(r, c) *= e.values[c];
  return mul_nt(vl, e.vectors);
}

}  // namespace

TEST_CASE("sym_eig of the identity") {
  EigenResult e = sym_eig(Matrix::identity(3));
  REQUIRE(e.values.size() == 3);
  for (double v : e.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(max_abs_diff(mul_tn(e.vectors, e.vectors), Matrix::identity(3)) < 1e-12);
}

TEST_CASE("sym_eig of a diagonal matrix gives sorted values and unit vectors") {
  double d[] = {1.0, 3.0};
  EigenResult e = sym_eig(Matrix::diagonal(d));
  CHECK(e.values[0] == 3.0);
  CHECK(e.values[1] == 1.0);
  CHECK(std::abs(e.vectors(1, 0)) == 1.0);
  CHECK(e.vectors(0, 0) == 0.0);
  CHECK(std::abs(e.vectors(0, 1)) == 1.0);
}

TEST_CASE("sym_eig reconstructs random symmetric matrices") {
  std::mt19937_64 rng(5);
  for (std::size_t n : {1, 2, 6, 17, 40}) {
    Matrix a = random_symmetric(n, rng);
    EigenResult e = sym_eig(a);
    CHECK(max_abs_diff(reconstruct(e), a) < 1e-10);
    CHECK(max_abs_diff(mul_tn(e.vectors, e.vectors), Matrix::identity(n)) < 1e-10);
    for (std::size_t i = 0; i + 1 < n; ++i) CHECK(e.values[i] >= e.values[i + 1]);
    // A v = lambda v column by column.
    Matrix av = a * e.vectors;
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t r = 0; r < n; ++r)
        CHECK(std::abs(av(r, c) - e.values[c] * e.vectors(r, c)) <
              1e-8 * std::max(1.0, max_abs(a)));
    double sum = 0.0;
    for (double v : e.values) sum += v;
    CHECK(sum == doctest::Approx(trace(a)).epsilon(1e-9));
  }
}

TEST_CASE("sym_eig determinant equals product of eigenvalues") {
  std::mt19937_64 rng(6);
  Matrix a = random_spd(5, rng);
  EigenResult e = sym_eig(a);
  double logprod = 0.0;
  for (double v : e.values) logprod += std::log(v);
  CHECK(logprod == doctest::Approx(spd_logdet(a)).epsilon(1e-10));
}

TEST_CASE("sym_eig handles repeated eigenvalues") {
  std::mt19937_64 rng(7);
  // Q diag(2,2,2,5) Q^T with a random orthogonal Q.
  EigenResult q = sym_eig(random_symmetric(4, rng));
  double d[] = {2.0, 2.0, 2.0, 5.0};
  Matrix a = symmetrize(q.vectors * Matrix::diagonal(d) * q.vectors.transpose());
  EigenResult e = sym_eig(a);
  CHECK(e.values[0] == doctest::Approx(5.0).epsilon(1e-12));
  for (int i = 1; i < 4; ++i) CHECK(e.values[i] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(max_abs_diff(reconstruct(e), a) < 1e-12);
}

TEST_CASE("sym_eig rejects bad input") {
  CHECK_THROWS_AS(sym_eig(Matrix(2, 3)), DimensionError);
  Matrix a{2, 2, {1.0, 2.0, 2.5, 1.0}};
  CHECK_THROWS_AS(sym_eig(a), DimensionError);
}

TEST_CASE("cholesky examples") {
  CHECK(cholesky(Matrix::identity(4)) == Matrix::identity(4));

  Matrix l = cholesky(Matrix{2, 2, {4.0, 2.0, 2.0, 3.0}});
  CHECK(l(0, 0) == doctest::Approx(2.0));
  CHECK(l(0, 1) == 0.0);
  CHECK(l(1, 0) == doctest::Approx(1.0));
  CHECK(l(1, 1) == doctest::Approx(std::sqrt(2.0)));
  CHECK(max_abs_diff(mul_nt(l, l), Matrix{2, 2, {4.0, 2.0, 2.0, 3.0}}) < 1e-12);

  double d[] = {9.0, 16.0};
  double r[] = {3.0, 4.0};
  CHECK(max_abs_diff(cholesky(Matrix::diagonal(d)), Matrix::diagonal(r)) == 0.0);
}

TEST_CASE("cholesky round trip on random SPD matrices") {
  std::mt19937_64 rng(8);
  for (std::size_t n : {1, 3, 10, 30}) {
    Matrix a = random_spd(n, rng);
    Matrix l = cholesky(a);
    for (std::size_t r = 0; r < n; ++r) {
      CHECK(l(r, r) > 0.0);
      for (std::size_t c = r + 1; c < n; ++c) CHECK(l(r, c) == 0.0);
    }
    CHECK(max_abs_diff(mul_nt(l, l), a) < 1e-10 * max_abs(a));
  }
}

TEST_CASE("cholesky rejects indefinite matrices") {
  CHECK_THROWS_AS(cholesky(Matrix{2, 2, {1.0, 2.0, 2.0, 1.0}}), NotPositiveDefiniteError);
  CHECK_THROWS_AS(cholesky(Matrix(2, 2)), NumericalError);
  CHECK_THROWS_AS(cholesky(Matrix(2, 3)), DimensionError);
}

TEST_CASE("spd_solve examples") {
  std::mt19937_64 rng(9);
  Matrix b = random_matrix(3, 2, rng);
  CHECK(max_abs_diff(spd_solve(Matrix::identity(3), b), b) < 1e-15);

  double d[] = {2.0, 4.0};
  double rhs[] = {2.0, 8.0};
  Vector x = spd_solve(Matrix::diagonal(d), rhs);
  CHECK(x[0] == doctest::Approx(1.0));
  CHECK(x[1] == doctest::Approx(2.0));
}

TEST_CASE("spd_solve residual and round trip") {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 5; ++trial) {
    Matrix a = random_spd(5, rng);
    Matrix b = random_matrix(5, 3, rng);
    Matrix x = spd_solve(a, b);
    CHECK(frobenius_norm(a * x - b) / frobenius_norm(b) < 1e-9);

    Matrix x0 = random_matrix(5, 2, rng);
    CHECK(frobenius_norm(spd_solve(a, a * x0) - x0) / frobenius_norm(x0) < 1e-9);
  }
}

TEST_CASE("spd_solve errors") {
  CHECK_THROWS_AS(spd_solve(Matrix(2, 2), Matrix::identity(2)), NumericalError);
  CHECK_THROWS_AS(spd_solve(Matrix::identity(2), Matrix(3, 1)), DimensionError);
}

TEST_CASE("triangular and SPD inverses") {
  std::mt19937_64 rng(11);
  Matrix a = random_spd(6, rng);
  Matrix l = cholesky(a);
  CHECK(max_abs_diff(invert_lower(l) * l, Matrix::identity(6)) < 1e-12);
  CHECK(max_abs_diff(spd_inverse(a) * a, Matrix::identity(6)) < 1e-10);
}

TEST_CASE("matrix products agree with explicit transposes") {
  std::mt19937_64 rng(12);
  Matrix a = random_matrix(4, 3, rng), b = random_matrix(4, 5, rng),
         c = random_matrix(6, 3, rng);
  CHECK(max_abs_diff(mul_tn(a, b), a.transpose() * b) < 1e-14);
  CHECK(max_abs_diff(mul_nt(a, c), a * c.transpose()) < 1e-14);
  Vector x = ivcomp::testing::random_vector(4, rng);
  Vector y = mul_t(a, x), z = a.transpose() * x;
  for (std::size_t i = 0; i < y.size(); ++i) CHECK(y[i] == doctest::Approx(z[i]));
  CHECK_THROWS_AS(a * b, DimensionError);
}
