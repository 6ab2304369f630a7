// ivcomp/linalg.h

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

#ifndef IVCOMP_LINALG_H_
#define IVCOMP_LINALG_H_

#include <cstddef>
#include <span>
#include <vector>

namespace ivcomp {

using Vector = std::vector<double>;

/// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  /// Takes ownership of row-major `data`; throws DimensionError on size mismatch.
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  Vector col(std::size_t c) const;

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  Matrix transpose() const;

  Matrix &operator+=(const Matrix &other);
  Matrix &operator-=(const Matrix &other);
  Matrix &operator*=(double s);

  bool operator==(const Matrix &other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix &b);
Matrix operator-(Matrix a, const Matrix &b);
Matrix operator*(Matrix a, double s);
Matrix operator*(const Matrix &a, const Matrix &b);
Vector operator*(const Matrix &a, std::span<const double> x);

/// a^T * b without forming the transpose.
Matrix mul_tn(const Matrix &a, const Matrix &b);
/// a * b^T without forming the transpose.
Matrix mul_nt(const Matrix &a, const Matrix &b);
/// a^T x
Vector mul_t(const Matrix &a, std::span<const double> x);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);
/// Adds alpha * x x^T to the square matrix m.
void add_outer(Matrix &m, double alpha, std::span<const double> x);

double trace(const Matrix &a);
double frobenius_norm(const Matrix &a);
double max_abs(const Matrix &a);
double max_abs_diff(const Matrix &a, const Matrix &b);
bool is_symmetric(const Matrix &a, double rel_tol);
/// (a + a^T) / 2
Matrix symmetrize(const Matrix &a);
bool all_finite(std::span<const double> v);

struct EigenResult {
  Vector values;   // descending
  Matrix vectors;  // column i pairs with values[i]
};

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
///
/// Sweeps until the off-diagonal Frobenius norm falls below
/// 1e-12 * ||a||_F, or fails with NumericalError after 100 sweeps.
/// Throws DimensionError if `a` is non-square or asymmetric beyond 1e-10
/// relative to its largest entry.
EigenResult sym_eig(const Matrix &a);

/// Lower-triangular L with positive diagonal such that L L^T = a.
/// Throws NotPositiveDefiniteError on a non-positive pivot.
Matrix cholesky(const Matrix &a);

/// Solves a x = b for SPD a via Cholesky. Throws NumericalError (the
/// NotPositiveDefiniteError subclass) if a is not SPD.
Matrix spd_solve(const Matrix &a, const Matrix &b);
Vector spd_solve(const Matrix &a, std::span<const double> b);

/// Inverse of a lower-triangular matrix with nonzero diagonal.
Matrix invert_lower(const Matrix &l);
/// Inverse of an SPD matrix via Cholesky.
Matrix spd_inverse(const Matrix &a);
/// log det of an SPD matrix via Cholesky.
double spd_logdet(const Matrix &a);

}  // namespace ivcomp

#endif  // IVCOMP_LINALG_H_
