// src/linalg.cc

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

#include "ivcomp/linalg.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ivcomp/error.h"

namespace ivcomp {

namespace {

constexpr int kMaxJacobiSweeps = 100;
constexpr double kJacobiTol = 1e-12;
constexpr double kSymmetryTol = 1e-10;

std::string shape(const Matrix &m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_square(const Matrix &a, const char *who) {
  if (a.rows() != a.cols())
    throw DimensionError(std::string(who) + ": expected square matrix, got " +
                         shape(a));
}

void require_same_shape(const Matrix &a, const Matrix &b, const char *who) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError(std::string(who) + ": shape mismatch " + shape(a) +
                         " vs " + shape(b));
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols)
    throw DimensionError("Matrix: " + std::to_string(data_.size()) +
                         " entries for shape " + std::to_string(rows) + "x" +
                         std::to_string(cols));
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Vector Matrix::col(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix &Matrix::operator+=(const Matrix &other) {
  require_same_shape(*this, other, "operator+=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Matrix &Matrix::operator-=(const Matrix &other) {
  require_same_shape(*this, other, "operator-=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Matrix &Matrix::operator*=(double s) {
  for (double &x : data_) x *= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix &b) { return a += b; }
Matrix operator-(Matrix a, const Matrix &b) { return a -= b; }
Matrix operator*(Matrix a, double s) { return a *= s; }

Matrix operator*(const Matrix &a, const Matrix &b) {
  if (a.cols() != b.rows())
    throw DimensionError("matmul: " + shape(a) + " * " + shape(b));
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ci = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      double aik = a(i, k);
      if (aik != 0.0) axpy(aik, b.row(k), ci);
    }
  }
  return c;
}

Vector operator*(const Matrix &a, std::span<const double> x) {
  if (a.cols() != x.size())
    throw DimensionError("matvec: " + shape(a) + " * vector of " +
                         std::to_string(x.size()));
  Vector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = dot(a.row(i), x);
  return y;
}

Matrix mul_tn(const Matrix &a, const Matrix &b) {
  if (a.rows() != b.rows())
    throw DimensionError("mul_tn: " + shape(a) + "^T * " + shape(b));
  Matrix c(a.cols(), b.cols());
  for (std::size_t k = 0; k < a.rows(); ++k) {
    auto bk = b.row(k);
    for (std::size_t i = 0; i < a.cols(); ++i) {
      double aki = a(k, i);
      if (aki != 0.0) axpy(aki, bk, c.row(i));
    }
  }
  return c;
}

Matrix mul_nt(const Matrix &a, const Matrix &b) {
  if (a.cols() != b.cols())
    throw DimensionError("mul_nt: " + shape(a) + " * " + shape(b) + "^T");
  Matrix c(a.rows(), b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.rows(); ++j) c(i, j) = dot(a.row(i), b.row(j));
  return c;
}

Vector mul_t(const Matrix &a, std::span<const double> x) {
  if (a.rows() != x.size())
    throw DimensionError("mul_t: " + shape(a) + "^T * vector of " +
                         std::to_string(x.size()));
  Vector y(a.cols(), 0.0);
  for (std::size_t k = 0; k < a.rows(); ++k) axpy(x[k], a.row(k), y);
  return y;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw DimensionError("dot: length " + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  if (x.size() != y.size())
    throw DimensionError("axpy: length " + std::to_string(x.size()) + " vs " +
                         std::to_string(y.size()));
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void add_outer(Matrix &m, double alpha, std::span<const double> x) {
  if (m.rows() != x.size() || m.cols() != x.size())
    throw DimensionError("add_outer: " + shape(m) + " with vector of " +
                         std::to_string(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    double ax = alpha * x[i];
    if (ax != 0.0) axpy(ax, x, m.row(i));
  }
}

double trace(const Matrix &a) {
  require_square(a, "trace");
  double t = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

double frobenius_norm(const Matrix &a) { return norm2(a.data()); }

double max_abs(const Matrix &a) {
  double m = 0.0;
  for (double x : a.data()) m = std::max(m, std::abs(x));
  return m;
}

double max_abs_diff(const Matrix &a, const Matrix &b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  auto da = a.data(), db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i)
    m = std::max(m, std::abs(da[i] - db[i]));
  return m;
}

bool is_symmetric(const Matrix &a, double rel_tol) {
  if (a.rows() != a.cols()) return false;
  double scale = std::max(1e-300, max_abs(a));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      if (std::abs(a(i, j) - a(j, i)) > rel_tol * scale) return false;
  return true;
}

Matrix symmetrize(const Matrix &a) {
  require_square(a, "symmetrize");
  Matrix s(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      s(i, j) = 0.5 * (a(i, j) + a(j, i));
  return s;
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

EigenResult sym_eig(const Matrix &input) {
  require_square(input, "sym_eig");
  if (!is_symmetric(input, kSymmetryTol))
    throw DimensionError("sym_eig: matrix is not symmetric");
  if (!all_finite(input.data()))
    throw NumericalError("sym_eig: non-finite entries");

  const std::size_t n = input.rows();
  Matrix a = symmetrize(input);
  Matrix v = Matrix::identity(n);
  const double target = kJacobiTol * frobenius_norm(a);

  auto off_norm = [&]() {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  int sweep = 0;
  for (; off_norm() > target; ++sweep) {
    if (sweep == kMaxJacobiSweeps)
      throw NumericalError("sym_eig: Jacobi iteration did not converge in " +
                           std::to_string(kMaxJacobiSweeps) + " sweeps");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double apq = a(p, q);
        if (apq == 0.0) continue;
        double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          double akp = a(k, p), akq = a(k, q);
          double nkp = c * akp - s * akq;
          double nkq = s * akp + c * akq;
          a(k, p) = a(p, k) = nkp;
          a(k, q) = a(q, k) = nkq;
        }
        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });
  EigenResult res{Vector(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    res.values[k] = a(order[k], order[k]);
    for (std::size_t r = 0; r < n; ++r) res.vectors(r, k) = v(r, order[k]);
  }
  return res;
}

Matrix cholesky(const Matrix &a) {
  require_square(a, "cholesky");
  const std::size_t n = a.rows();
  Matrix l(n, n);
  // Pivots at rounding level relative to the largest diagonal entry mean
  // the matrix is singular in floating point.
  double scale = 0.0;
  for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(j, j)));
  const double tiny = double(n) * std::numeric_limits<double>::epsilon() * scale;
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > tiny) || !std::isfinite(d))
      throw NotPositiveDefiniteError("cholesky: non-positive pivot " +
                                     std::to_string(d) + " at index " +
                                     std::to_string(j));
    double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / ljj;
    }
  }
  return l;
}

namespace {

// Solves L L^T x = b in place, column by column of b.
void cholesky_solve_inplace(const Matrix &l, Matrix &b) {
  const std::size_t n = l.rows();
  for (std::size_t c = 0; c < b.cols(); ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = b(i, c);
      for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * b(k, c);
      b(i, c) = s / l(i, i);
    }
    for (std::size_t i = n; i-- > 0;) {
      double s = b(i, c);
      for (std::size_t k = i + 1; k < n; ++k) s -= l(k, i) * b(k, c);
      b(i, c) = s / l(i, i);
    }
  }
}

}  // namespace

Matrix spd_solve(const Matrix &a, const Matrix &b) {
  require_square(a, "spd_solve");
  if (b.rows() != a.rows())
    throw DimensionError("spd_solve: " + shape(a) + " vs rhs " + shape(b));
  Matrix l = cholesky(a);
  Matrix x = b;
  cholesky_solve_inplace(l, x);
  return x;
}

Vector spd_solve(const Matrix &a, std::span<const double> b) {
  Matrix x = spd_solve(a, Matrix(b.size(), 1, Vector(b.begin(), b.end())));
  return Vector(x.data().begin(), x.data().end());
}

Matrix invert_lower(const Matrix &l) {
  require_square(l, "invert_lower");
  const std::size_t n = l.rows();
  Matrix inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    if (l(j, j) == 0.0) throw NumericalError("invert_lower: zero diagonal");
    inv(j, j) = 1.0 / l(j, j);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = 0.0;
      for (std::size_t k = j; k < i; ++k) s -= l(i, k) * inv(k, j);
      inv(i, j) = s / l(i, i);
    }
  }
  return inv;
}

Matrix spd_inverse(const Matrix &a) {
  Matrix linv = invert_lower(cholesky(a));
  return symmetrize(mul_tn(linv, linv));
}

double spd_logdet(const Matrix &a) {
  Matrix l = cholesky(a);
  double s = 0.0;
  for (std::size_t i = 0; i < l.rows(); ++i) s += std::log(l(i, i));
  return 2.0 * s;
}

}  // namespace ivcomp
