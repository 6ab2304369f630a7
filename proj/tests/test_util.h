// tests/test_util.h

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

#ifndef IVCOMP_TESTS_TEST_UTIL_H_
#define IVCOMP_TESTS_TEST_UTIL_H_

#include <filesystem>
#include <random>
#include <string>

#include "ivcomp/linalg.h"

namespace ivcomp::testing {

inline Matrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64 &rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix m(r, c);
  for (double &x : m.data()) x = n(rng);
  return m;
}

inline Vector random_vector(std::size_t n, std::mt19937_64 &rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vector v(n);
  for (double &x : v) x = g(rng);
  return v;
}

inline Matrix random_symmetric(std::size_t n, std::mt19937_64 &rng) {
  return symmetrize(random_matrix(n, n, rng));
}

// G G^T + n I: comfortably conditioned.
inline Matrix random_spd(std::size_t n, std::mt19937_64 &rng) {
  Matrix g = random_matrix(n, n, rng);
  Matrix a = mul_nt(g, g);
  for (std::size_t i = 0; i < n; ++i) a(i, i) += double(n);
  return symmetrize(a);
}

inline double rel_frobenius(const Matrix &a, const Matrix &ref) {
  return frobenius_norm(a - ref) / frobenius_norm(ref);
}

/// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string &name) {
  auto p = std::filesystem::temp_directory_path() / ("ivcomp-test-" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace ivcomp::testing

#endif  // IVCOMP_TESTS_TEST_UTIL_H_
