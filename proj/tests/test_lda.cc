// tests/test_lda.cc

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
#include <sstream>

#include "doctest.h"
#include "ivcomp/error.h"
#include "ivcomp/lda.h"
#include "test_util.h"

using namespace ivcomp;
using ivcomp::testing::random_matrix;
using ivcomp::testing::random_vector;

namespace {

// Speakers with random means and Gaussian noise.
LabeledCorpus random_corpus(std::size_t dim, std::size_t speakers, std::size_t utts,
                            std::uint64_t seed, double spread = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  LabeledCorpus c(dim);
  for (std::size_t s = 0; s < speakers; ++s) {
    Vector mean = random_vector(dim, rng);
    for (std::size_t u = 0; u < utts; ++u) {
      Embedding e = mean;
      for (double &x : e) x = spread * x + n(rng) * 0.5;
      c.add("s" + std::to_string(s), "s" + std::to_string(s) + "-" + std::to_string(u), e);
    }
  }
  return c;
}

// Scatter matrices by the textbook double loop, independent of the library.
void naive_scatter(const LabeledCorpus &c, Matrix &sb, Matrix &sw) {
  const std::size_t d = c.dim(), n = c.size();
  std::vector<double> mu(d, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < d; ++k) mu[k] += c[i].embedding[k] / n;
  sb = Matrix(d, d);
  sw = Matrix(d, d);
  for (const auto &spk : c.speakers()) {
    std::vector<double> ms(d, 0.0);
    std::size_t ns = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (c[i].speaker == spk) {
        ++ns;
        for (std::size_t k = 0; k < d; ++k) ms[k] += c[i].embedding[k];
      }
    for (double &x : ms) x /= ns;
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) {
        sb(a, b) += double(ns) / n * (ms[a] - mu[a]) * (ms[b] - mu[b]);
        for (std::size_t i = 0; i < n; ++i)
          if (c[i].speaker == spk)
            sw(a, b) += (c[i].embedding[a] - ms[a]) * (c[i].embedding[b] - ms[b]) / n;
      }
  }
}

double abs_cosine(std::span<const double> a, std::span<const double> b) {
  return std::abs(dot(a, b)) / (norm2(a) * norm2(b));
}

}  // namespace

TEST_CASE("scatter_stats of a single speaker has zero between scatter") {
  LabeledCorpus c = random_corpus(4, 1, 6, 1);
  ScatterStats st = scatter_stats(c);
  CHECK(max_abs(st.s_b) < 1e-15);
  CHECK(st.total == 6);
  CHECK(st.class_counts.at("s0") == 6);
}

TEST_CASE("scatter_stats of two opposite points") {
  LabeledCorpus c(3);
  c.add("a", "a1", {1.0, 0.0, 0.0});
  c.add("b", "b1", {-1.0, 0.0, 0.0});
  ScatterStats st = scatter_stats(c);
  Matrix e1(3, 3);
  e1(0, 0) = 1.0;
  CHECK(st.s_b == e1);
  CHECK(st.s_w == Matrix(3, 3));
  CHECK(st.global_mean == Embedding{0.0, 0.0, 0.0});
}

TEST_CASE("scatter_stats matches the naive double loop") {
  LabeledCorpus c(6);
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> spk(0, 4);
  for (int i = 0; i < 40; ++i)
    c.add("s" + std::to_string(spk(rng)), "u" + std::to_string(i), random_vector(6, rng));
  ScatterStats st = scatter_stats(c);
  Matrix sb, sw;
  naive_scatter(c, sb, sw);
  CHECK(max_abs_diff(st.s_b, sb) < 1e-12);
  CHECK(max_abs_diff(st.s_w, sw) < 1e-12);
  CHECK(is_symmetric(st.s_b, 1e-12));
  CHECK(is_symmetric(st.s_w, 1e-12));
  std::size_t sum = 0;
  for (const auto &[k, n] : st.class_counts) sum += n;
  CHECK(sum == st.total);
  // PSD and rank(s_b) <= S - 1.
  EigenResult eb = sym_eig(st.s_b), ew = sym_eig(st.s_w);
  CHECK(ew.values.back() > -1e-10);
  CHECK(eb.values.back() > -1e-10);
  for (std::size_t i = st.class_counts.size() - 1; i < 6; ++i)
    CHECK(std::abs(eb.values[i]) < 1e-12 * eb.values[0]);
}

TEST_CASE("scatter_stats rejects an empty corpus") {
  CHECK_THROWS_AS(scatter_stats(LabeledCorpus(3)), DegenerateInputError);
}

TEST_CASE("LDA whitens the regularized within scatter and diagonalizes the between scatter") {
  LabeledCorpus c = random_corpus(12, 20, 8, 3);
  LdaModel m = fit_lda(c, 12);
  ScatterStats st = scatter_stats(c);
  Matrix sw = st.s_w;
  for (std::size_t i = 0; i < 12; ++i) sw(i, i) += m.ridge;
  CHECK(m.ridge == doctest::Approx(default_ridge(st)));
  CHECK(max_abs_diff(mul_tn(m.projection, sw * m.projection), Matrix::identity(12)) < 1e-8);
  Matrix pb = mul_tn(m.projection, st.s_b * m.projection);
  double mx = 0.0;
  for (std::size_t i = 0; i < 12; ++i) mx = std::max(mx, pb(i, i));
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t j = 0; j < 12; ++j) {
      if (i == j)
        CHECK(pb(i, i) == doctest::Approx(m.eigenvalues[i]).epsilon(1e-9));
      else
        CHECK(std::abs(pb(i, j)) < 1e-8 * mx);
    }
  for (std::size_t i = 0; i + 1 < 12; ++i) CHECK(m.eigenvalues[i] >= m.eigenvalues[i + 1]);
}

TEST_CASE("first LDA direction is the Fisher direction for two classes") {
  std::mt19937_64 rng(4);
  const std::size_t d = 10;
  Matrix mix = random_matrix(d, d, rng);  // shared anisotropic covariance
  Vector mu1 = random_vector(d, rng), mu2 = random_vector(d, rng);
  LabeledCorpus c(d);
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 500; ++i) {
      Embedding e = mix * random_vector(d, rng);
      axpy(1.0, k == 0 ? mu1 : mu2, e);
      c.add(k == 0 ? "a" : "b", std::to_string(k) + "-" + std::to_string(i), e);
    }
  LdaModel m = fit_lda(c, 1);
  ScatterStats st = scatter_stats(c);
  Vector diff = st.class_means.at("a");
  axpy(-1.0, st.class_means.at("b"), diff);
  Vector fisher = spd_solve(st.s_w, diff);
  CHECK(abs_cosine(m.projection.col(0), fisher) > 0.999);
}

TEST_CASE("LDA finds at most C-1 discriminant directions") {
  LabeledCorpus c = random_corpus(20, 5, 30, 5);
  LdaModel m = fit_lda(c, 20);
  for (std::size_t i = 4; i < 20; ++i) CHECK(m.eigenvalues[i] < 1e-8 * m.eigenvalues[0]);
  CHECK(m.eigenvalues[3] > 1e-3 * m.eigenvalues[0]);
}

TEST_CASE("classes sharing one mean give no discriminant directions") {
  std::mt19937_64 rng(6);
  LabeledCorpus c(5);
  // Antithetic noise pairs keep every class mean exactly at the origin.
  for (int s = 0; s < 6; ++s)
    for (int i = 0; i < 10; ++i) {
      Vector v = random_vector(5, rng);
      Vector w = v;
      for (double &x : w) x = -x;
      c.add("s" + std::to_string(s), std::to_string(s) + "+" + std::to_string(i), v);
      c.add("s" + std::to_string(s), std::to_string(s) + "-" + std::to_string(i), w);
    }
  LdaModel m = fit_lda(c, 5);
  for (double v : m.eigenvalues) CHECK(std::abs(v) < 1e-6);
}

TEST_CASE("lda_transform examples") {
  LabeledCorpus c = random_corpus(6, 8, 5, 7);
  LdaModel m = fit_lda(c, 3);
  Embedding y = lda_transform(m, m.global_mean);
  REQUIRE(y.size() == 3);
  for (double v : y) CHECK(v == 0.0);

  LdaModel sel;
  sel.projection = Matrix(4, 2);
  sel.projection(0, 0) = 1.0;
  sel.projection(1, 1) = 1.0;
  sel.global_mean = Embedding(4, 0.0);
  sel.eigenvalues = {1.0, 1.0};
  double x[] = {7.0, -2.0, 3.0, 4.0};
  CHECK(lda_transform(sel, x) == Embedding{7.0, -2.0});

  std::mt19937_64 rng(8);
  Vector in = random_vector(6, rng);
  Embedding got = lda_transform(m, in);
  for (std::size_t j = 0; j < 3; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < 6; ++k) s += m.projection(k, j) * (in[k] - m.global_mean[k]);
    CHECK(std::abs(got[j] - s) < 1e-12);
  }
  double bad[] = {1.0, 2.0};
  CHECK_THROWS_AS(lda_transform(m, bad), DimensionError);
}

TEST_CASE("LDA is invariant to translation up to column sign") {
  LabeledCorpus c = random_corpus(8, 10, 6, 9);
  LabeledCorpus shifted = c.map([](const Embedding &e) {
    Embedding o = e;
    for (std::size_t k = 0; k < o.size(); ++k) o[k] += 3.0 + double(k);
    return o;
  });
  LdaModel a = fit_lda(c, 5), b = fit_lda(shifted, 5);
  for (std::size_t j = 0; j < 5; ++j) {
    CHECK(abs_cosine(a.projection.col(j), b.projection.col(j)) ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(a.eigenvalues[j] == doctest::Approx(b.eigenvalues[j]).epsilon(1e-9));
  }
}

TEST_CASE("renaming speakers leaves the model unchanged") {
  LabeledCorpus c = random_corpus(6, 7, 4, 10);
  LabeledCorpus renamed(6);
  for (const auto &u : c.items()) renamed.add("x" + u.speaker + "y", u.utterance, u.embedding);
  LdaModel a = fit_lda(c, 4), b = fit_lda(renamed, 4);
  CHECK(a.projection == b.projection);
  CHECK(a.eigenvalues == b.eigenvalues);
}

TEST_CASE("column signs follow the first nonzero entry") {
  LdaModel m = fit_lda(random_corpus(7, 9, 5, 11), 7);
  for (std::size_t j = 0; j < 7; ++j) {
    Vector col = m.projection.col(j);
    for (double v : col)
      if (v != 0.0) {
        CHECK(v > 0.0);
        break;
      }
  }
}

TEST_CASE("fit_lda errors") {
  LabeledCorpus one = random_corpus(4, 1, 5, 12);
  CHECK_THROWS_AS(fit_lda(one, 2), DegenerateInputError);
  LabeledCorpus c = random_corpus(4, 3, 5, 12);
  CHECK_THROWS_AS(fit_lda(c, 5), ConfigError);
  CHECK_THROWS_AS(fit_lda(c, 0), ConfigError);
  CHECK_THROWS_AS(fit_lda(c, 2, -1.0), ConfigError);
  // More dimensions than samples with no ridge: singular within scatter.
  LabeledCorpus small = random_corpus(10, 2, 2, 13);
  CHECK_THROWS_AS(fit_lda(small, 1, 0.0), SingularityError);
  CHECK_NOTHROW(fit_lda(small, 1, 1e-3));
}

TEST_CASE("LDA model text round trip") {
  LdaModel m = fit_lda(random_corpus(5, 6, 4, 14), 3);
  std::stringstream ss;
  write_lda(m, ss);
  LdaModel back = read_lda(ss);
  CHECK(back.projection == m.projection);
  CHECK(back.global_mean == m.global_mean);
  CHECK(back.eigenvalues == m.eigenvalues);
  CHECK(back.ridge == m.ridge);
  std::stringstream bad("ivcomp-lda 1\ndims 2 1\nridge 0\nmean 3 1 2 3\n");
  CHECK_THROWS_AS(read_lda(bad), Error);
}
