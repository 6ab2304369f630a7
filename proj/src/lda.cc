// src/lda.cc

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

#include "ivcomp/lda.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

#include "ivcomp/error.h"
#include "ivcomp/textio.h"

namespace ivcomp {

ScatterStats scatter_stats(const LabeledCorpus &corpus) {
  if (corpus.empty()) throw DegenerateInputError("scatter_stats: empty corpus");
  const std::size_t d = corpus.dim();
  const std::size_t n = corpus.size();
  ScatterStats st;
  st.total = n;
  st.global_mean.assign(d, 0.0);
  for (const auto &u : corpus.items()) axpy(1.0 / n, u.embedding, st.global_mean);

  st.s_b = Matrix(d, d);
  st.s_w = Matrix(d, d);
  Vector diff(d);
  for (const auto &group : corpus.groups()) {
    const std::string &spk = corpus[group.front()].speaker;
    Embedding mean(d, 0.0);
    for (std::size_t i : group) axpy(1.0 / group.size(), corpus[i].embedding, mean);
    for (std::size_t i : group) {
      for (std::size_t k = 0; k < d; ++k) diff[k] = corpus[i].embedding[k] - mean[k];
      add_outer(st.s_w, 1.0 / n, diff);
    }
    for (std::size_t k = 0; k < d; ++k) diff[k] = mean[k] - st.global_mean[k];
    add_outer(st.s_b, double(group.size()) / n, diff);
    st.class_means.emplace(spk, std::move(mean));
    st.class_counts.emplace(spk, group.size());
  }
  return st;
}

double default_ridge(const ScatterStats &stats) {
  return 1e-6 * trace(stats.s_w) / double(stats.s_w.rows());
}

LdaModel fit_lda(const LabeledCorpus &corpus, std::size_t out_dim,
                 std::optional<double> ridge) {
  if (corpus.num_speakers() < 2)
    throw DegenerateInputError("fit_lda: need at least 2 speakers, got " +
                               std::to_string(corpus.num_speakers()));
  const std::size_t d = corpus.dim();
  if (out_dim == 0 || out_dim > d)
    throw ConfigError("fit_lda: out_dim " + std::to_string(out_dim) +
                      " not in [1, " + std::to_string(d) + "]");
  ScatterStats st = scatter_stats(corpus);
  const double r = ridge.value_or(default_ridge(st));
  if (!(r >= 0.0)) throw ConfigError("fit_lda: ridge must be >= 0");

  Matrix sw = st.s_w;
  for (std::size_t i = 0; i < d; ++i) sw(i, i) += r;
  Matrix l;
  try {
    l = cholesky(sw);
  } catch (const NotPositiveDefiniteError &) {
    throw SingularityError(
        "fit_lda: within-class scatter plus ridge " + std::to_string(r) +
        " is not positive definite; increase the ridge");
  }
  Matrix linv = invert_lower(l);
  // Whitened between-class scatter L^-1 S_b L^-T.
  Matrix m = symmetrize(linv * mul_nt(st.s_b, linv));
  EigenResult eig = sym_eig(m);

  // W = L^-T U, keeping the leading columns.
  Matrix w_full = mul_tn(linv, eig.vectors);
  LdaModel model;
  model.projection = Matrix(d, out_dim);
  model.eigenvalues.assign(eig.values.begin(), eig.values.begin() + out_dim);
  model.global_mean = st.global_mean;
  model.ridge = r;
  for (std::size_t c = 0; c < out_dim; ++c) {
    double scale = 0.0;
    for (std::size_t k = 0; k < d; ++k) scale = std::max(scale, std::abs(w_full(k, c)));
    double sign = 1.0;
    for (std::size_t k = 0; k < d; ++k) {
      if (std::abs(w_full(k, c)) > 1e-9 * scale) {
        sign = w_full(k, c) > 0 ? 1.0 : -1.0;
        break;
      }
    }
    for (std::size_t k = 0; k < d; ++k) model.projection(k, c) = sign * w_full(k, c);
  }
  return model;
}

Embedding lda_transform(const LdaModel &model, std::span<const double> x) {
  if (x.size() != model.input_dim())
    throw DimensionError("lda_transform: input has dimension " +
                         std::to_string(x.size()) + ", model expects " +
                         std::to_string(model.input_dim()));
  Vector centered(x.begin(), x.end());
  axpy(-1.0, model.global_mean, centered);
  return mul_t(model.projection, centered);
}

void write_lda(const LdaModel &model, std::ostream &os) {
  os << "ivcomp-lda 1\n";
  os << "dims " << model.input_dim() << ' ' << model.output_dim() << '\n';
  os << "ridge " << format_double(model.ridge) << '\n';
  write_vector(os, "mean", model.global_mean);
  write_vector(os, "eigenvalues", model.eigenvalues);
  write_matrix(os, "projection", model.projection);
}

LdaModel read_lda(std::istream &is) {
  TokenReader in(is);
  in.expect("ivcomp-lda");
  in.expect("1");
  in.expect("dims");
  std::size_t h = in.next_count("dims"), l = in.next_count("dims");
  LdaModel m;
  in.expect("ridge");
  m.ridge = in.next_double("ridge");
  m.global_mean = in.next_vector("mean");
  m.eigenvalues = in.next_vector("eigenvalues");
  m.projection = in.next_matrix("projection");
  if (m.projection.rows() != h || m.projection.cols() != l ||
      m.global_mean.size() != h || m.eigenvalues.size() != l)
    throw FormatError("lda model: inconsistent dimensions");
  return m;
}

}  // namespace ivcomp
