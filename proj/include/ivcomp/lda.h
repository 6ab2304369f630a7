// ivcomp/lda.h

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

#ifndef IVCOMP_LDA_H_
#define IVCOMP_LDA_H_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>

#include "ivcomp/dataset.h"
#include "ivcomp/linalg.h"

namespace ivcomp {

/// Between- and within-class covariances, both normalized by the total
/// utterance count N; the between-class term weights each class-mean outer
/// product by that class's count.
struct ScatterStats {
  Matrix s_b;
  Matrix s_w;
  Embedding global_mean;
  std::map<std::string, Embedding> class_means;
  std::map<std::string, std::size_t> class_counts;
  std::size_t total = 0;
};

ScatterStats scatter_stats(const LabeledCorpus &corpus);

/// 1e-6 * trace(s_w) / dim.
double default_ridge(const ScatterStats &stats);

struct LdaModel {
  Matrix projection;  // input_dim x out_dim
  Embedding global_mean;
  Vector eigenvalues;  // descending
  double ridge = 0.0;

  std::size_t input_dim() const { return projection.rows(); }
  std::size_t output_dim() const { return projection.cols(); }
};

/// Fits W maximizing between-class over within-class scatter: the top
/// out_dim generalized eigenvectors of (s_b, s_w + ridge*I), found by
/// Cholesky whitening of the regularized s_w followed by sym_eig. Columns
/// are normalized so that W^T (s_w + ridge*I) W = I and signed so the
/// first nonzero entry is positive. `ridge` defaults to default_ridge().
///
/// Throws SingularityError when s_w + ridge*I is not positive definite,
/// ConfigError when out_dim is 0 or exceeds the input dimension, and
/// DegenerateInputError for fewer than two speakers.
LdaModel fit_lda(const LabeledCorpus &corpus, std::size_t out_dim,
                 std::optional<double> ridge = std::nullopt);

/// y = W^T (x - mean).
Embedding lda_transform(const LdaModel &model, std::span<const double> x);

void write_lda(const LdaModel &model, std::ostream &os);
LdaModel read_lda(std::istream &is);

}  // namespace ivcomp

#endif  // IVCOMP_LDA_H_
