// ivcomp/plda.h

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

#ifndef IVCOMP_PLDA_H_
#define IVCOMP_PLDA_H_

#include <iosfwd>
#include <span>
#include <vector>

#include "ivcomp/dataset.h"
#include "ivcomp/linalg.h"

namespace ivcomp {

/// Two-covariance PLDA. Each speaker has a latent offset
///   v ~ N(0, between)
/// and each of its utterances is drawn as x ~ N(mean + v, within).
///
/// The model is stored in the simultaneously diagonalized space: with
/// u = diagonalizer * (x - mean), the within-speaker covariance is I and
/// the between-speaker covariance is diag(psi), psi sorted descending.
struct PldaModel {
  Embedding mean;
  Matrix diagonalizer;
  Vector psi;

  std::size_t dim() const { return mean.size(); }
  /// diagonalizer * (x - mean)
  Vector transform(std::span<const double> x) const;
};

/// Marginal log-likelihood of the training data, one entry for the
/// initial parameters and one after each EM iteration.
struct EmTrace {
  std::vector<double> log_likelihood;
};

struct PldaFit {
  PldaModel model;
  EmTrace trace;
  Matrix within;   // in input space
  Matrix between;  // in input space
};

/// Per-speaker sufficient statistics: centered class means, counts and the
/// pooled scatter around the class means.
struct PldaStats {
  std::size_t dim = 0;
  Embedding mean;
  std::vector<Embedding> class_means;  // centered by `mean`
  std::vector<std::size_t> class_counts;
  Matrix offset_scatter;
  std::size_t total = 0;
};

PldaStats plda_stats(const LabeledCorpus &corpus);

/// Exact log p(data | mean, within, between), summed over speakers.
double plda_log_likelihood(const PldaStats &stats, const Matrix &within,
                           const Matrix &between);

/// EM for the two-covariance model. The mean is fixed to the sample mean;
/// within and between both start at half the total covariance.
///
/// Throws DegenerateInputError for fewer than two speakers,
/// IdentifiabilityError when no speaker has two or more utterances and
/// NumericalError if a covariance collapses.
PldaFit fit_plda(const LabeledCorpus &corpus, std::size_t iters = 10);

/// Simultaneous diagonalization of (within, between).
PldaModel make_plda_model(const Embedding &mean, const Matrix &within,
                          const Matrix &between);

/// Recovers (within, between) in input space from a stored model.
std::pair<Matrix, Matrix> plda_covariances(const PldaModel &model);

/// log p(test | same speaker as the n_enroll utterances averaging to
/// enroll_mean) - log p(test | different speaker).
double plda_score(const PldaModel &model, std::span<const double> enroll_mean,
                  std::size_t n_enroll, std::span<const double> test);

/// Same LLR for inputs already mapped by PldaModel::transform.
double plda_score_transformed(std::span<const double> psi,
                              std::span<const double> enroll, std::size_t n_enroll,
                              std::span<const double> test);

void write_plda(const PldaModel &model, std::ostream &os);
PldaModel read_plda(std::istream &is);

}  // namespace ivcomp

#endif  // IVCOMP_PLDA_H_
