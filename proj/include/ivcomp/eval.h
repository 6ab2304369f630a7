// ivcomp/eval.h

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

#ifndef IVCOMP_EVAL_H_
#define IVCOMP_EVAL_H_

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ivcomp/dataset.h"
#include "ivcomp/plda.h"

namespace ivcomp {

/// Averaged enrollment embedding and the number of utterances behind it.
struct EnrolledModel {
  Embedding mean;
  std::size_t count = 0;
};

/// Arithmetic mean. Throws DegenerateInputError for an empty list.
EnrolledModel enroll(std::span<const Embedding> embeddings);

enum class ScoreMethod { kCos, kEuc, kPlda };

/// Scoring back-end. The PLDA model is only needed (and only borrowed) for
/// kPlda; it must outlive the scorer.
struct Scorer {
  ScoreMethod method = ScoreMethod::kCos;
  const PldaModel *plda = nullptr;

  static Scorer cos() { return {ScoreMethod::kCos, nullptr}; }
  static Scorer euc() { return {ScoreMethod::kEuc, nullptr}; }
  static Scorer with_plda(const PldaModel &m) { return {ScoreMethod::kPlda, &m}; }
};

/// Higher means more likely the same speaker: cosine similarity, negated
/// Euclidean distance, or the PLDA log-likelihood ratio.
double score_pair(const Scorer &scorer, const EnrolledModel &enrolled,
                  std::span<const double> test);

struct ScoredTrials {
  std::vector<double> scores;
  std::vector<TrialLabel> labels;
};

/// Scores every trial in order. `jobs` > 1 splits the list across threads;
/// the result does not depend on it. Throws LookupError naming the first
/// unresolved model or test id.
ScoredTrials score_trials(const TrialList &trials,
                          const std::map<std::string, EnrolledModel> &models,
                          const std::map<std::string, Embedding> &tests,
                          const Scorer &scorer, std::size_t jobs = 1);

struct EvalReport {
  double eer_percent = 0.0;
  double eer_threshold = 0.0;
  std::size_t n_target = 0;
  std::size_t n_nontarget = 0;
};

struct RocPoint {
  double threshold;
  double far;  // fraction of nontargets scoring >= threshold
  double frr;  // fraction of targets scoring < threshold
};

/// Operating points at every distinct score, plus a final point above the
/// maximum score (threshold +inf, FAR 0, FRR 1).
std::vector<RocPoint> roc_points(const ScoredTrials &scored);

/// Equal error rate from the ROC: where FAR - FRR changes sign between two
/// adjacent operating points, both rates are linearly interpolated to the
/// crossing. Throws DegenerateInputError unless there is at least one
/// target and one nontarget, DimensionError on misaligned inputs.
EvalReport compute_eer(const ScoredTrials &scored);

/// Mean of a speaker's enrollment embeddings, keyed by speaker id.
std::map<std::string, EnrolledModel> enroll_speakers(const LabeledCorpus &enroll_corpus);
std::map<std::string, Embedding> index_embeddings(const LabeledCorpus &corpus);

/// `model_id utt_id score label` lines.
void write_scored_trials(const TrialList &trials, const ScoredTrials &scored,
                         const std::filesystem::path &path);

const char *to_string(ScoreMethod m);
ScoreMethod parse_score_method(const std::string &s);

}  // namespace ivcomp

#endif  // IVCOMP_EVAL_H_
