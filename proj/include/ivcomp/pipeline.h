// ivcomp/pipeline.h

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

// Glue shared by the command-line tool, the Python module and the
// acceptance tests: compensation back-ends behind one interface, model
// files, the method x scorer evaluation grid and embedding statistics.

#ifndef IVCOMP_PIPELINE_H_
#define IVCOMP_PIPELINE_H_

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ivcomp/dataset.h"
#include "ivcomp/dda.h"
#include "ivcomp/eval.h"
#include "ivcomp/lda.h"
#include "ivcomp/plda.h"

namespace ivcomp {

enum class Method { kNone, kLda, kDda };

const char *to_string(Method m);
Method parse_method(const std::string &s);

/// A fitted compensation transform (or the identity).
class Compensator {
 public:
  Compensator() = default;
  explicit Compensator(LdaModel m) : model_(std::move(m)) {}
  explicit Compensator(DdaModel m) : model_(std::move(m)) {}

  Method method() const;
  Embedding apply(std::span<const double> x) const;
  LabeledCorpus apply(const LabeledCorpus &corpus) const;

  const LdaModel *lda() const { return std::get_if<LdaModel>(&model_); }
  const DdaModel *dda() const { return std::get_if<DdaModel>(&model_); }

 private:
  std::variant<std::monostate, LdaModel, DdaModel> model_;
};

using AnyModel = std::variant<LdaModel, PldaModel, DdaModel>;

void save_model(const AnyModel &model, const std::filesystem::path &path);
/// Dispatches on the header line of the file.
AnyModel load_model(const std::filesystem::path &path);
Compensator load_compensator(Method method, const std::filesystem::path &path);

struct BackendOptions {
  // Output dimension of LDA and of the DDA embedding layer.
  std::size_t out_dim = 300;
  std::optional<double> lda_ridge;
  std::size_t plda_iters = 10;
  // 0 means "same as the input dimension".
  std::size_t dda_hidden = 0;
  TrainConfig dda;
  std::size_t jobs = 1;
};

using LogFn = std::function<void(const std::string &)>;

/// Fits the compensation transform on an already length-normalized corpus.
Compensator train_compensator(Method method, const LabeledCorpus &train,
                              const BackendOptions &opts, const LogFn &log = {});

/// Compensated enrollment/test embeddings, ready to score.
struct EvalSet {
  std::map<std::string, EnrolledModel> models;
  std::map<std::string, Embedding> tests;
};

EvalSet prepare_eval_set(const Compensator &comp, const LabeledCorpus &enroll,
                         const LabeledCorpus &test);

struct EvalOutcome {
  EvalReport report;
  ScoredTrials scored;
};

/// Scores a trial list. `plda` is required for ScoreMethod::kPlda and must
/// live in the compensated space.
EvalOutcome evaluate(const EvalSet &set, const TrialList &trials, ScoreMethod scorer,
                     const PldaModel *plda, std::size_t jobs = 1);

struct GridCell {
  Method method;
  ScoreMethod scorer;
  std::size_t dim;  // embedding dimension scored
  EvalReport report;
};

/// Every method in `methods` crossed with cos, euc and plda. PLDA back-ends
/// are fitted on the compensated training corpus. Inputs must already be
/// length-normalized. `given` supplies pre-trained compensators by method.
std::vector<GridCell> run_grid(const LabeledCorpus &train, const LabeledCorpus &enroll,
                               const LabeledCorpus &test, const TrialList &trials,
                               const BackendOptions &opts,
                               const std::vector<Method> &methods,
                               const std::map<Method, Compensator> &given = {},
                               const LogFn &log = {});

/// LDA and DDA at each output dimension, scored by cos and euc.
std::vector<GridCell> run_dim_sweep(const LabeledCorpus &train,
                                    const LabeledCorpus &enroll,
                                    const LabeledCorpus &test, const TrialList &trials,
                                    const BackendOptions &opts,
                                    const std::vector<std::size_t> &dims,
                                    const LogFn &log = {});

/// Pairwise Euclidean distance statistics of a labeled embedding set.
struct DistanceStats {
  std::map<std::string, double> within_by_speaker;  // mean same-speaker pair distance
  double within_mean = 0.0;    // over all same-speaker pairs
  double between_mean = 0.0;   // over all different-speaker pairs
  double centroid_between_mean = 0.0;  // over pairs of speaker means
  double ratio() const { return within_mean / between_mean; }
};

DistanceStats distance_stats(const LabeledCorpus &corpus);

/// Mean squared distance of each embedding to its speaker mean.
double within_class_variance(const LabeledCorpus &corpus);

std::string format_report(const EvalReport &r, const std::string &method,
                          const std::string &scorer);
std::string format_grid(const std::vector<GridCell> &cells);
std::string format_dim_sweep(const std::vector<GridCell> &cells);
std::string grid_json(const std::vector<GridCell> &cells);
void write_distance_stats(const DistanceStats &s, const std::filesystem::path &path);

/// Writes the compensated corpus (`speaker_id utt_id v1 .. vD`) to `dump`
/// and its distance statistics to `stats`.
DistanceStats export_embeddings(const Compensator &comp, const LabeledCorpus &corpus,
                                const std::filesystem::path &dump,
                                const std::filesystem::path &stats);

}  // namespace ivcomp

#endif  // IVCOMP_PIPELINE_H_
