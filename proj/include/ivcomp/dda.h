// ivcomp/dda.h

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

// Deep discriminant analysis: a small feed-forward network trained with
// softmax loss plus a center loss, used as a nonlinear compensation
// transform. Layer order:
//
//   input -> linear -> PReLU -> linear -> PReLU -> BatchNorm
//         -> linear (embedding) -> linear (classifier logits)
//
// The embedding layer output is the compensated vector; the classifier is
// only used in training. All gradients are computed by hand.

#ifndef IVCOMP_DDA_H_
#define IVCOMP_DDA_H_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ivcomp/dataset.h"
#include "ivcomp/linalg.h"

namespace ivcomp {

struct DdaArchitecture {
  std::size_t input_dim = 600;
  std::size_t hidden_dim = 600;
  std::size_t embed_dim = 300;
  std::size_t n_classes = 2;

  void validate() const;
  bool operator==(const DdaArchitecture &) const = default;
};

struct Linear {
  Matrix weight;  // out x in
  Vector bias;    // out
};

/// Every trainable tensor. Also used to hold their gradients.
struct DdaParams {
  Linear layer1;
  Vector prelu1;  // one slope per hidden unit
  Linear layer2;
  Vector prelu2;
  Vector bn_scale;
  Vector bn_shift;
  Linear embed;
  Linear classifier;

  /// Named views of every tensor, in a fixed order.
  std::vector<std::pair<std::string, std::span<double>>> tensors();
  std::vector<std::pair<std::string, std::span<const double>>> tensors() const;
  /// Same shapes, all zeros.
  DdaParams zeros_like() const;
};

enum class DdaMode { kTrain, kInfer };

struct DdaModel {
  DdaArchitecture arch;
  DdaParams params;
  Vector running_mean;
  Vector running_var;
  double bn_epsilon = 1e-5;
  double bn_decay = 0.9;
  Matrix centers;  // n_classes x embed_dim
  DdaMode mode = DdaMode::kTrain;
  // Bumped whenever params change through apply_sgd; guards stale caches.
  std::uint64_t version = 0;
};

/// He-style Gaussian weights (std sqrt(2 / fan_in)), zero biases, PReLU
/// slopes 0.25, BatchNorm scale 1 and shift 0, running stats (0, 1),
/// zero centers. Returned in train mode.
DdaModel init_dda_model(const DdaArchitecture &arch, std::uint64_t seed);

/// Intermediate activations of one forward pass.
struct ForwardCache {
  DdaMode mode = DdaMode::kInfer;
  std::uint64_t model_version = 0;
  std::uint64_t batch_checksum = 0;
  Matrix input;
  Matrix z1, a1;     // layer1 pre/post activation
  Matrix z2, a2;     // layer2 pre/post activation
  Vector bn_mean;    // statistics used for normalization
  Vector bn_inv_std;
  Matrix xhat;       // normalized a2
  Matrix bn_out;
  Matrix embeddings;
  Matrix logits;
};

/// Train mode normalizes with batch statistics and folds them into the
/// running averages; it needs at least two rows (BatchStatisticsError
/// otherwise). Infer mode uses the running statistics and leaves the model
/// untouched, so each row's output is independent of the rest of the batch.
ForwardCache forward(DdaModel &model, const Matrix &batch, DdaMode mode);
ForwardCache forward_infer(const DdaModel &model, const Matrix &batch);

struct LossBreakdown {
  double total = 0.0;
  double softmax = 0.0;
  double center = 0.0;
};

/// Batch-averaged losses:
///   softmax = mean_i -log softmax(logits_i)[label_i]
///   center  = 1/2 mean_i |embedding_i - center_{label_i}|^2
///   total   = softmax + lambda * center
/// Throws LabelError for a label outside [0, classes).
LossBreakdown compute_loss(const Matrix &logits, const Matrix &embeddings,
                           std::span<const std::size_t> labels,
                           const Matrix &centers, double lambda);

struct Gradients {
  DdaParams params;
  Matrix input;
};

/// Exact gradients of compute_loss(...).total with respect to every
/// trainable parameter and the input, including the BatchNorm
/// batch-statistics terms. Centers are treated as constants.
/// Throws CacheError unless `cache` came from a train-mode forward of this
/// batch on the current parameters.
Gradients backward(const DdaModel &model, const Matrix &batch,
                   std::span<const std::size_t> labels, const ForwardCache &cache,
                   double lambda);

/// params -= lr * grad; bumps model.version.
void apply_sgd(DdaModel &model, const DdaParams &grad, double lr);

/// For each class j present in the batch:
///   c_j <- (1 - alpha) c_j + alpha * mean of its batch embeddings.
/// Absent classes keep their centers.
void update_centers(Matrix &centers, const Matrix &embeddings,
                    std::span<const std::size_t> labels, double alpha);

enum class LrSchedule { kConstant, kStepDecay };

struct TrainConfig {
  double lambda = 0.01;
  double lr = 0.01;
  double center_lr = 0.1;
  std::size_t batch_size = 256;
  std::size_t epochs = 50;
  std::uint64_t seed = 1;
  LrSchedule lr_schedule = LrSchedule::kConstant;
  // Step decay: lr * decay_gamma^(epoch / decay_step).
  std::size_t decay_step = 10;
  double decay_gamma = 0.5;
  // 0 gives plain SGD.
  double momentum = 0.0;

  void validate() const;
  double lr_at(std::size_t epoch) const;
};

struct DdaTrainResult {
  DdaModel model;
  std::vector<LossBreakdown> history;  // per-epoch means
};

/// Mini-batch SGD, reshuffling every epoch. Each step runs forward, loss,
/// backward, parameter update and then the center update. A trailing batch
/// of one sample is skipped. The returned model is in infer mode.
DdaTrainResult train_dda(
    const LabeledCorpus &corpus, const DdaArchitecture &arch, const TrainConfig &cfg,
    const std::function<void(std::size_t, const LossBreakdown &)> &on_epoch = {});

/// Embedding-layer output of an infer-mode singleton forward pass.
/// Throws ModeError for a train-mode model.
Embedding compensate(const DdaModel &model, std::span<const double> x);

void write_dda(const DdaModel &model, std::ostream &os, bool include_centers = true);
DdaModel read_dda(std::istream &is);

const char *to_string(LrSchedule s);
LrSchedule parse_lr_schedule(const std::string &s);

}  // namespace ivcomp

#endif  // IVCOMP_DDA_H_
