// src/dda.cc

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

#include "ivcomp/dda.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>

#include "ivcomp/error.h"
#include "ivcomp/textio.h"

namespace ivcomp {

namespace {

std::uint64_t checksum(const Matrix &m) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  mix(m.rows());
  mix(m.cols());
  for (double x : m.data()) {
    std::uint64_t bits;
    std::memcpy(&bits, &x, sizeof(bits));
    mix(bits);
  }
  return h;
}

// y = x W^T + b, row by row.
Matrix affine(const Matrix &x, const Linear &layer) {
  Matrix y = mul_nt(x, layer.weight);
  for (std::size_t r = 0; r < y.rows(); ++r) axpy(1.0, layer.bias, y.row(r));
  return y;
}

Matrix prelu(const Matrix &z, const Vector &slope) {
  Matrix a = z;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto row = a.row(r);
    for (std::size_t c = 0; c < row.size(); ++c)
      if (row[c] <= 0.0) row[c] *= slope[c];
  }
  return a;
}

// Backprop through PReLU: returns dz, accumulates the slope gradient.
Matrix prelu_backward(const Matrix &z, const Vector &slope, const Matrix &da,
                      Vector &dslope) {
  Matrix dz = da;
  for (std::size_t r = 0; r < z.rows(); ++r) {
    for (std::size_t c = 0; c < z.cols(); ++c) {
      if (z(r, c) <= 0.0) {
        dslope[c] += da(r, c) * z(r, c);
        dz(r, c) = da(r, c) * slope[c];
      }
    }
  }
  return dz;
}

// Backprop through y = x W^T + b.
Matrix affine_backward(const Matrix &x, const Linear &layer, const Matrix &dy,
                       Linear &grad) {
  grad.weight = mul_tn(dy, x);
  grad.bias.assign(dy.cols(), 0.0);
  for (std::size_t r = 0; r < dy.rows(); ++r) axpy(1.0, dy.row(r), grad.bias);
  return dy * layer.weight;
}

Linear init_linear(std::size_t in, std::size_t out, std::mt19937_64 &rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(2.0 / double(in)));
  Linear l{Matrix(out, in), Vector(out, 0.0)};
  for (double &w : l.weight.data()) w = normal(rng);
  return l;
}

Linear zeros_like(const Linear &l) {
  return {Matrix(l.weight.rows(), l.weight.cols()), Vector(l.bias.size(), 0.0)};
}

void check_batch(const DdaModel &model, const Matrix &batch) {
  if (batch.rows() == 0) throw DimensionError("dda: empty batch");
  if (batch.cols() != model.arch.input_dim)
    throw DimensionError("dda: batch has dimension " + std::to_string(batch.cols()) +
                         ", model expects " + std::to_string(model.arch.input_dim));
}

// Everything after the BatchNorm statistics are known.
void finish_forward(const DdaModel &model, ForwardCache &c) {
  const auto &p = model.params;
  c.xhat = c.a2;
  c.bn_out = c.a2;
  for (std::size_t r = 0; r < c.a2.rows(); ++r) {
    for (std::size_t k = 0; k < c.a2.cols(); ++k) {
      double xh = (c.a2(r, k) - c.bn_mean[k]) * c.bn_inv_std[k];
      c.xhat(r, k) = xh;
      c.bn_out(r, k) = p.bn_scale[k] * xh + p.bn_shift[k];
    }
  }
  c.embeddings = affine(c.bn_out, p.embed);
  c.logits = affine(c.embeddings, p.classifier);
}

ForwardCache forward_front(const DdaModel &model, const Matrix &batch, DdaMode mode) {
  check_batch(model, batch);
  ForwardCache c;
  c.mode = mode;
  c.model_version = model.version;
  c.input = batch;
  c.z1 = affine(batch, model.params.layer1);
  c.a1 = prelu(c.z1, model.params.prelu1);
  c.z2 = affine(c.a1, model.params.layer2);
  c.a2 = prelu(c.z2, model.params.prelu2);
  return c;
}

}  // namespace

void DdaArchitecture::validate() const {
  if (input_dim < 1 || hidden_dim < 1 || embed_dim < 1)
    throw ConfigError("dda: all layer dimensions must be >= 1");
  if (n_classes < 2) throw ConfigError("dda: n_classes must be >= 2");
}

std::vector<std::pair<std::string, std::span<double>>> DdaParams::tensors() {
  return {{"layer1.weight", layer1.weight.data()},
          {"layer1.bias", layer1.bias},
          {"prelu1", prelu1},
          {"layer2.weight", layer2.weight.data()},
          {"layer2.bias", layer2.bias},
          {"prelu2", prelu2},
          {"bn.scale", bn_scale},
          {"bn.shift", bn_shift},
          {"embed.weight", embed.weight.data()},
          {"embed.bias", embed.bias},
          {"classifier.weight", classifier.weight.data()},
          {"classifier.bias", classifier.bias}};
}

std::vector<std::pair<std::string, std::span<const double>>> DdaParams::tensors() const {
  auto views = const_cast<DdaParams *>(this)->tensors();
  return {views.begin(), views.end()};
}

DdaParams DdaParams::zeros_like() const {
  DdaParams z;
  z.layer1 = ivcomp::zeros_like(layer1);
  z.prelu1.assign(prelu1.size(), 0.0);
  z.layer2 = ivcomp::zeros_like(layer2);
  z.prelu2.assign(prelu2.size(), 0.0);
  z.bn_scale.assign(bn_scale.size(), 0.0);
  z.bn_shift.assign(bn_shift.size(), 0.0);
  z.embed = ivcomp::zeros_like(embed);
  z.classifier = ivcomp::zeros_like(classifier);
  return z;
}

DdaModel init_dda_model(const DdaArchitecture &arch, std::uint64_t seed) {
  arch.validate();
  std::mt19937_64 rng(seed);
  DdaModel m;
  m.arch = arch;
  auto &p = m.params;
  p.layer1 = init_linear(arch.input_dim, arch.hidden_dim, rng);
  p.prelu1.assign(arch.hidden_dim, 0.25);
  p.layer2 = init_linear(arch.hidden_dim, arch.hidden_dim, rng);
  p.prelu2.assign(arch.hidden_dim, 0.25);
  p.bn_scale.assign(arch.hidden_dim, 1.0);
  p.bn_shift.assign(arch.hidden_dim, 0.0);
  p.embed = init_linear(arch.hidden_dim, arch.embed_dim, rng);
  p.classifier = init_linear(arch.embed_dim, arch.n_classes, rng);
  m.running_mean.assign(arch.hidden_dim, 0.0);
  m.running_var.assign(arch.hidden_dim, 1.0);
  m.centers = Matrix(arch.n_classes, arch.embed_dim);
  m.mode = DdaMode::kTrain;
  return m;
}

ForwardCache forward_infer(const DdaModel &model, const Matrix &batch) {
  ForwardCache c = forward_front(model, batch, DdaMode::kInfer);
  c.bn_mean = model.running_mean;
  c.bn_inv_std.resize(model.running_var.size());
  for (std::size_t k = 0; k < c.bn_inv_std.size(); ++k)
    c.bn_inv_std[k] = 1.0 / std::sqrt(model.running_var[k] + model.bn_epsilon);
  finish_forward(model, c);
  return c;
}

ForwardCache forward(DdaModel &model, const Matrix &batch, DdaMode mode) {
  if (mode == DdaMode::kInfer) return forward_infer(model, batch);
  check_batch(model, batch);
  const std::size_t m = batch.rows();
  if (m < 2)
    throw BatchStatisticsError("dda: train-mode forward needs a batch of at least 2");
  ForwardCache c = forward_front(model, batch, mode);
  c.batch_checksum = checksum(batch);
  const std::size_t h = c.a2.cols();
  c.bn_mean.assign(h, 0.0);
  for (std::size_t r = 0; r < m; ++r) axpy(1.0 / double(m), c.a2.row(r), c.bn_mean);
  Vector var(h, 0.0);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k < h; ++k) {
      double d = c.a2(r, k) - c.bn_mean[k];
      var[k] += d * d / double(m);
    }
  c.bn_inv_std.resize(h);
  for (std::size_t k = 0; k < h; ++k)
    c.bn_inv_std[k] = 1.0 / std::sqrt(var[k] + model.bn_epsilon);
  finish_forward(model, c);

  const double decay = model.bn_decay;
  const double unbias = double(m) / double(m - 1);
  for (std::size_t k = 0; k < h; ++k) {
    model.running_mean[k] = decay * model.running_mean[k] + (1 - decay) * c.bn_mean[k];
    model.running_var[k] = decay * model.running_var[k] + (1 - decay) * var[k] * unbias;
  }
  return c;
}

namespace {

void check_labels(std::span<const std::size_t> labels, std::size_t rows,
                  std::size_t classes) {
  if (labels.size() != rows)
    throw DimensionError("dda: " + std::to_string(labels.size()) + " labels for " +
                         std::to_string(rows) + " rows");
  for (std::size_t y : labels)
    if (y >= classes)
      throw LabelError("dda: label " + std::to_string(y) + " outside [0, " +
                       std::to_string(classes) + ")");
}

// Row-wise softmax probabilities.
Matrix softmax(const Matrix &logits) {
  Matrix p = logits;
  for (std::size_t r = 0; r < p.rows(); ++r) {
    auto row = p.row(r);
    double mx = *std::max_element(row.begin(), row.end());
    double z = 0.0;
    for (double &v : row) z += (v = std::exp(v - mx));
    for (double &v : row) v /= z;
  }
  return p;
}

}  // namespace

LossBreakdown compute_loss(const Matrix &logits, const Matrix &embeddings,
                           std::span<const std::size_t> labels,
                           const Matrix &centers, double lambda) {
  const std::size_t m = logits.rows();
  if (m == 0) throw DimensionError("compute_loss: empty batch");
  if (embeddings.rows() != m)
    throw DimensionError("compute_loss: logits and embeddings row counts differ");
  if (centers.rows() != logits.cols() || centers.cols() != embeddings.cols())
    throw DimensionError("compute_loss: centers shape does not match");
  check_labels(labels, m, logits.cols());

  LossBreakdown loss;
  for (std::size_t r = 0; r < m; ++r) {
    auto row = logits.row(r);
    double mx = *std::max_element(row.begin(), row.end());
    double z = 0.0;
    for (double v : row) z += std::exp(v - mx);
    loss.softmax += (std::log(z) + mx - row[labels[r]]) / double(m);
    auto e = embeddings.row(r);
    auto c = centers.row(labels[r]);
    double sq = 0.0;
    for (std::size_t k = 0; k < e.size(); ++k) sq += (e[k] - c[k]) * (e[k] - c[k]);
    loss.center += 0.5 * sq / double(m);
  }
  loss.total = loss.softmax + lambda * loss.center;
  return loss;
}

Gradients backward(const DdaModel &model, const Matrix &batch,
                   std::span<const std::size_t> labels, const ForwardCache &cache,
                   double lambda) {
  if (cache.mode != DdaMode::kTrain)
    throw CacheError("dda backward: cache is not from a train-mode forward pass");
  if (cache.model_version != model.version)
    throw CacheError("dda backward: cache is stale (parameters changed)");
  if (cache.input.rows() != batch.rows() || cache.input.cols() != batch.cols() ||
      cache.batch_checksum != checksum(batch))
    throw CacheError("dda backward: cache was computed on a different batch");
  const std::size_t m = batch.rows();
  check_labels(labels, m, model.arch.n_classes);
  const auto &p = model.params;
  Gradients g;

  // Softmax: d/dlogits = (p - onehot) / m.
  Matrix dlogits = softmax(cache.logits);
  for (std::size_t r = 0; r < m; ++r) dlogits(r, labels[r]) -= 1.0;
  dlogits *= 1.0 / double(m);

  Matrix dembed = affine_backward(cache.embeddings, p.classifier, dlogits,
                                  g.params.classifier);
  // Center loss: d/de_i = lambda / m * (e_i - c_{y_i}).
  for (std::size_t r = 0; r < m; ++r) {
    auto de = dembed.row(r);
    auto e = cache.embeddings.row(r);
    auto c = model.centers.row(labels[r]);
    for (std::size_t k = 0; k < de.size(); ++k)
      de[k] += lambda / double(m) * (e[k] - c[k]);
  }

  Matrix dbn = affine_backward(cache.bn_out, p.embed, dembed, g.params.embed);

  // BatchNorm with batch statistics.
  const std::size_t h = dbn.cols();
  g.params.bn_scale.assign(h, 0.0);
  g.params.bn_shift.assign(h, 0.0);
  Vector sum_dxhat(h, 0.0), sum_dxhat_xhat(h, 0.0);
  Matrix dxhat(m, h);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k < h; ++k) {
      double dy = dbn(r, k);
      g.params.bn_scale[k] += dy * cache.xhat(r, k);
      g.params.bn_shift[k] += dy;
      double dx = dy * p.bn_scale[k];
      dxhat(r, k) = dx;
      sum_dxhat[k] += dx;
      sum_dxhat_xhat[k] += dx * cache.xhat(r, k);
    }
  Matrix da2(m, h);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k < h; ++k)
      da2(r, k) = cache.bn_inv_std[k] / double(m) *
                  (double(m) * dxhat(r, k) - sum_dxhat[k] -
                   cache.xhat(r, k) * sum_dxhat_xhat[k]);

  g.params.prelu2.assign(h, 0.0);
  Matrix dz2 = prelu_backward(cache.z2, p.prelu2, da2, g.params.prelu2);
  Matrix da1 = affine_backward(cache.a1, p.layer2, dz2, g.params.layer2);
  g.params.prelu1.assign(p.prelu1.size(), 0.0);
  Matrix dz1 = prelu_backward(cache.z1, p.prelu1, da1, g.params.prelu1);
  g.input = affine_backward(cache.input, p.layer1, dz1, g.params.layer1);
  return g;
}

void apply_sgd(DdaModel &model, const DdaParams &grad, double lr) {
  auto dst = model.params.tensors();
  auto src = grad.tensors();
  for (std::size_t t = 0; t < dst.size(); ++t) axpy(-lr, src[t].second, dst[t].second);
  ++model.version;
}

void update_centers(Matrix &centers, const Matrix &embeddings,
                    std::span<const std::size_t> labels, double alpha) {
  if (embeddings.cols() != centers.cols())
    throw DimensionError("update_centers: embedding/center dimensions differ");
  check_labels(labels, embeddings.rows(), centers.rows());
  Matrix sums(centers.rows(), centers.cols());
  std::vector<std::size_t> counts(centers.rows(), 0);
  for (std::size_t r = 0; r < embeddings.rows(); ++r) {
    axpy(1.0, embeddings.row(r), sums.row(labels[r]));
    ++counts[labels[r]];
  }
  for (std::size_t j = 0; j < centers.rows(); ++j) {
    if (counts[j] == 0) continue;
    auto c = centers.row(j);
    auto s = sums.row(j);
    for (std::size_t k = 0; k < c.size(); ++k)
      c[k] = (1.0 - alpha) * c[k] + alpha * (s[k] / double(counts[j]));
  }
}

void TrainConfig::validate() const {
  if (!(lambda >= 0)) throw ConfigError("dda: lambda must be >= 0");
  if (!(lr > 0)) throw ConfigError("dda: lr must be > 0");
  if (!(center_lr >= 0 && center_lr <= 1))
    throw ConfigError("dda: center_lr must be in [0, 1]");
  if (batch_size < 2) throw ConfigError("dda: batch_size must be >= 2");
  if (epochs < 1) throw ConfigError("dda: epochs must be >= 1");
  if (decay_step < 1) throw ConfigError("dda: decay_step must be >= 1");
  if (!(decay_gamma > 0)) throw ConfigError("dda: decay_gamma must be > 0");
  if (!(momentum >= 0 && momentum < 1)) throw ConfigError("dda: momentum must be in [0, 1)");
}

double TrainConfig::lr_at(std::size_t epoch) const {
  if (lr_schedule == LrSchedule::kConstant) return lr;
  return lr * std::pow(decay_gamma, double(epoch / decay_step));
}

DdaTrainResult train_dda(
    const LabeledCorpus &corpus, const DdaArchitecture &arch, const TrainConfig &cfg,
    const std::function<void(std::size_t, const LossBreakdown &)> &on_epoch) {
  arch.validate();
  cfg.validate();
  if (corpus.num_speakers() != arch.n_classes)
    throw ConfigError("dda: corpus has " + std::to_string(corpus.num_speakers()) +
                      " speakers but the architecture has " +
                      std::to_string(arch.n_classes) + " classes");
  if (corpus.dim() != arch.input_dim)
    throw ConfigError("dda: corpus dimension " + std::to_string(corpus.dim()) +
                      " does not match input_dim " + std::to_string(arch.input_dim));
  if (corpus.size() < 2) throw ConfigError("dda: need at least 2 training samples");

  DdaTrainResult result{init_dda_model(arch, cfg.seed), {}};
  DdaModel &model = result.model;
  std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ull);
  std::vector<std::size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), 0);
  DdaParams velocity = model.params.zeros_like();

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    const double lr = cfg.lr_at(epoch);
    LossBreakdown sum;
    std::size_t steps = 0;
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t end = std::min(order.size(), start + cfg.batch_size);
      if (end - start < 2) continue;
      Matrix batch(end - start, arch.input_dim);
      std::vector<std::size_t> labels(end - start);
      for (std::size_t i = start; i < end; ++i) {
        const auto &e = corpus[order[i]].embedding;
        std::copy(e.begin(), e.end(), batch.row(i - start).begin());
        labels[i - start] = corpus.label(order[i]);
      }
      ForwardCache cache = forward(model, batch, DdaMode::kTrain);
      LossBreakdown loss =
          compute_loss(cache.logits, cache.embeddings, labels, model.centers, cfg.lambda);
      Gradients grad = backward(model, batch, labels, cache, cfg.lambda);
      if (cfg.momentum > 0.0) {
        auto v = velocity.tensors();
        auto gt = grad.params.tensors();
        for (std::size_t t = 0; t < v.size(); ++t)
          for (std::size_t k = 0; k < v[t].second.size(); ++k)
            v[t].second[k] = cfg.momentum * v[t].second[k] + gt[t].second[k];
        apply_sgd(model, velocity, lr);
      } else {
        apply_sgd(model, grad.params, lr);
      }
      update_centers(model.centers, cache.embeddings, labels, cfg.center_lr);
      sum.total += loss.total;
      sum.softmax += loss.softmax;
      sum.center += loss.center;
      ++steps;
    }
    LossBreakdown mean{sum.total / double(steps), sum.softmax / double(steps),
                       sum.center / double(steps)};
    result.history.push_back(mean);
    if (on_epoch) on_epoch(epoch, mean);
  }
  model.mode = DdaMode::kInfer;
  return result;
}

Embedding compensate(const DdaModel &model, std::span<const double> x) {
  if (model.mode != DdaMode::kInfer)
    throw ModeError("compensate: model is in train mode; finalize it first");
  Matrix batch(1, x.size(), Vector(x.begin(), x.end()));
  ForwardCache c = forward_infer(model, batch);
  auto row = c.embeddings.row(0);
  return Embedding(row.begin(), row.end());
}

const char *to_string(LrSchedule s) {
  return s == LrSchedule::kConstant ? "constant" : "step_decay";
}

LrSchedule parse_lr_schedule(const std::string &s) {
  if (s == "constant") return LrSchedule::kConstant;
  if (s == "step_decay") return LrSchedule::kStepDecay;
  throw ConfigError("unknown lr schedule '" + s + "'");
}

void write_dda(const DdaModel &model, std::ostream &os, bool include_centers) {
  const auto &a = model.arch;
  os << "ivcomp-dda 1\n";
  os << "arch " << a.input_dim << ' ' << a.hidden_dim << ' ' << a.embed_dim << ' '
     << a.n_classes << '\n';
  os << "mode " << (model.mode == DdaMode::kInfer ? "infer" : "train") << '\n';
  os << "bn " << format_double(model.bn_epsilon) << ' '
     << format_double(model.bn_decay) << '\n';
  const auto &p = model.params;
  write_matrix(os, "layer1.weight", p.layer1.weight);
  write_vector(os, "layer1.bias", p.layer1.bias);
  write_vector(os, "prelu1", p.prelu1);
  write_matrix(os, "layer2.weight", p.layer2.weight);
  write_vector(os, "layer2.bias", p.layer2.bias);
  write_vector(os, "prelu2", p.prelu2);
  write_vector(os, "bn.scale", p.bn_scale);
  write_vector(os, "bn.shift", p.bn_shift);
  write_vector(os, "bn.running_mean", model.running_mean);
  write_vector(os, "bn.running_var", model.running_var);
  write_matrix(os, "embed.weight", p.embed.weight);
  write_vector(os, "embed.bias", p.embed.bias);
  write_matrix(os, "classifier.weight", p.classifier.weight);
  write_vector(os, "classifier.bias", p.classifier.bias);
  write_matrix(os, "centers", include_centers ? model.centers : Matrix());
}

DdaModel read_dda(std::istream &is) {
  TokenReader in(is);
  in.expect("ivcomp-dda");
  in.expect("1");
  in.expect("arch");
  DdaModel m;
  m.arch.input_dim = in.next_count("arch");
  m.arch.hidden_dim = in.next_count("arch");
  m.arch.embed_dim = in.next_count("arch");
  m.arch.n_classes = in.next_count("arch");
  m.arch.validate();
  in.expect("mode");
  std::string mode = in.next("mode");
  if (mode != "infer" && mode != "train")
    throw ParseError("dda model: unknown mode '" + mode + "'", in.line());
  m.mode = mode == "infer" ? DdaMode::kInfer : DdaMode::kTrain;
  in.expect("bn");
  m.bn_epsilon = in.next_double("bn");
  m.bn_decay = in.next_double("bn");
  auto &p = m.params;
  p.layer1.weight = in.next_matrix("layer1.weight");
  p.layer1.bias = in.next_vector("layer1.bias");
  p.prelu1 = in.next_vector("prelu1");
  p.layer2.weight = in.next_matrix("layer2.weight");
  p.layer2.bias = in.next_vector("layer2.bias");
  p.prelu2 = in.next_vector("prelu2");
  p.bn_scale = in.next_vector("bn.scale");
  p.bn_shift = in.next_vector("bn.shift");
  m.running_mean = in.next_vector("bn.running_mean");
  m.running_var = in.next_vector("bn.running_var");
  p.embed.weight = in.next_matrix("embed.weight");
  p.embed.bias = in.next_vector("embed.bias");
  p.classifier.weight = in.next_matrix("classifier.weight");
  p.classifier.bias = in.next_vector("classifier.bias");
  m.centers = in.next_matrix("centers");
  if (m.centers.empty()) m.centers = Matrix(m.arch.n_classes, m.arch.embed_dim);

  const auto &a = m.arch;
  auto shape_ok = [](const Linear &l, std::size_t in_dim, std::size_t out_dim) {
    return l.weight.rows() == out_dim && l.weight.cols() == in_dim &&
           l.bias.size() == out_dim;
  };
  bool ok = shape_ok(p.layer1, a.input_dim, a.hidden_dim) &&
            shape_ok(p.layer2, a.hidden_dim, a.hidden_dim) &&
            shape_ok(p.embed, a.hidden_dim, a.embed_dim) &&
            shape_ok(p.classifier, a.embed_dim, a.n_classes) &&
            p.prelu1.size() == a.hidden_dim && p.prelu2.size() == a.hidden_dim &&
            p.bn_scale.size() == a.hidden_dim && p.bn_shift.size() == a.hidden_dim &&
            m.running_mean.size() == a.hidden_dim &&
            m.running_var.size() == a.hidden_dim &&
            m.centers.rows() == a.n_classes && m.centers.cols() == a.embed_dim;
  if (!ok) throw FormatError("dda model: tensor shapes do not match the architecture");
  for (double v : m.running_var)
    if (!(v > 0)) throw FormatError("dda model: running_var must be positive");
  return m;
}

}  // namespace ivcomp
