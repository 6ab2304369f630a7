// ivcomp/dataset.h

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

#ifndef IVCOMP_DATASET_H_
#define IVCOMP_DATASET_H_

#include <cstdint>
#include <filesystem>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ivcomp/linalg.h"

namespace ivcomp {

/// An i-vector or a compensated embedding.
using Embedding = Vector;

struct Utterance {
  std::string speaker;
  std::string utterance;
  Embedding embedding;

  bool operator==(const Utterance &) const = default;
};

/// Speaker-labeled collection of equal-dimension embeddings with unique
/// utterance ids. Speakers are indexed in order of first appearance.
class LabeledCorpus {
 public:
  LabeledCorpus() = default;
  explicit LabeledCorpus(std::size_t dim) : dim_(dim) {}

  /// Throws DimensionError on a dim mismatch, FormatError on a duplicate
  /// utterance id or non-finite entry.
  void add(std::string speaker, std::string utterance, Embedding embedding);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const std::vector<Utterance> &items() const { return items_; }
  const Utterance &operator[](std::size_t i) const { return items_[i]; }

  std::size_t num_speakers() const { return speakers_.size(); }
  const std::vector<std::string> &speakers() const { return speakers_; }
  /// Dense speaker index of item i, in [0, num_speakers()).
  std::size_t label(std::size_t i) const { return labels_[i]; }
  const std::vector<std::size_t> &labels() const { return labels_; }
  /// Item indices grouped by speaker index.
  std::vector<std::vector<std::size_t>> groups() const;
  const Utterance *find(const std::string &utterance) const;

  /// Returns a copy with every embedding replaced by fn(embedding).
  template <typename Fn>
  LabeledCorpus map(Fn &&fn) const {
    LabeledCorpus out;
    for (const auto &u : items_) {
      Embedding e = fn(u.embedding);
      if (out.empty()) out.dim_ = e.size();
      out.add(u.speaker, u.utterance, std::move(e));
    }
    if (out.empty()) out.dim_ = dim_;
    return out;
  }

  bool operator==(const LabeledCorpus &o) const {
    return dim_ == o.dim_ && items_ == o.items_;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<Utterance> items_;
  std::vector<std::string> speakers_;
  std::vector<std::size_t> labels_;
  std::unordered_map<std::string, std::size_t> speaker_index_;
  std::unordered_map<std::string, std::size_t> utterance_index_;
};

/// Rows of a corpus as a matrix (size x dim).
Matrix to_matrix(const LabeledCorpus &corpus);

enum class TrialLabel { kTarget, kNontarget };

struct Trial {
  std::string model;
  std::string test;
  TrialLabel label;
  bool operator==(const Trial &) const = default;
};

using TrialList = std::vector<Trial>;

/// Scales x to unit L2 norm. Throws DegenerateInputError on a zero vector.
Embedding length_normalize(std::span<const double> x);
LabeledCorpus length_normalize(const LabeledCorpus &corpus);

// kRotationPerChannel: every channel mixes a random half of the coordinates
// with its own orthogonal matrix and adds its own fixed signature vector
// (drawn with speaker_std). kTanhWarp: elementwise s * tanh(v / s) with
// s = speaker_std.
enum class Distortion { kNone, kRotationPerChannel, kTanhWarp };

/// Parameters of the synthetic i-vector simulator: each utterance is
/// speaker_mean + channel_offset + residual, optionally distorted.
struct SynthConfig {
  std::size_t dim = 600;
  std::size_t n_speakers = 100;
  std::size_t utts_per_speaker = 10;
  double speaker_std = 1.0;
  double channel_std = 0.5;
  double residual_std = 0.3;
  Distortion distortion = Distortion::kNone;
  std::size_t n_channels = 4;
  // Blend between identity (0) and the full channel rotation (1).
  double rotation_strength = 1.0;
  std::uint64_t seed = 1;

  /// Throws ConfigError when invalid.
  void validate() const;
};

/// Stateful sampler. The per-channel distortions are drawn once from the
/// seed; speakers are then drawn sequentially from the same stream.
class SyntheticSource {
 public:
  explicit SyntheticSource(const SynthConfig &cfg);

  /// Draws one new speaker with n_utts utterances, appending to `out`.
  /// Ids are "<prefix><speaker#>" and "<speaker id>-<utt#>".
  void draw_speaker(std::size_t n_utts, const std::string &prefix,
                    LabeledCorpus &out);

  /// Latent draws of everything generated so far (distortion excluded):
  /// one speaker mean per speaker, one channel+residual offset per utterance.
  const std::vector<Embedding> &speaker_means() const { return speaker_means_; }
  const std::vector<Embedding> &session_offsets() const { return session_offsets_; }

 private:
  Embedding distort(Embedding v, std::size_t channel) const;

  SynthConfig cfg_;
  std::mt19937_64 rng_;
  std::vector<std::vector<std::size_t>> channel_coords_;
  std::vector<Matrix> channel_rotations_;
  std::vector<Embedding> channel_signatures_;
  std::size_t next_speaker_ = 0;
  std::vector<Embedding> speaker_means_;
  std::vector<Embedding> session_offsets_;
};

/// n_speakers x utts_per_speaker corpus; deterministic given cfg.seed.
LabeledCorpus generate_synthetic(const SynthConfig &cfg);

/// Training corpus plus a held-out evaluation split drawn from the same
/// simulator (same channel distortions, disjoint speakers).
struct SyntheticSplit {
  LabeledCorpus train;
  LabeledCorpus enroll;
  LabeledCorpus test;
  TrialList trials;
};

/// Train speakers come first (identical to generate_synthetic(cfg)), then
/// eval_speakers held-out speakers with enroll_utts + test_utts utterances
/// each. Trials pair every enrollment model with every test utterance.
SyntheticSplit generate_split(const SynthConfig &cfg, std::size_t eval_speakers,
                              std::size_t enroll_utts, std::size_t test_utts);

/// Text formats: `speaker_id utterance_id v1 ... vD` per line, and
/// `model_id utterance_id target|nontarget` per line.
void write_corpus(const LabeledCorpus &corpus, const std::filesystem::path &path);
LabeledCorpus read_corpus(const std::filesystem::path &path);
void write_trials(const TrialList &trials, const std::filesystem::path &path);
TrialList read_trials(const std::filesystem::path &path);

const char *to_string(TrialLabel label);
const char *to_string(Distortion d);
Distortion parse_distortion(const std::string &s);

}  // namespace ivcomp

#endif  // IVCOMP_DATASET_H_
