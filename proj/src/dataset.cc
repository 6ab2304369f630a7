// src/dataset.cc

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

#include "ivcomp/dataset.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "ivcomp/error.h"
#include "ivcomp/textio.h"

namespace ivcomp {

void LabeledCorpus::add(std::string speaker, std::string utterance,
                        Embedding embedding) {
  if (items_.empty() && dim_ == 0) dim_ = embedding.size();
  if (embedding.size() != dim_)
    throw DimensionError("corpus: utterance '" + utterance + "' has dimension " +
                         std::to_string(embedding.size()) + ", corpus has " +
                         std::to_string(dim_));
  if (!all_finite(embedding))
    throw FormatError("corpus: utterance '" + utterance + "' has non-finite values");
  if (utterance_index_.count(utterance))
    throw FormatError("corpus: duplicate utterance id '" + utterance + "'");
  auto [it, inserted] = speaker_index_.try_emplace(speaker, speakers_.size());
  if (inserted) speakers_.push_back(speaker);
  labels_.push_back(it->second);
  utterance_index_.emplace(utterance, items_.size());
  items_.push_back({std::move(speaker), std::move(utterance), std::move(embedding)});
}

std::vector<std::vector<std::size_t>> LabeledCorpus::groups() const {
  std::vector<std::vector<std::size_t>> g(speakers_.size());
  for (std::size_t i = 0; i < items_.size(); ++i) g[labels_[i]].push_back(i);
  return g;
}

const Utterance *LabeledCorpus::find(const std::string &utterance) const {
  auto it = utterance_index_.find(utterance);
  return it == utterance_index_.end() ? nullptr : &items_[it->second];
}

Matrix to_matrix(const LabeledCorpus &corpus) {
  Matrix m(corpus.size(), corpus.dim());
  for (std::size_t i = 0; i < corpus.size(); ++i)
    std::copy(corpus[i].embedding.begin(), corpus[i].embedding.end(),
              m.row(i).begin());
  return m;
}

Embedding length_normalize(std::span<const double> x) {
  double n = norm2(x);
  if (!(n > 0.0)) throw DegenerateInputError("length_normalize: zero vector");
  Embedding y(x.begin(), x.end());
  for (double &v : y) v /= n;
  return y;
}

LabeledCorpus length_normalize(const LabeledCorpus &corpus) {
  return corpus.map([](const Embedding &e) { return length_normalize(e); });
}

void SynthConfig::validate() const {
  if (dim < 2) throw ConfigError("synth: dim must be >= 2");
  if (n_speakers < 2) throw ConfigError("synth: n_speakers must be >= 2");
  if (utts_per_speaker < 1) throw ConfigError("synth: utts_per_speaker must be >= 1");
  if (!(speaker_std >= 0) || !(channel_std >= 0) || !(residual_std >= 0))
    throw ConfigError("synth: standard deviations must be >= 0");
  if (n_channels < 1) throw ConfigError("synth: n_channels must be >= 1");
  if (!(rotation_strength >= 0 && rotation_strength <= 1))
    throw ConfigError("synth: rotation_strength must be in [0, 1]");
  if (distortion == Distortion::kTanhWarp && !(speaker_std > 0))
    throw ConfigError("synth: tanh_warp needs speaker_std > 0");
}

namespace {

Matrix random_orthogonal(std::size_t k, std::mt19937_64 &rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  // Gram-Schmidt on the rows of a Gaussian matrix.
  Matrix q(k, k);
  for (double &x : q.data()) x = normal(rng);
  for (std::size_t i = 0; i < k; ++i) {
    auto qi = q.row(i);
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t j = 0; j < i; ++j) axpy(-dot(qi, q.row(j)), q.row(j), qi);
    double n = norm2(qi);
    for (double &x : qi) x /= n;
  }
  return q;
}

}  // namespace

SyntheticSource::SyntheticSource(const SynthConfig &cfg) : cfg_(cfg), rng_(cfg.seed) {
  cfg_.validate();
  if (cfg_.distortion == Distortion::kRotationPerChannel) {
    std::size_t k = std::max<std::size_t>(2, cfg_.dim / 2);
    for (std::size_t c = 0; c < cfg_.n_channels; ++c) {
      std::vector<std::size_t> coords(cfg_.dim);
      std::iota(coords.begin(), coords.end(), 0);
      std::shuffle(coords.begin(), coords.end(), rng_);
      coords.resize(k);
      std::sort(coords.begin(), coords.end());
      channel_coords_.push_back(std::move(coords));
      channel_rotations_.push_back(random_orthogonal(k, rng_));
    }
    // Each channel also leaves a fixed additive signature, so the channel
    // (and with it the mixing to undo) can be inferred from the vector.
    std::normal_distribution<double> normal(0.0, cfg_.speaker_std);
    for (std::size_t c = 0; c < cfg_.n_channels; ++c) {
      Embedding sig(cfg_.dim);
      for (double &x : sig) x = normal(rng_);
      channel_signatures_.push_back(std::move(sig));
    }
  }
}

Embedding SyntheticSource::distort(Embedding v, std::size_t channel) const {
  switch (cfg_.distortion) {
    case Distortion::kNone:
      return v;
    case Distortion::kTanhWarp: {
      const double s = cfg_.speaker_std;
      for (double &x : v) x = s * std::tanh(x / s);
      return v;
    }
    case Distortion::kRotationPerChannel: {
      const auto &coords = channel_coords_[channel];
      const Matrix &rot = channel_rotations_[channel];
      Vector sub(coords.size());
      for (std::size_t i = 0; i < coords.size(); ++i) sub[i] = v[coords[i]];
      Vector rotated = rot * sub;
      const double a = cfg_.rotation_strength;
      for (std::size_t i = 0; i < coords.size(); ++i)
        v[coords[i]] = (1.0 - a) * sub[i] + a * rotated[i];
      axpy(1.0, channel_signatures_[channel], v);
      return v;
    }
  }
  return v;
}

void SyntheticSource::draw_speaker(std::size_t n_utts, const std::string &prefix,
                                   LabeledCorpus &out) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick_channel(0, cfg_.n_channels - 1);
  const std::size_t d = cfg_.dim;

  char id[64];
  std::snprintf(id, sizeof(id), "%s%05zu", prefix.c_str(), ++next_speaker_);
  const std::string speaker(id);

  Embedding mean(d);
  for (double &x : mean) x = cfg_.speaker_std * normal(rng_);
  speaker_means_.push_back(mean);

  for (std::size_t u = 0; u < n_utts; ++u) {
    std::size_t channel = pick_channel(rng_);
    Embedding offset(d);
    for (double &x : offset) x = cfg_.channel_std * normal(rng_);
    for (double &x : offset) x += cfg_.residual_std * normal(rng_);
    Embedding v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = mean[i] + offset[i];
    session_offsets_.push_back(std::move(offset));
    std::snprintf(id, sizeof(id), "%s-%03zu", speaker.c_str(), u + 1);
    out.add(speaker, id, distort(std::move(v), channel));
  }
}

LabeledCorpus generate_synthetic(const SynthConfig &cfg) {
  SyntheticSource source(cfg);
  LabeledCorpus corpus(cfg.dim);
  for (std::size_t s = 0; s < cfg.n_speakers; ++s)
    source.draw_speaker(cfg.utts_per_speaker, "spk", corpus);
  return corpus;
}

SyntheticSplit generate_split(const SynthConfig &cfg, std::size_t eval_speakers,
                              std::size_t enroll_utts, std::size_t test_utts) {
  if (eval_speakers > 0 && (enroll_utts < 1 || test_utts < 1))
    throw ConfigError("split: enroll_utts and test_utts must be >= 1");
  SyntheticSource source(cfg);
  SyntheticSplit split{LabeledCorpus(cfg.dim), LabeledCorpus(cfg.dim),
                       LabeledCorpus(cfg.dim), {}};
  for (std::size_t s = 0; s < cfg.n_speakers; ++s)
    source.draw_speaker(cfg.utts_per_speaker, "spk", split.train);

  LabeledCorpus held_out(cfg.dim);
  for (std::size_t s = 0; s < eval_speakers; ++s)
    source.draw_speaker(enroll_utts + test_utts, "eval", held_out);
  for (const auto &group : held_out.groups()) {
    for (std::size_t k = 0; k < group.size(); ++k) {
      const Utterance &u = held_out[group[k]];
      (k < enroll_utts ? split.enroll : split.test)
          .add(u.speaker, u.utterance, u.embedding);
    }
  }
  for (const auto &model : split.enroll.speakers())
    for (const auto &t : split.test.items())
      split.trials.push_back({model, t.utterance,
                              t.speaker == model ? TrialLabel::kTarget
                                                 : TrialLabel::kNontarget});
  return split;
}

void write_corpus(const LabeledCorpus &corpus, const std::filesystem::path &path) {
  auto os = open_out(path);
  for (const auto &u : corpus.items()) {
    os << u.speaker << ' ' << u.utterance;
    for (double x : u.embedding) os << ' ' << format_double(x);
    os << '\n';
  }
  if (!os) throw Error("write failed: " + path.string());
}

LabeledCorpus read_corpus(const std::filesystem::path &path) {
  auto is = open_in(path);
  LabeledCorpus corpus;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks.size() < 3)
      throw ParseError("corpus line needs speaker, utterance and values", lineno);
    Embedding e(toks.size() - 2);
    try {
      for (std::size_t i = 2; i < toks.size(); ++i) e[i - 2] = parse_double(toks[i]);
    } catch (const FormatError &err) {
      throw ParseError(err.what(), lineno);
    }
    if (!corpus.empty() && e.size() != corpus.dim())
      throw FormatError("corpus line " + std::to_string(lineno) + " has " +
                        std::to_string(e.size()) + " values, expected " +
                        std::to_string(corpus.dim()));
    try {
      corpus.add(std::string(toks[0]), std::string(toks[1]), std::move(e));
    } catch (const FormatError &err) {
      throw ParseError(err.what(), lineno);
    }
  }
  if (corpus.empty()) throw DegenerateInputError("empty corpus: " + path.string());
  return corpus;
}

const char *to_string(TrialLabel label) {
  return label == TrialLabel::kTarget ? "target" : "nontarget";
}

const char *to_string(Distortion d) {
  switch (d) {
    case Distortion::kNone: return "none";
    case Distortion::kRotationPerChannel: return "rotation_per_channel";
    case Distortion::kTanhWarp: return "tanh_warp";
  }
  return "?";
}

Distortion parse_distortion(const std::string &s) {
  if (s == "none") return Distortion::kNone;
  if (s == "rotation_per_channel") return Distortion::kRotationPerChannel;
  if (s == "tanh_warp") return Distortion::kTanhWarp;
  throw ConfigError("unknown distortion '" + s + "'");
}

void write_trials(const TrialList &trials, const std::filesystem::path &path) {
  auto os = open_out(path);
  for (const auto &t : trials)
    os << t.model << ' ' << t.test << ' ' << to_string(t.label) << '\n';
  if (!os) throw Error("write failed: " + path.string());
}

TrialList read_trials(const std::filesystem::path &path) {
  auto is = open_in(path);
  TrialList trials;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks.size() != 3)
      throw ParseError("trial line needs model, utterance and label", lineno);
    TrialLabel label;
    if (toks[2] == "target") {
      label = TrialLabel::kTarget;
    } else if (toks[2] == "nontarget") {
      label = TrialLabel::kNontarget;
    } else {
      throw ParseError("unknown trial label '" + std::string(toks[2]) + "'", lineno);
    }
    trials.push_back({std::string(toks[0]), std::string(toks[1]), label});
  }
  return trials;
}

}  // namespace ivcomp
