// src/eval.cc

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

#include "ivcomp/eval.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "ivcomp/error.h"
#include "ivcomp/textio.h"

namespace ivcomp {

EnrolledModel enroll(std::span<const Embedding> embeddings) {
  if (embeddings.empty()) throw DegenerateInputError("enroll: no embeddings");
  const std::size_t d = embeddings.front().size();
  EnrolledModel m{Embedding(d, 0.0), embeddings.size()};
  for (const auto &e : embeddings) {
    if (e.size() != d) throw DimensionError("enroll: inconsistent dimensions");
    axpy(1.0, e, m.mean);
  }
  for (double &x : m.mean) x /= double(embeddings.size());
  return m;
}

double score_pair(const Scorer &scorer, const EnrolledModel &enrolled,
                  std::span<const double> test) {
  const auto &a = enrolled.mean;
  if (a.size() != test.size())
    throw DimensionError("score_pair: enrollment dimension " + std::to_string(a.size()) +
                         " vs test dimension " + std::to_string(test.size()));
  switch (scorer.method) {
    case ScoreMethod::kCos: {
      double na = norm2(a), nb = norm2(test);
      if (!(na > 0.0) || !(nb > 0.0))
        throw DegenerateInputError("score_pair: zero vector under cosine scoring");
      return std::clamp(dot(a, test) / (na * nb), -1.0, 1.0);
    }
    case ScoreMethod::kEuc: {
      double s = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - test[i]) * (a[i] - test[i]);
      return -std::sqrt(s);
    }
    case ScoreMethod::kPlda:
      if (scorer.plda == nullptr) throw ConfigError("score_pair: PLDA model missing");
      return plda_score(*scorer.plda, a, enrolled.count, test);
  }
  throw ConfigError("score_pair: unknown method");
}

ScoredTrials score_trials(const TrialList &trials,
                          const std::map<std::string, EnrolledModel> &models,
                          const std::map<std::string, Embedding> &tests,
                          const Scorer &scorer, std::size_t jobs) {
  // Resolve ids up front so errors do not depend on the thread split.
  std::vector<const EnrolledModel *> m(trials.size());
  std::vector<const Embedding *> t(trials.size());
  for (std::size_t i = 0; i < trials.size(); ++i) {
    auto mi = models.find(trials[i].model);
    if (mi == models.end())
      throw LookupError("score_trials: unknown model id '" + trials[i].model + "'");
    auto ti = tests.find(trials[i].test);
    if (ti == tests.end())
      throw LookupError("score_trials: unknown test id '" + trials[i].test + "'");
    m[i] = &mi->second;
    t[i] = &ti->second;
  }

  ScoredTrials out;
  out.scores.assign(trials.size(), 0.0);
  out.labels.resize(trials.size());
  for (std::size_t i = 0; i < trials.size(); ++i) out.labels[i] = trials[i].label;

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      out.scores[i] = score_pair(scorer, *m[i], *t[i]);
  };
  jobs = std::max<std::size_t>(1, std::min(jobs, trials.size()));
  if (jobs == 1) {
    work(0, trials.size());
    return out;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(jobs);
  const std::size_t chunk = (trials.size() + jobs - 1) / jobs;
  for (std::size_t j = 0; j < jobs; ++j) {
    std::size_t b = j * chunk, e = std::min(trials.size(), b + chunk);
    threads.emplace_back([&, j, b, e] {
      try {
        work(b, e);
      } catch (...) {
        errors[j] = std::current_exception();
      }
    });
  }
  for (auto &th : threads) th.join();
  for (auto &err : errors)
    if (err) std::rethrow_exception(err);
  return out;
}

std::vector<RocPoint> roc_points(const ScoredTrials &scored) {
  if (scored.scores.size() != scored.labels.size())
    throw DimensionError("roc: scores and labels differ in length");
  std::vector<std::size_t> order(scored.scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scored.scores[a] < scored.scores[b];
  });
  std::size_t n_tar = 0, n_non = 0;
  for (auto l : scored.labels) (l == TrialLabel::kTarget ? n_tar : n_non)++;

  std::vector<RocPoint> roc;
  // Walk thresholds upward; at threshold t everything below t is rejected.
  std::size_t tar_below = 0, non_below = 0;
  for (std::size_t i = 0; i < order.size();) {
    const double t = scored.scores[order[i]];
    roc.push_back({t, double(n_non - non_below) / double(n_non),
                   double(tar_below) / double(n_tar)});
    for (; i < order.size() && scored.scores[order[i]] == t; ++i)
      (scored.labels[order[i]] == TrialLabel::kTarget ? tar_below : non_below)++;
  }
  roc.push_back({std::numeric_limits<double>::infinity(), 0.0, 1.0});
  return roc;
}

EvalReport compute_eer(const ScoredTrials &scored) {
  if (scored.scores.size() != scored.labels.size())
    throw DimensionError("compute_eer: scores and labels differ in length");
  EvalReport rep;
  for (auto l : scored.labels) (l == TrialLabel::kTarget ? rep.n_target : rep.n_nontarget)++;
  if (rep.n_target == 0 || rep.n_nontarget == 0)
    throw DegenerateInputError("compute_eer: need at least one target and one nontarget");
  for (double s : scored.scores)
    if (!std::isfinite(s)) throw NumericalError("compute_eer: non-finite score");

  auto roc = roc_points(scored);
  for (std::size_t k = 0; k + 1 < roc.size(); ++k) {
    const double d0 = roc[k].far - roc[k].frr;
    const double d1 = roc[k + 1].far - roc[k + 1].frr;
    if (d0 == 0.0) {
      rep.eer_percent = 100.0 * roc[k].far;
      rep.eer_threshold = roc[k].threshold;
      return rep;
    }
    if (d0 > 0.0 && d1 <= 0.0) {
      const double a = d0 / (d0 - d1);
      rep.eer_percent = 100.0 * (roc[k].far + a * (roc[k + 1].far - roc[k].far));
      const double t1 =
          std::isfinite(roc[k + 1].threshold) ? roc[k + 1].threshold : roc[k].threshold;
      rep.eer_threshold = roc[k].threshold + a * (t1 - roc[k].threshold);
      return rep;
    }
  }
  // Unreachable: FAR - FRR runs from 1 at the lowest score to -1 at +inf.
  throw NumericalError("compute_eer: no FAR/FRR crossing found");
}

std::map<std::string, EnrolledModel> enroll_speakers(const LabeledCorpus &corpus) {
  std::map<std::string, EnrolledModel> models;
  for (const auto &group : corpus.groups()) {
    std::vector<Embedding> embs;
    for (std::size_t i : group) embs.push_back(corpus[i].embedding);
    models.emplace(corpus[group.front()].speaker, enroll(embs));
  }
  return models;
}

std::map<std::string, Embedding> index_embeddings(const LabeledCorpus &corpus) {
  std::map<std::string, Embedding> out;
  for (const auto &u : corpus.items()) out.emplace(u.utterance, u.embedding);
  return out;
}

void write_scored_trials(const TrialList &trials, const ScoredTrials &scored,
                         const std::filesystem::path &path) {
  if (trials.size() != scored.scores.size())
    throw DimensionError("write_scored_trials: trial/score count mismatch");
  auto os = open_out(path);
  for (std::size_t i = 0; i < trials.size(); ++i)
    os << trials[i].model << ' ' << trials[i].test << ' '
       << format_double(scored.scores[i]) << ' ' << to_string(scored.labels[i]) << '\n';
  if (!os) throw Error("write failed: " + path.string());
}

const char *to_string(ScoreMethod m) {
  switch (m) {
    case ScoreMethod::kCos: return "cos";
    case ScoreMethod::kEuc: return "euc";
    case ScoreMethod::kPlda: return "plda";
  }
  return "?";
}

ScoreMethod parse_score_method(const std::string &s) {
  if (s == "cos") return ScoreMethod::kCos;
  if (s == "euc") return ScoreMethod::kEuc;
  if (s == "plda") return ScoreMethod::kPlda;
  throw ConfigError("unknown scorer '" + s + "'");
}

}  // namespace ivcomp
