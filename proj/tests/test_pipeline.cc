// tests/test_pipeline.cc

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


#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "doctest.h"
#include "ivcomp/dataset.h"
#include "ivcomp/error.h"
#include "ivcomp/pipeline.h"
#include "test_util.h"

using namespace ivcomp;
using ivcomp::testing::random_vector;
using ivcomp::testing::scratch_dir;

namespace {

LabeledCorpus random_corpus(std::size_t speakers, std::size_t utts, std::size_t dim,
                            std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  LabeledCorpus c(dim);
  for (std::size_t s = 0; s < speakers; ++s)
    for (std::size_t u = 0; u < utts + s % 3; ++u)
      c.add("spk" + std::to_string(s), "spk" + std::to_string(s) + "-" + std::to_string(u),
            random_vector(dim, rng));
  return c;
}

// Pairwise distances through the Gram matrix over ordered pairs, an
// independent route from the direct difference loop.
struct PairOracle {
  double within = 0.0, between = 0.0;
  std::map<std::string, double> by_speaker;
};

PairOracle pair_oracle(const LabeledCorpus &c) {
  const std::size_t n = c.size();
  std::vector<std::vector<double>> gram(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) gram[i][j] = dot(c[i].embedding, c[j].embedding);
  PairOracle o;
  double ws = 0, bs = 0;
  std::size_t wn = 0, bn = 0;
  std::map<std::string, std::pair<double, std::size_t>> spk;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      double d = std::sqrt(std::max(0.0, gram[i][i] + gram[j][j] - 2 * gram[i][j]));
      if (c[i].speaker == c[j].speaker) {
        ws += d;
        ++wn;
        spk[c[i].speaker].first += d;
        spk[c[i].speaker].second += 1;
      } else {
        bs += d;
        ++bn;
      }
    }
  o.within = ws / double(wn);
  o.between = bs / double(bn);
  for (auto &[k, v] : spk) o.by_speaker[k] = v.first / double(v.second);
  return o;
}

std::map<std::string, double> read_stats(const std::filesystem::path &p) {
  std::ifstream in(p);
  std::map<std::string, double> kv;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string key, maybe_spk;
    ls >> key;
    if (key == "within") {
      double v;
      ls >> maybe_spk >> v;
      kv["within " + maybe_spk] = v;
    } else {
      double v;
      ls >> v;
      kv[key] = v;
    }
  }
  return kv;
}

SyntheticSplit small_split() {
  SynthConfig cfg;
  cfg.dim = 12;
  cfg.n_speakers = 40;
  cfg.utts_per_speaker = 8;
  cfg.distortion = Distortion::kTanhWarp;
  cfg.seed = 21;
  SyntheticSplit s = generate_split(cfg, 8, 3, 4);
  s.train = length_normalize(s.train);
  s.enroll = length_normalize(s.enroll);
  s.test = length_normalize(s.test);
  return s;
}

BackendOptions small_options() {
  BackendOptions o;
  o.out_dim = 6;
  o.dda_hidden = 16;
  o.dda.epochs = 4;
  o.dda.batch_size = 32;
  o.plda_iters = 5;
  return o;
}

}  // namespace

TEST_CASE("distance statistics match a Gram-matrix pairwise oracle") {
  LabeledCorpus c = random_corpus(6, 4, 5, 3);
  DistanceStats st = distance_stats(c);
  PairOracle o = pair_oracle(c);
  CHECK(st.within_mean == doctest::Approx(o.within).epsilon(1e-12));
  CHECK(st.between_mean == doctest::Approx(o.between).epsilon(1e-12));
  REQUIRE(st.within_by_speaker.size() == 6);
  for (const auto &[spk, v] : o.by_speaker)
    CHECK(st.within_by_speaker.at(spk) == doctest::Approx(v).epsilon(1e-12));
  CHECK(st.ratio() == doctest::Approx(o.within / o.between).epsilon(1e-12));
}

TEST_CASE("export with no compensation writes the input corpus and its statistics") {
  const auto dir = scratch_dir("pipeline-export");
  LabeledCorpus c = random_corpus(4, 3, 3, 9);
  DistanceStats st = export_embeddings(Compensator{}, c, dir / "dump.txt", dir / "stats.txt");
  CHECK(read_corpus(dir / "dump.txt") == c);
  auto kv = read_stats(dir / "stats.txt");
  PairOracle o = pair_oracle(c);
  CHECK(kv.at("within_mean") == doctest::Approx(o.within).epsilon(1e-12));
  CHECK(kv.at("between_mean") == doctest::Approx(o.between).epsilon(1e-12));
  CHECK(kv.at("within_between_ratio") == doctest::Approx(st.ratio()).epsilon(1e-12));
  CHECK(kv.at("within spk2") == doctest::Approx(o.by_speaker.at("spk2")).epsilon(1e-12));
}

TEST_CASE("grid cells equal the individually evaluated combinations") {
  SyntheticSplit s = small_split();
  BackendOptions o = small_options();
  const std::vector<Method> methods = {Method::kNone, Method::kLda, Method::kDda};
  auto cells = run_grid(s.train, s.enroll, s.test, s.trials, o, methods);
  REQUIRE(cells.size() == 9);
  std::size_t k = 0;
  for (Method m : methods) {
    Compensator comp = train_compensator(m, s.train, o);
    PldaModel plda = fit_plda(comp.apply(s.train), o.plda_iters).model;
    EvalSet set = prepare_eval_set(comp, s.enroll, s.test);
    for (ScoreMethod sc : {ScoreMethod::kCos, ScoreMethod::kEuc, ScoreMethod::kPlda}) {
      EvalOutcome r = evaluate(set, s.trials, sc, sc == ScoreMethod::kPlda ? &plda : nullptr);
      CHECK(cells[k].method == m);
      CHECK(cells[k].scorer == sc);
      CHECK(cells[k].report.eer_percent == r.report.eer_percent);
      ++k;
    }
  }
  CHECK(cells[0].dim == 12);
  CHECK(cells[3].dim == 6);
  CHECK(cells[6].dim == 6);
}

TEST_CASE("grid and sweep tables have the expected shape") {
  SyntheticSplit s = small_split();
  BackendOptions o = small_options();
  auto grid = run_grid(s.train, s.enroll, s.test, s.trials, o,
                       {Method::kNone, Method::kLda, Method::kDda});
  std::istringstream g(format_grid(grid));
  std::vector<std::string> lines;
  for (std::string l; std::getline(g, l);) lines.push_back(l);
  REQUIRE(lines.size() == 5);  // title, header, 3 methods
  CHECK(lines[1].find("Cos") != std::string::npos);
  CHECK(lines[1].find("PLDA") != std::string::npos);

  auto sweep = run_dim_sweep(s.train, s.enroll, s.test, s.trials, o, {4, 8});
  CHECK(sweep.size() == 8);  // 2 dims x {LDA, DDA} x {cos, euc}
  std::istringstream t(format_dim_sweep(sweep));
  lines.clear();
  for (std::string l; std::getline(t, l);) lines.push_back(l);
  REQUIRE(lines.size() == 6);  // title, header, 4 rows
  CHECK(lines[1].find("4dim") != std::string::npos);
  CHECK(lines[1].find("8dim") != std::string::npos);
}

TEST_CASE("saved models load back through the magic-header dispatch") {
  const auto dir = scratch_dir("pipeline-models");
  SyntheticSplit s = small_split();
  BackendOptions o = small_options();
  Compensator lda = train_compensator(Method::kLda, s.train, o);
  Compensator dda = train_compensator(Method::kDda, s.train, o);
  save_model(*lda.lda(), dir / "lda");
  save_model(*dda.dda(), dir / "dda");
  save_model(fit_plda(s.train, 3).model, dir / "plda");
  CHECK(std::holds_alternative<LdaModel>(load_model(dir / "lda")));
  CHECK(std::holds_alternative<DdaModel>(load_model(dir / "dda")));
  CHECK(std::holds_alternative<PldaModel>(load_model(dir / "plda")));
  Compensator back = load_compensator(Method::kDda, dir / "dda");
  CHECK(back.apply(s.test) == dda.apply(s.test));
  CHECK_THROWS_AS(load_compensator(Method::kLda, dir / "dda"), FormatError);
  CHECK(load_compensator(Method::kNone, "").method() == Method::kNone);
}

TEST_CASE("method names parse and print symmetrically") {
  for (Method m : {Method::kNone, Method::kLda, Method::kDda})
    CHECK(parse_method(to_string(m)) == m);
  CHECK_THROWS_AS(parse_method("pca"), ConfigError);
}
