// src/pipeline.cc

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

#include "ivcomp/pipeline.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

#include "ivcomp/error.h"
#include "ivcomp/textio.h"

namespace ivcomp {

const char *to_string(Method m) {
  switch (m) {
    case Method::kNone: return "none";
    case Method::kLda: return "lda";
    case Method::kDda: return "dda";
  }
  return "?";
}

Method parse_method(const std::string &s) {
  if (s == "none") return Method::kNone;
  if (s == "lda") return Method::kLda;
  if (s == "dda") return Method::kDda;
  throw ConfigError("unknown method '" + s + "'");
}

Method Compensator::method() const {
  if (lda()) return Method::kLda;
  if (dda()) return Method::kDda;
  return Method::kNone;
}

Embedding Compensator::apply(std::span<const double> x) const {
  if (const auto *m = lda()) return lda_transform(*m, x);
  if (const auto *m = dda()) return compensate(*m, x);
  return Embedding(x.begin(), x.end());
}

LabeledCorpus Compensator::apply(const LabeledCorpus &corpus) const {
  return corpus.map([this](const Embedding &e) { return apply(e); });
}

void save_model(const AnyModel &model, const std::filesystem::path &path) {
  auto os = open_out(path);
  std::visit(
      [&os](const auto &m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, LdaModel>) write_lda(m, os);
        if constexpr (std::is_same_v<T, PldaModel>) write_plda(m, os);
        if constexpr (std::is_same_v<T, DdaModel>) write_dda(m, os);
      },
      model);
  if (!os) throw Error("write failed: " + path.string());
}

AnyModel load_model(const std::filesystem::path &path) {
  std::string magic;
  {
    auto is = open_in(path);
    is >> magic;
  }
  auto is = open_in(path);
  if (magic == "ivcomp-lda") return read_lda(is);
  if (magic == "ivcomp-plda") return read_plda(is);
  if (magic == "ivcomp-dda") return read_dda(is);
  throw FormatError("unrecognized model file: " + path.string());
}

Compensator load_compensator(Method method, const std::filesystem::path &path) {
  if (method == Method::kNone) return {};
  AnyModel any = load_model(path);
  if (method == Method::kLda) {
    if (auto *m = std::get_if<LdaModel>(&any)) return Compensator(std::move(*m));
  } else if (auto *m = std::get_if<DdaModel>(&any)) {
    return Compensator(std::move(*m));
  }
  throw FormatError("model file " + path.string() + " does not hold a " +
                    to_string(method) + " model");
}

Compensator train_compensator(Method method, const LabeledCorpus &train,
                              const BackendOptions &opts, const LogFn &log) {
  switch (method) {
    case Method::kNone:
      return {};
    case Method::kLda: {
      LdaModel m = fit_lda(train, opts.out_dim, opts.lda_ridge);
      if (log) log("lda: fitted " + std::to_string(m.input_dim()) + " -> " +
                   std::to_string(m.output_dim()) + ", ridge " +
                   format_double(m.ridge));
      return Compensator(std::move(m));
    }
    case Method::kDda: {
      DdaArchitecture arch;
      arch.input_dim = train.dim();
      arch.hidden_dim = opts.dda_hidden ? opts.dda_hidden : train.dim();
      arch.embed_dim = opts.out_dim;
      arch.n_classes = train.num_speakers();
      auto on_epoch = [&log](std::size_t epoch, const LossBreakdown &l) {
        if (log)
          log("dda: epoch " + std::to_string(epoch + 1) + " total " +
              format_double(l.total) + " softmax " + format_double(l.softmax) +
              " center " + format_double(l.center));
      };
      return Compensator(train_dda(train, arch, opts.dda, on_epoch).model);
    }
  }
  throw ConfigError("unknown method");
}

EvalSet prepare_eval_set(const Compensator &comp, const LabeledCorpus &enroll,
                         const LabeledCorpus &test) {
  return {enroll_speakers(comp.apply(enroll)), index_embeddings(comp.apply(test))};
}

EvalOutcome evaluate(const EvalSet &set, const TrialList &trials, ScoreMethod scorer,
                     const PldaModel *plda, std::size_t jobs) {
  Scorer s{scorer, plda};
  if (scorer == ScoreMethod::kPlda && plda == nullptr)
    throw ConfigError("evaluate: PLDA scoring needs a PLDA model");
  EvalOutcome out;
  out.scored = score_trials(trials, set.models, set.tests, s, jobs);
  out.report = compute_eer(out.scored);
  return out;
}

std::vector<GridCell> run_grid(const LabeledCorpus &train, const LabeledCorpus &enroll,
                               const LabeledCorpus &test, const TrialList &trials,
                               const BackendOptions &opts,
                               const std::vector<Method> &methods,
                               const std::map<Method, Compensator> &given,
                               const LogFn &log) {
  std::vector<GridCell> cells;
  for (Method method : methods) {
    auto it = given.find(method);
    Compensator comp = it != given.end() ? it->second
                                         : train_compensator(method, train, opts, log);
    LabeledCorpus train_c = comp.apply(train);
    EvalSet set = prepare_eval_set(comp, enroll, test);
    PldaModel plda = fit_plda(train_c, opts.plda_iters).model;
    for (ScoreMethod scorer : {ScoreMethod::kCos, ScoreMethod::kEuc, ScoreMethod::kPlda}) {
      EvalOutcome o = evaluate(set, trials, scorer, &plda, opts.jobs);
      cells.push_back({method, scorer, train_c.dim(), o.report});
      if (log)
        log(std::string("grid: ") + to_string(method) + "+" + to_string(scorer) +
            " EER " + format_double(o.report.eer_percent) + "%");
    }
  }
  return cells;
}

std::vector<GridCell> run_dim_sweep(const LabeledCorpus &train,
                                    const LabeledCorpus &enroll,
                                    const LabeledCorpus &test, const TrialList &trials,
                                    const BackendOptions &opts,
                                    const std::vector<std::size_t> &dims,
                                    const LogFn &log) {
  std::vector<GridCell> cells;
  for (std::size_t dim : dims) {
    BackendOptions o = opts;
    o.out_dim = dim;
    for (Method method : {Method::kLda, Method::kDda}) {
      Compensator comp = train_compensator(method, train, o, log);
      EvalSet set = prepare_eval_set(comp, enroll, test);
      for (ScoreMethod scorer : {ScoreMethod::kCos, ScoreMethod::kEuc}) {
        EvalOutcome r = evaluate(set, trials, scorer, nullptr, opts.jobs);
        cells.push_back({method, scorer, dim, r.report});
        if (log)
          log(std::string("sweep: ") + to_string(method) + "+" + to_string(scorer) +
              " dim " + std::to_string(dim) + " EER " +
              format_double(r.report.eer_percent) + "%");
      }
    }
  }
  return cells;
}

DistanceStats distance_stats(const LabeledCorpus &corpus) {
  DistanceStats st;
  const auto groups = corpus.groups();
  auto dist = [&](std::size_t i, std::size_t j) {
    const auto &a = corpus[i].embedding;
    const auto &b = corpus[j].embedding;
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
    return std::sqrt(s);
  };
  double within_sum = 0.0, between_sum = 0.0;
  std::size_t within_n = 0, between_n = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (std::size_t j = i + 1; j < corpus.size(); ++j) {
      double d = dist(i, j);
      if (corpus.label(i) == corpus.label(j)) {
        within_sum += d;
        ++within_n;
      } else {
        between_sum += d;
        ++between_n;
      }
    }
  }
  for (const auto &g : groups) {
    double s = 0.0;
    std::size_t n = 0;
    for (std::size_t a = 0; a < g.size(); ++a)
      for (std::size_t b = a + 1; b < g.size(); ++b, ++n) s += dist(g[a], g[b]);
    st.within_by_speaker[corpus[g.front()].speaker] = n ? s / double(n) : 0.0;
  }
  st.within_mean = within_n ? within_sum / double(within_n) : 0.0;
  st.between_mean = between_n ? between_sum / double(between_n) : 0.0;

  std::vector<Embedding> centroids;
  for (const auto &g : groups) {
    Embedding c(corpus.dim(), 0.0);
    for (std::size_t i : g) axpy(1.0 / double(g.size()), corpus[i].embedding, c);
    centroids.push_back(std::move(c));
  }
  double cs = 0.0;
  std::size_t cn = 0;
  for (std::size_t a = 0; a < centroids.size(); ++a)
    for (std::size_t b = a + 1; b < centroids.size(); ++b, ++cn) {
      Vector d = centroids[a];
      axpy(-1.0, centroids[b], d);
      cs += norm2(d);
    }
  st.centroid_between_mean = cn ? cs / double(cn) : 0.0;
  return st;
}

double within_class_variance(const LabeledCorpus &corpus) {
  if (corpus.empty()) throw DegenerateInputError("within_class_variance: empty corpus");
  double s = 0.0;
  for (const auto &g : corpus.groups()) {
    Embedding c(corpus.dim(), 0.0);
    for (std::size_t i : g) axpy(1.0 / double(g.size()), corpus[i].embedding, c);
    for (std::size_t i : g) {
      Vector d = corpus[i].embedding;
      axpy(-1.0, c, d);
      s += dot(d, d);
    }
  }
  return s / double(corpus.size());
}

std::string format_report(const EvalReport &r, const std::string &method,
                          const std::string &scorer) {
  std::ostringstream os;
  os << "method " << method << '\n'
     << "scorer " << scorer << '\n'
     << "eer_percent " << format_double(r.eer_percent) << '\n'
     << "eer_threshold " << format_double(r.eer_threshold) << '\n'
     << "n_target " << r.n_target << '\n'
     << "n_nontarget " << r.n_nontarget << '\n';
  return os.str();
}

namespace {

std::string fixed2(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", x);
  return buf;
}

std::string method_label(Method m) {
  switch (m) {
    case Method::kNone: return "Baseline";
    case Method::kLda: return "LDA";
    case Method::kDda: return "DDA";
  }
  return "?";
}

}  // namespace

std::string format_grid(const std::vector<GridCell> &cells) {
  std::vector<Method> rows;
  for (const auto &c : cells)
    if (std::find(rows.begin(), rows.end(), c.method) == rows.end()) rows.push_back(c.method);
  std::ostringstream os;
  char line[128];
  std::snprintf(line, sizeof(line), "%-10s %8s %8s %8s\n", "Methods", "Cos", "Euc", "PLDA");
  os << "EER (%)\n" << line;
  for (Method m : rows) {
    std::string v[3] = {"-", "-", "-"};
    for (const auto &c : cells)
      if (c.method == m) v[int(c.scorer)] = fixed2(c.report.eer_percent);
    std::snprintf(line, sizeof(line), "%-10s %8s %8s %8s\n", method_label(m).c_str(),
                  v[0].c_str(), v[1].c_str(), v[2].c_str());
    os << line;
  }
  return os.str();
}

std::string format_dim_sweep(const std::vector<GridCell> &cells) {
  std::vector<std::size_t> dims;
  for (const auto &c : cells)
    if (std::find(dims.begin(), dims.end(), c.dim) == dims.end()) dims.push_back(c.dim);
  std::ostringstream os;
  os << "EER (%)\n" << "Scoring Compensation";
  for (auto d : dims) os << ' ' << std::to_string(d) + "dim";
  os << '\n';
  for (ScoreMethod s : {ScoreMethod::kCos, ScoreMethod::kEuc}) {
    for (Method m : {Method::kLda, Method::kDda}) {
      char head[64];
      std::snprintf(head, sizeof(head), "%-7s %-12s", s == ScoreMethod::kCos ? "Cos" : "Euc",
                    method_label(m).c_str());
      os << head;
      for (auto d : dims) {
        std::string v = "-";
        for (const auto &c : cells)
          if (c.method == m && c.scorer == s && c.dim == d) v = fixed2(c.report.eer_percent);
        char cell[32];
        std::snprintf(cell, sizeof(cell), " %7s", v.c_str());
        os << cell;
      }
      os << '\n';
    }
  }
  return os.str();
}

std::string grid_json(const std::vector<GridCell> &cells) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto &c : cells)
    arr.push_back({{"method", to_string(c.method)},
                   {"scorer", to_string(c.scorer)},
                   {"dim", c.dim},
                   {"eer_percent", c.report.eer_percent},
                   {"eer_threshold", c.report.eer_threshold},
                   {"n_target", c.report.n_target},
                   {"n_nontarget", c.report.n_nontarget}});
  return nlohmann::json{{"results", arr}}.dump(2) + "\n";
}

void write_distance_stats(const DistanceStats &s, const std::filesystem::path &path) {
  auto os = open_out(path);
  os << "within_mean " << format_double(s.within_mean) << '\n'
     << "between_mean " << format_double(s.between_mean) << '\n'
     << "centroid_between_mean " << format_double(s.centroid_between_mean) << '\n'
     << "within_between_ratio " << format_double(s.ratio()) << '\n';
  for (const auto &[spk, d] : s.within_by_speaker)
    os << "within " << spk << ' ' << format_double(d) << '\n';
  if (!os) throw Error("write failed: " + path.string());
}

DistanceStats export_embeddings(const Compensator &comp, const LabeledCorpus &corpus,
                                const std::filesystem::path &dump,
                                const std::filesystem::path &stats) {
  LabeledCorpus out = comp.apply(corpus);
  write_corpus(out, dump);
  DistanceStats st = distance_stats(out);
  write_distance_stats(st, stats);
  return st;
}

}  // namespace ivcomp
