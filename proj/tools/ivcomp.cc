// tools/ivcomp.cc

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


// ivcomp: generate synthetic i-vectors, train compensation back-ends
// (LDA, DDA) and PLDA, transform corpora, score trials and evaluate EER.
//
// Any long option can also be given as `name = value` in a flat config
// file (--config, or the IVCOMP_CONFIG environment variable); options on
// the command line win over the file, the file over built-in defaults.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ivcomp/dataset.h"
#include "ivcomp/error.h"
#include "ivcomp/pipeline.h"
#include "ivcomp/textio.h"

namespace fs = std::filesystem;
using namespace ivcomp;

namespace {

// Stage of the running command, for one-line diagnostics.
std::string g_stage = "startup";

void stage(const std::string &s) { g_stage = s; }

void log_line(const std::string &s) { std::cerr << s << '\n'; }

std::map<std::string, std::string> read_config(const fs::path &path) {
  std::map<std::string, std::string> kv;
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file " + path.string());
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError(path.string() + ": expected key = value", n);
    auto trim = [](std::string s) {
      const char *ws = " \t\r";
      s.erase(0, s.find_first_not_of(ws));
      s.erase(s.find_last_not_of(ws) + 1);
      return s;
    };
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ParseError(path.string() + ": empty key", n);
    kv[key] = value;
  }
  return kv;
}

// Fills options of `cmd` that were not given on the command line from the
// config file. Keys that no subcommand knows are rejected.
void apply_config(CLI::App &app, CLI::App &cmd,
                  const std::map<std::string, std::string> &kv) {
  std::set<std::string> known;
  for (CLI::App *sub : app.get_subcommands({}))
    for (const CLI::Option *o : sub->get_options())
      for (const auto &name : o->get_lnames()) known.insert(name);
  for (const auto &[key, value] : kv) {
    if (!known.count(key) && key != "config")
      throw ConfigError("config file: unknown key '" + key + "'");
    CLI::Option *opt = nullptr;
    for (CLI::Option *o : cmd.get_options())
      for (const auto &name : o->get_lnames())
        if (name == key) opt = o;
    if (opt == nullptr || opt->count() > 0) continue;
    if (opt->get_type_size() == 0) {
      // Flag: accept true/false style values.
      if (value == "true" || value == "1" || value == "yes" || value == "on")
        opt->add_result("true");
      else if (value == "false" || value == "0" || value == "no" || value == "off")
        continue;
      else
        throw ConfigError("config file: flag '" + key + "' needs true or false");
    } else {
      opt->add_result(value);
    }
    opt->run_callback();
  }
}

struct CorpusOptions {
  bool no_length_norm = false;
};

LabeledCorpus load_corpus(const std::string &path, const CorpusOptions &o,
                          const std::string &what) {
  stage("read " + what);
  LabeledCorpus c = read_corpus(path);
  if (o.no_length_norm) return c;
  stage("length-normalize " + what);
  return length_normalize(c);
}

std::vector<std::size_t> parse_dims(const std::string &s) {
  std::vector<std::size_t> dims;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) dims.push_back(parse_count(tok));
  if (dims.empty()) throw ConfigError("--dims: empty list");
  return dims;
}

void write_text(const fs::path &path, const std::string &text) {
  auto os = open_out(path);
  os << text;
  if (!os) throw Error("write failed: " + path.string());
}

// Options shared by train and eval --grid.
struct BackendFlags {
  std::size_t dim = 300;
  double ridge = -1.0;  // < 0: default
  std::size_t plda_iters = 10;
  std::size_t hidden = 0;
  double lambda = 0.01;
  double lr = 0.01;
  double center_lr = 0.1;
  std::size_t batch_size = 256;
  std::size_t epochs = 50;
  std::uint64_t seed = 1;
  std::string lr_schedule = "constant";
  std::size_t decay_step = 10;
  double decay_gamma = 0.5;
  double momentum = 0.0;
  std::size_t jobs = 1;

  void add_to(CLI::App &cmd) {
    cmd.add_option("--dim", dim, "Output dimension of LDA / DDA embedding")
        ->capture_default_str();
    cmd.add_option("--ridge", ridge, "LDA ridge (negative: 1e-6 tr(Sw)/dim)")
        ->capture_default_str();
    cmd.add_option("--plda-iters", plda_iters, "PLDA EM iterations")->capture_default_str();
    cmd.add_option("--hidden", hidden, "DDA hidden width (0: input dimension)")
        ->capture_default_str();
    cmd.add_option("--lambda", lambda, "DDA center-loss weight")->capture_default_str();
    cmd.add_option("--lr", lr, "DDA learning rate")->capture_default_str();
    cmd.add_option("--center-lr", center_lr, "DDA center update rate")->capture_default_str();
    cmd.add_option("--batch-size", batch_size, "DDA mini-batch size")->capture_default_str();
    cmd.add_option("--epochs", epochs, "DDA epochs")->capture_default_str();
    cmd.add_option("--seed", seed, "DDA seed")->capture_default_str();
    cmd.add_option("--lr-schedule", lr_schedule, "constant or step_decay")
        ->capture_default_str();
    cmd.add_option("--decay-step", decay_step, "Epochs per step decay")->capture_default_str();
    cmd.add_option("--decay-gamma", decay_gamma, "Step decay factor")->capture_default_str();
    cmd.add_option("--momentum", momentum, "DDA SGD momentum")->capture_default_str();
  }

  BackendOptions options() const {
    BackendOptions o;
    o.out_dim = dim;
    if (ridge >= 0.0) o.lda_ridge = ridge;
    o.plda_iters = plda_iters;
    o.dda_hidden = hidden;
    o.dda.lambda = lambda;
    o.dda.lr = lr;
    o.dda.center_lr = center_lr;
    o.dda.batch_size = batch_size;
    o.dda.epochs = epochs;
    o.dda.seed = seed;
    o.dda.lr_schedule = parse_lr_schedule(lr_schedule);
    o.dda.decay_step = decay_step;
    o.dda.decay_gamma = decay_gamma;
    o.dda.momentum = momentum;
    o.jobs = jobs;
    return o;
  }
};

// ---------------------------------------------------------------- gen

struct GenFlags {
  std::string out_dir;
  SynthConfig cfg;
  std::string distortion = "none";
  std::size_t eval_speakers = 10;
  std::size_t enroll_utts = 5;
  std::size_t test_utts = 15;
};

void cmd_gen(const GenFlags &f) {
  stage("gen: config");
  SynthConfig cfg = f.cfg;
  cfg.distortion = parse_distortion(f.distortion);
  cfg.validate();
  stage("gen: generate");
  SyntheticSplit s = generate_split(cfg, f.eval_speakers, f.enroll_utts, f.test_utts);
  stage("gen: write");
  const fs::path dir(f.out_dir);
  write_corpus(s.train, dir / "train.txt");
  if (f.eval_speakers > 0) {
    write_corpus(s.enroll, dir / "enroll.txt");
    write_corpus(s.test, dir / "test.txt");
    write_trials(s.trials, dir / "trials.txt");
  }
}

// -------------------------------------------------------------- train

struct TrainFlags {
  std::string method;
  std::string corpus;
  std::string model;
  std::string log;
  std::string compensator = "none";
  std::string compensator_model;
  CorpusOptions corpus_opts;
  BackendFlags backend;
};

void cmd_train(const TrainFlags &f) {
  stage("train: config");
  const BackendOptions opts = f.backend.options();
  opts.dda.validate();
  const std::string log_path = f.log.empty() ? f.model + ".log" : f.log;
  LabeledCorpus corpus = load_corpus(f.corpus, f.corpus_opts, "corpus");

  if (f.method == "plda") {
    stage("train: load compensator");
    Compensator comp = load_compensator(parse_method(f.compensator), f.compensator_model);
    stage("train: apply compensator");
    LabeledCorpus c = comp.apply(corpus);
    stage("train: fit plda");
    PldaFit fit = fit_plda(c, opts.plda_iters);
    stage("train: write model");
    save_model(fit.model, f.model);
    std::string log = "# iteration log_likelihood\n";
    for (std::size_t k = 0; k < fit.trace.log_likelihood.size(); ++k)
      log += std::to_string(k) + ' ' + format_double(fit.trace.log_likelihood[k]) + '\n';
    write_text(log_path, log);
    return;
  }

  const Method method = parse_method(f.method);
  if (method == Method::kNone) throw ConfigError("train: method none has nothing to train");
  std::string log = method == Method::kDda ? "# epoch total softmax center\n" : "";
  stage("train: fit " + f.method);
  Compensator comp;
  if (method == Method::kDda) {
    DdaArchitecture arch;
    arch.input_dim = corpus.dim();
    arch.hidden_dim = opts.dda_hidden ? opts.dda_hidden : corpus.dim();
    arch.embed_dim = opts.out_dim;
    arch.n_classes = corpus.num_speakers();
    DdaTrainResult r = train_dda(corpus, arch, opts.dda,
                                 [&](std::size_t epoch, const LossBreakdown &l) {
                                   log_line("dda: epoch " + std::to_string(epoch + 1) +
                                            " total " + format_double(l.total));
                                 });
    for (std::size_t e = 0; e < r.history.size(); ++e)
      log += std::to_string(e + 1) + ' ' + format_double(r.history[e].total) + ' ' +
             format_double(r.history[e].softmax) + ' ' +
             format_double(r.history[e].center) + '\n';
    comp = Compensator(std::move(r.model));
  } else {
    comp = train_compensator(method, corpus, opts, log_line);
    const LdaModel &m = *comp.lda();
    log += "# dimension eigenvalue\n";
    for (std::size_t k = 0; k < m.eigenvalues.size(); ++k)
      log += std::to_string(k + 1) + ' ' + format_double(m.eigenvalues[k]) + '\n';
  }
  stage("train: write model");
  if (comp.lda()) save_model(*comp.lda(), f.model);
  if (comp.dda()) save_model(*comp.dda(), f.model);
  write_text(log_path, log);
}

// ---------------------------------------------------------- transform

struct TransformFlags {
  std::string method = "none";
  std::string model;
  std::string corpus;
  std::string out;
  CorpusOptions corpus_opts;
};

void cmd_transform(const TransformFlags &f) {
  stage("transform: load model");
  Compensator comp = load_compensator(parse_method(f.method), f.model);
  LabeledCorpus c = load_corpus(f.corpus, f.corpus_opts, "corpus");
  stage("transform: apply");
  LabeledCorpus out = comp.apply(c);
  stage("transform: write");
  write_corpus(out, f.out);
}

// ------------------------------------------------------- score / eval

struct ScoreFlags {
  std::string method = "none";
  std::string model;
  std::string scorer = "cos";
  std::string plda;
  std::string enroll;
  std::string test;
  std::string trials;
  std::string scores;
  std::size_t jobs = 1;
  CorpusOptions corpus_opts;
};

struct EvalFlags {
  ScoreFlags score;
  std::string report;
  std::string summary;
  std::string roc;
  bool grid = false;
  std::string dims;
  std::string train;
  std::string lda_model;
  std::string dda_model;
  BackendFlags backend;
};

struct Scored {
  EvalOutcome outcome;
  std::size_t dim = 0;  // dimension of the scored embeddings
};

Scored score_only(const ScoreFlags &f, const std::string &cmd) {
  stage(cmd + ": load model");
  const Method method = parse_method(f.method);
  const ScoreMethod scorer = parse_score_method(f.scorer);
  Compensator comp = load_compensator(method, f.model);
  PldaModel plda;
  if (scorer == ScoreMethod::kPlda) {
    if (f.plda.empty()) throw ConfigError("scorer plda needs --plda");
    AnyModel any = load_model(f.plda);
    if (!std::holds_alternative<PldaModel>(any))
      throw FormatError(f.plda + " does not hold a PLDA model");
    plda = std::get<PldaModel>(any);
  }
  LabeledCorpus enroll = load_corpus(f.enroll, f.corpus_opts, "enroll corpus");
  LabeledCorpus test = load_corpus(f.test, f.corpus_opts, "test corpus");
  stage(cmd + ": read trials");
  TrialList trials = read_trials(f.trials);
  stage(cmd + ": compensate");
  EvalSet set = prepare_eval_set(comp, enroll, test);
  stage(cmd + ": score");
  Scored r;
  if (!set.tests.empty()) r.dim = set.tests.begin()->second.size();
  EvalOutcome &out = r.outcome;
  out.scored = score_trials(trials, set.models, set.tests,
                            Scorer{scorer, scorer == ScoreMethod::kPlda ? &plda : nullptr},
                            f.jobs);
  if (!f.scores.empty()) {
    stage(cmd + ": write scores");
    write_scored_trials(trials, out.scored, f.scores);
  }
  return r;
}

void cmd_score(const ScoreFlags &f) {
  if (f.scores.empty()) throw ConfigError("score needs --scores");
  score_only(f, "score");
}

void cmd_eval(const EvalFlags &f) {
  const ScoreFlags &s = f.score;
  if (f.grid || !f.dims.empty()) {
    stage("eval: config");
    if (f.train.empty()) throw ConfigError("--grid and --dims need --train");
    BackendOptions opts = f.backend.options();
    opts.jobs = s.jobs;
    opts.dda.validate();
    LabeledCorpus train = load_corpus(f.train, s.corpus_opts, "training corpus");
    LabeledCorpus enroll = load_corpus(s.enroll, s.corpus_opts, "enroll corpus");
    LabeledCorpus test = load_corpus(s.test, s.corpus_opts, "test corpus");
    stage("eval: read trials");
    TrialList trials = read_trials(s.trials);
    std::string table, json;
    if (f.grid) {
      stage("eval: load models");
      std::map<Method, Compensator> given;
      if (!f.lda_model.empty()) given[Method::kLda] = load_compensator(Method::kLda, f.lda_model);
      if (!f.dda_model.empty()) given[Method::kDda] = load_compensator(Method::kDda, f.dda_model);
      stage("eval: grid");
      auto cells = run_grid(train, enroll, test, trials, opts,
                            {Method::kNone, Method::kLda, Method::kDda}, given, log_line);
      table += format_grid(cells);
      json = grid_json(cells);
    }
    if (!f.dims.empty()) {
      stage("eval: dimension sweep");
      auto cells = run_dim_sweep(train, enroll, test, trials, opts, parse_dims(f.dims), log_line);
      if (!table.empty()) table += '\n';
      table += format_dim_sweep(cells);
      if (json.empty()) json = grid_json(cells);
    }
    stage("eval: write report");
    std::cout << table;
    if (!f.report.empty()) write_text(f.report, table);
    if (!f.summary.empty()) write_text(f.summary, json);
    return;
  }

  ScoreFlags sf = s;
  if (sf.scores.empty() && !f.report.empty()) sf.scores = f.report + ".scores";
  Scored r = score_only(sf, "eval");
  EvalOutcome &out = r.outcome;
  stage("eval: compute EER");
  out.report = compute_eer(out.scored);
  const std::string text = format_report(out.report, s.method, s.scorer);
  stage("eval: write report");
  std::cout << text;
  if (!f.report.empty()) write_text(f.report, text);
  if (!f.summary.empty())
    write_text(f.summary, grid_json({{parse_method(s.method), parse_score_method(s.scorer),
                                      r.dim, out.report}}));
  if (!f.roc.empty()) {
    std::string roc = "# threshold far frr\n";
    for (const auto &p : roc_points(out.scored))
      roc += format_double(p.threshold) + ' ' + format_double(p.far) + ' ' +
             format_double(p.frr) + '\n';
    write_text(f.roc, roc);
  }
}

// ------------------------------------------------------------- export

struct ExportFlags {
  std::string method = "none";
  std::string model;
  std::string corpus;
  std::string out;
  std::string stats;
  CorpusOptions corpus_opts;
};

void cmd_export(const ExportFlags &f) {
  stage("export: load model");
  Compensator comp = load_compensator(parse_method(f.method), f.model);
  LabeledCorpus c = load_corpus(f.corpus, f.corpus_opts, "corpus");
  stage("export: write");
  export_embeddings(comp, c, f.out, f.stats.empty() ? f.out + ".stats" : f.stats);
}

void add_model_options(CLI::App &cmd, std::string &method, std::string &model) {
  cmd.add_option("--method", method, "Compensation: none, lda or dda")->capture_default_str();
  cmd.add_option("--model", model, "Compensation model file (not needed for none)");
}

void add_norm_flag(CLI::App &cmd, CorpusOptions &o) {
  cmd.add_flag("--no-length-norm", o.no_length_norm,
               "Use input vectors as they are instead of unit length");
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"i-vector compensation back-ends: LDA, PLDA and DDA"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "Flat key = value config file")
      ->envname("IVCOMP_CONFIG");

  GenFlags gen;
  CLI::App *gen_cmd = app.add_subcommand("gen", "Generate a synthetic corpus and split");
  gen_cmd->add_option("--out-dir", gen.out_dir, "Output directory")->required();
  gen_cmd->add_option("--dim", gen.cfg.dim, "Vector dimension")->capture_default_str();
  gen_cmd->add_option("--speakers", gen.cfg.n_speakers, "Training speakers")
      ->capture_default_str();
  gen_cmd->add_option("--utts", gen.cfg.utts_per_speaker, "Utterances per training speaker")
      ->capture_default_str();
  gen_cmd->add_option("--speaker-std", gen.cfg.speaker_std)->capture_default_str();
  gen_cmd->add_option("--channel-std", gen.cfg.channel_std)->capture_default_str();
  gen_cmd->add_option("--residual-std", gen.cfg.residual_std)->capture_default_str();
  gen_cmd->add_option("--distortion", gen.distortion,
                      "none, rotation_per_channel or tanh_warp")
      ->capture_default_str();
  gen_cmd->add_option("--channels", gen.cfg.n_channels)->capture_default_str();
  gen_cmd->add_option("--rotation-strength", gen.cfg.rotation_strength)->capture_default_str();
  gen_cmd->add_option("--seed", gen.cfg.seed)->capture_default_str();
  gen_cmd->add_option("--eval-speakers", gen.eval_speakers, "Held-out speakers")
      ->capture_default_str();
  gen_cmd->add_option("--enroll-utts", gen.enroll_utts)->capture_default_str();
  gen_cmd->add_option("--test-utts", gen.test_utts)->capture_default_str();

  TrainFlags train;
  CLI::App *train_cmd = app.add_subcommand("train", "Train an LDA, DDA or PLDA model");
  train_cmd->add_option("--method", train.method, "lda, dda or plda")->required();
  train_cmd->add_option("--corpus", train.corpus, "Training corpus")->required();
  train_cmd->add_option("--model", train.model, "Output model file")->required();
  train_cmd->add_option("--log", train.log, "Training log (default: <model>.log)");
  train_cmd->add_option("--compensator", train.compensator,
                        "PLDA only: compensation applied before fitting")
      ->capture_default_str();
  train_cmd->add_option("--compensator-model", train.compensator_model);
  add_norm_flag(*train_cmd, train.corpus_opts);
  train.backend.add_to(*train_cmd);

  TransformFlags transform;
  CLI::App *transform_cmd = app.add_subcommand("transform", "Compensate a corpus");
  add_model_options(*transform_cmd, transform.method, transform.model);
  transform_cmd->add_option("--corpus", transform.corpus)->required();
  transform_cmd->add_option("--out", transform.out)->required();
  add_norm_flag(*transform_cmd, transform.corpus_opts);

  auto add_score_options = [](CLI::App &cmd, ScoreFlags &s) {
    add_model_options(cmd, s.method, s.model);
    cmd.add_option("--scorer", s.scorer, "cos, euc or plda")->capture_default_str();
    cmd.add_option("--plda", s.plda, "PLDA model for --scorer plda");
    cmd.add_option("--enroll", s.enroll, "Enrollment corpus")->required();
    cmd.add_option("--test", s.test, "Test corpus")->required();
    cmd.add_option("--trials", s.trials, "Trial list")->required();
    cmd.add_option("--scores", s.scores, "Scored trials output (eval default: <report>.scores)");
    cmd.add_option("--jobs", s.jobs, "Scoring threads")->capture_default_str();
    add_norm_flag(cmd, s.corpus_opts);
  };

  ScoreFlags score;
  CLI::App *score_cmd = app.add_subcommand("score", "Score a trial list");
  add_score_options(*score_cmd, score);

  EvalFlags eval;
  CLI::App *eval_cmd = app.add_subcommand("eval", "Score trials and report the EER");
  add_score_options(*eval_cmd, eval.score);
  eval_cmd->add_option("--report", eval.report, "Key-value report / table output");
  eval_cmd->add_option("--summary", eval.summary, "JSON summary output");
  eval_cmd->add_option("--roc", eval.roc, "ROC points output");
  eval_cmd->add_flag("--grid", eval.grid, "Every method crossed with every scorer");
  eval_cmd->add_option("--dims", eval.dims, "Dimension sweep, e.g. 200,300,400");
  eval_cmd->add_option("--train", eval.train, "Training corpus for --grid / --dims");
  eval_cmd->add_option("--lda-model", eval.lda_model, "Pre-trained LDA for --grid");
  eval_cmd->add_option("--dda-model", eval.dda_model, "Pre-trained DDA for --grid");
  eval.backend.add_to(*eval_cmd);

  ExportFlags exp;
  CLI::App *export_cmd =
      app.add_subcommand("export-embeddings", "Dump compensated embeddings and distances");
  add_model_options(*export_cmd, exp.method, exp.model);
  export_cmd->add_option("--corpus", exp.corpus)->required();
  export_cmd->add_option("--out", exp.out, "Embedding dump")->required();
  export_cmd->add_option("--stats", exp.stats, "Distance statistics (default: <out>.stats)");
  add_norm_flag(*export_cmd, exp.corpus_opts);

  // Required options may come from the config file, so they are checked
  // after it has been applied.
  std::vector<std::pair<CLI::App *, CLI::Option *>> required;
  for (CLI::App *sub : app.get_subcommands({}))
    for (CLI::Option *o : sub->get_options())
      if (o->get_required()) {
        required.emplace_back(sub, o);
        o->required(false);
      }

  try {
    stage("parse arguments");
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    std::cerr << "ivcomp: usage error: " << e.what() << '\n';
    return 2;
  }

  CLI::App *cmd = app.get_subcommands().front();
  try {
    if (!config_path.empty()) {
      stage("read config");
      apply_config(app, *cmd, read_config(config_path));
    }
    for (auto [sub, o] : required)
      if (sub == cmd && o->count() == 0) {
        std::cerr << "ivcomp: usage error: " << o->get_name() << " is required\n";
        return 2;
      }
    const std::string name = cmd->get_name();
    if (name == "gen") cmd_gen(gen);
    else if (name == "train") cmd_train(train);
    else if (name == "transform") cmd_transform(transform);
    else if (name == "score") cmd_score(score);
    else if (name == "eval") cmd_eval(eval);
    else if (name == "export-embeddings") cmd_export(exp);
  } catch (const std::exception &e) {
    std::string msg = e.what();
    for (char &c : msg)
      if (c == '\n') c = ' ';
    std::cerr << "ivcomp " << g_stage << ": error: " << msg << '\n';
    return 1;
  }
  return 0;
}
