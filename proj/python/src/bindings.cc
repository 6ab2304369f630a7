// python/src/bindings.cc

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


// Python bindings. Corpora cross the boundary as LabeledCorpus objects,
// vectors and matrices as float64 numpy arrays.

#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "ivcomp/dataset.h"
#include "ivcomp/dda.h"
#include "ivcomp/error.h"
#include "ivcomp/eval.h"
#include "ivcomp/lda.h"
#include "ivcomp/pipeline.h"
#include "ivcomp/plda.h"

namespace py = pybind11;
using namespace ivcomp;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Array to_array(const Vector &v) {
  Array a(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), a.mutable_data());
  return a;
}

Array to_array(const Matrix &m) {
  Array a({static_cast<py::ssize_t>(m.rows()), static_cast<py::ssize_t>(m.cols())});
  std::copy(m.data().begin(), m.data().end(), a.mutable_data());
  return a;
}

Vector to_vector(const Array &a) {
  if (a.ndim() != 1) throw DimensionError("expected a 1-D array");
  return Vector(a.data(), a.data() + a.size());
}

Matrix to_matrix(const Array &a) {
  if (a.ndim() != 2) throw DimensionError("expected a 2-D array");
  return Matrix(a.shape(0), a.shape(1), Vector(a.data(), a.data() + a.size()));
}

// Applies a per-vector map to a 1-D array or to every row of a 2-D array.
template <typename Fn>
Array map_rows(const Array &x, Fn &&fn) {
  if (x.ndim() == 1) return to_array(fn(std::span<const double>(x.data(), x.size())));
  Matrix in = to_matrix(x);
  if (in.rows() == 0) return to_array(Matrix(0, 0));
  std::vector<Vector> rows;
  for (std::size_t r = 0; r < in.rows(); ++r) rows.push_back(fn(in.row(r)));
  Matrix out(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    std::copy(rows[r].begin(), rows[r].end(), out.row(r).begin());
  return to_array(out);
}

LabeledCorpus corpus_from_arrays(const std::vector<std::string> &speakers,
                                 const std::vector<std::string> &utterances,
                                 const Array &x) {
  Matrix m = to_matrix(x);
  if (speakers.size() != m.rows() || utterances.size() != m.rows())
    throw DimensionError("speakers, utterances and rows of x differ in length");
  LabeledCorpus c(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    c.add(speakers[i], utterances[i], Vector(m.row(i).begin(), m.row(i).end()));
  return c;
}

TrialLabel label_of(bool target) { return target ? TrialLabel::kTarget : TrialLabel::kNontarget; }

ScoredTrials scored_from(const std::vector<double> &scores, const std::vector<bool> &target) {
  if (scores.size() != target.size())
    throw DimensionError("scores and labels differ in length");
  ScoredTrials s;
  s.scores = scores;
  for (bool t : target) s.labels.push_back(label_of(t));
  return s;
}

py::dict report_dict(const EvalReport &r) {
  py::dict d;
  d["eer_percent"] = r.eer_percent;
  d["eer_threshold"] = r.eer_threshold;
  d["n_target"] = r.n_target;
  d["n_nontarget"] = r.n_nontarget;
  return d;
}

py::list trials_list(const TrialList &trials) {
  py::list out;
  for (const auto &t : trials)
    out.append(py::make_tuple(t.model, t.test, t.label == TrialLabel::kTarget));
  return out;
}

TrialList trials_from(const std::vector<std::tuple<std::string, std::string, bool>> &v) {
  TrialList out;
  for (const auto &[m, t, target] : v) out.push_back({m, t, label_of(target)});
  return out;
}

py::list cells_list(const std::vector<GridCell> &cells) {
  py::list out;
  for (const auto &c : cells) {
    py::dict d = report_dict(c.report);
    d["method"] = to_string(c.method);
    d["scorer"] = to_string(c.scorer);
    d["dim"] = c.dim;
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_ivcomp, m) {
  m.doc() = "i-vector compensation back-ends: LDA, two-covariance PLDA and DDA";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DimensionError>(m, "DimensionError", error.ptr());
  auto numerical = py::register_exception<NumericalError>(m, "NumericalError", error.ptr());
  py::register_exception<NotPositiveDefiniteError>(m, "NotPositiveDefiniteError",
                                                   numerical.ptr());
  py::register_exception<SingularityError>(m, "SingularityError", numerical.ptr());
  py::register_exception<DegenerateInputError>(m, "DegenerateInputError", error.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", error.ptr());
  py::register_exception<FormatError>(m, "FormatError", error.ptr());
  py::register_exception<LookupError>(m, "LookupError", error.ptr());
  py::register_exception<LabelError>(m, "LabelError", error.ptr());
  py::register_exception<IdentifiabilityError>(m, "IdentifiabilityError", error.ptr());
  py::register_exception<BatchStatisticsError>(m, "BatchStatisticsError", error.ptr());

  // ------------------------------------------------------------ corpus
  py::class_<LabeledCorpus>(m, "LabeledCorpus")
      .def(py::init(&corpus_from_arrays), py::arg("speakers"), py::arg("utterances"),
           py::arg("x"))
      .def_property_readonly("dim", &LabeledCorpus::dim)
      .def("__len__", &LabeledCorpus::size)
      .def_property_readonly("num_speakers", &LabeledCorpus::num_speakers)
      .def_property_readonly("speaker_ids",
                             [](const LabeledCorpus &c) {
                               std::vector<std::string> v;
                               for (const auto &u : c.items()) v.push_back(u.speaker);
                               return v;
                             })
      .def_property_readonly("utterance_ids",
                             [](const LabeledCorpus &c) {
                               std::vector<std::string> v;
                               for (const auto &u : c.items()) v.push_back(u.utterance);
                               return v;
                             })
      .def_property_readonly("labels", &LabeledCorpus::labels)
      .def_property_readonly("x", [](const LabeledCorpus &c) { return to_array(to_matrix(c)); })
      .def("__eq__", [](const LabeledCorpus &a, const LabeledCorpus &b) { return a == b; });

  m.def("read_corpus", &read_corpus, py::arg("path"));
  m.def("write_corpus", &write_corpus, py::arg("corpus"), py::arg("path"));
  m.def("read_trials", [](const std::filesystem::path &p) { return trials_list(read_trials(p)); },
        py::arg("path"), "List of (model, test, is_target) tuples.");
  m.def(
      "write_trials",
      [](const std::vector<std::tuple<std::string, std::string, bool>> &t,
         const std::filesystem::path &p) { write_trials(trials_from(t), p); },
      py::arg("trials"), py::arg("path"));
  m.def("length_normalize",
        py::overload_cast<const LabeledCorpus &>(&length_normalize), py::arg("corpus"));

  py::class_<SynthConfig>(m, "SynthConfig")
      .def(py::init<>())
      .def_readwrite("dim", &SynthConfig::dim)
      .def_readwrite("n_speakers", &SynthConfig::n_speakers)
      .def_readwrite("utts_per_speaker", &SynthConfig::utts_per_speaker)
      .def_readwrite("speaker_std", &SynthConfig::speaker_std)
      .def_readwrite("channel_std", &SynthConfig::channel_std)
      .def_readwrite("residual_std", &SynthConfig::residual_std)
      .def_property(
          "distortion", [](const SynthConfig &c) { return std::string(to_string(c.distortion)); },
          [](SynthConfig &c, const std::string &s) { c.distortion = parse_distortion(s); })
      .def_readwrite("n_channels", &SynthConfig::n_channels)
      .def_readwrite("rotation_strength", &SynthConfig::rotation_strength)
      .def_readwrite("seed", &SynthConfig::seed)
      .def("validate", &SynthConfig::validate);

  m.def("generate_synthetic", &generate_synthetic, py::arg("config"));
  m.def(
      "generate_split",
      [](const SynthConfig &cfg, std::size_t eval_speakers, std::size_t enroll_utts,
         std::size_t test_utts) {
        SyntheticSplit s = generate_split(cfg, eval_speakers, enroll_utts, test_utts);
        py::dict d;
        d["train"] = s.train;
        d["enroll"] = s.enroll;
        d["test"] = s.test;
        d["trials"] = trials_list(s.trials);
        return d;
      },
      py::arg("config"), py::arg("eval_speakers"), py::arg("enroll_utts") = 5,
      py::arg("test_utts") = 15,
      "Dict with train, enroll and test corpora and the trial list.");

  // --------------------------------------------------------------- LDA
  py::class_<LdaModel>(m, "LdaModel")
      .def_property_readonly("projection", [](const LdaModel &l) { return to_array(l.projection); })
      .def_property_readonly("global_mean", [](const LdaModel &l) { return to_array(l.global_mean); })
      .def_property_readonly("eigenvalues", [](const LdaModel &l) { return to_array(l.eigenvalues); })
      .def_readonly("ridge", &LdaModel::ridge)
      .def("transform", [](const LdaModel &l, const Array &x) {
        return map_rows(x, [&](std::span<const double> v) { return lda_transform(l, v); });
      });
  m.def("fit_lda", &fit_lda, py::arg("corpus"), py::arg("out_dim"),
        py::arg("ridge") = std::nullopt);

  // -------------------------------------------------------------- PLDA
  py::class_<PldaModel>(m, "PldaModel")
      .def_property_readonly("mean", [](const PldaModel &p) { return to_array(p.mean); })
      .def_property_readonly("psi", [](const PldaModel &p) { return to_array(p.psi); })
      .def_property_readonly("diagonalizer",
                             [](const PldaModel &p) { return to_array(p.diagonalizer); })
      .def("covariances",
           [](const PldaModel &p) {
             auto [w, b] = plda_covariances(p);
             return py::make_tuple(to_array(w), to_array(b));
           },
           "(within, between) covariances in input space.")
      .def(
          "score",
          [](const PldaModel &p, const Array &enroll_mean, std::size_t n, const Array &test) {
            return plda_score(p, to_vector(enroll_mean), n, to_vector(test));
          },
          py::arg("enroll_mean"), py::arg("n_enroll"), py::arg("test"));
  m.def(
      "fit_plda",
      [](const LabeledCorpus &c, std::size_t iters) {
        PldaFit f = fit_plda(c, iters);
        return py::make_tuple(f.model, f.trace.log_likelihood);
      },
      py::arg("corpus"), py::arg("iters") = 10, "(model, log-likelihood per iteration).");

  // --------------------------------------------------------------- DDA
  py::class_<DdaArchitecture>(m, "DdaArchitecture")
      .def(py::init<>())
      .def(py::init([](std::size_t in, std::size_t hidden, std::size_t embed, std::size_t classes) {
             return DdaArchitecture{in, hidden, embed, classes};
           }),
           py::arg("input_dim"), py::arg("hidden_dim"), py::arg("embed_dim"),
           py::arg("n_classes"))
      .def_readwrite("input_dim", &DdaArchitecture::input_dim)
      .def_readwrite("hidden_dim", &DdaArchitecture::hidden_dim)
      .def_readwrite("embed_dim", &DdaArchitecture::embed_dim)
      .def_readwrite("n_classes", &DdaArchitecture::n_classes);

  py::class_<TrainConfig>(m, "TrainConfig")
      .def(py::init<>())
      .def_readwrite("lambda_", &TrainConfig::lambda)
      .def_readwrite("lr", &TrainConfig::lr)
      .def_readwrite("center_lr", &TrainConfig::center_lr)
      .def_readwrite("batch_size", &TrainConfig::batch_size)
      .def_readwrite("epochs", &TrainConfig::epochs)
      .def_property(
          "lr_schedule", [](const TrainConfig &c) { return std::string(to_string(c.lr_schedule)); },
          [](TrainConfig &c, const std::string &s) { c.lr_schedule = parse_lr_schedule(s); })
      .def_readwrite("decay_step", &TrainConfig::decay_step)
      .def_readwrite("decay_gamma", &TrainConfig::decay_gamma)
      .def_readwrite("momentum", &TrainConfig::momentum)
      .def_readwrite("seed", &TrainConfig::seed)
      .def("validate", &TrainConfig::validate);

  py::class_<DdaModel>(m, "DdaModel")
      .def_readonly("arch", &DdaModel::arch)
      .def_property_readonly("centers", [](const DdaModel &d) { return to_array(d.centers); })
      .def("compensate", [](const DdaModel &d, const Array &x) {
        return map_rows(x, [&](std::span<const double> v) { return compensate(d, v); });
      });

  py::class_<LossBreakdown>(m, "LossBreakdown")
      .def_readonly("total", &LossBreakdown::total)
      .def_readonly("softmax", &LossBreakdown::softmax)
      .def_readonly("center", &LossBreakdown::center)
      .def("__repr__", [](const LossBreakdown &l) {
        return "LossBreakdown(total=" + std::to_string(l.total) + ", softmax=" +
               std::to_string(l.softmax) + ", center=" + std::to_string(l.center) + ")";
      });

  m.def(
      "train_dda",
      [](const LabeledCorpus &c, const DdaArchitecture &arch, const TrainConfig &cfg) {
        DdaTrainResult r;
        {
          py::gil_scoped_release release;
          r = train_dda(c, arch, cfg);
        }
        return py::make_tuple(r.model, r.history);
      },
      py::arg("corpus"), py::arg("arch"), py::arg("config"), "(model, per-epoch losses).");

  // ------------------------------------------------------- scoring/EER
  m.def(
      "compute_eer",
      [](const std::vector<double> &scores, const std::vector<bool> &target) {
        return report_dict(compute_eer(scored_from(scores, target)));
      },
      py::arg("scores"), py::arg("is_target"));
  m.def(
      "roc_points",
      [](const std::vector<double> &scores, const std::vector<bool> &target) {
        std::vector<std::tuple<double, double, double>> out;
        for (const auto &p : roc_points(scored_from(scores, target)))
          out.emplace_back(p.threshold, p.far, p.frr);
        return out;
      },
      py::arg("scores"), py::arg("is_target"), "List of (threshold, far, frr).");

  // ---------------------------------------------------------- pipeline
  py::class_<BackendOptions>(m, "BackendOptions")
      .def(py::init<>())
      .def_readwrite("out_dim", &BackendOptions::out_dim)
      .def_readwrite("lda_ridge", &BackendOptions::lda_ridge)
      .def_readwrite("plda_iters", &BackendOptions::plda_iters)
      .def_readwrite("dda_hidden", &BackendOptions::dda_hidden)
      .def_readwrite("dda", &BackendOptions::dda)
      .def_readwrite("jobs", &BackendOptions::jobs);

  m.def(
      "run_grid",
      [](const LabeledCorpus &train, const LabeledCorpus &enroll, const LabeledCorpus &test,
         const std::vector<std::tuple<std::string, std::string, bool>> &trials,
         const BackendOptions &opts, const std::vector<std::string> &methods) {
        std::vector<Method> ms;
        for (const auto &s : methods) ms.push_back(parse_method(s));
        TrialList t = trials_from(trials);
        std::vector<GridCell> cells;
        {
          py::gil_scoped_release release;
          cells = run_grid(train, enroll, test, t, opts, ms);
        }
        return cells_list(cells);
      },
      py::arg("train"), py::arg("enroll"), py::arg("test"), py::arg("trials"),
      py::arg("options"), py::arg("methods") = std::vector<std::string>{"none", "lda", "dda"},
      "Every method crossed with cos, euc and plda scoring; one dict per cell.");

  m.def(
      "distance_stats",
      [](const LabeledCorpus &c) {
        DistanceStats s = distance_stats(c);
        py::dict d;
        d["within_mean"] = s.within_mean;
        d["between_mean"] = s.between_mean;
        d["centroid_between_mean"] = s.centroid_between_mean;
        d["within_between_ratio"] = s.ratio();
        d["within_by_speaker"] = s.within_by_speaker;
        return d;
      },
      py::arg("corpus"));

  m.def(
      "save_model",
      [](const py::object &model, const std::filesystem::path &path) {
        if (py::isinstance<LdaModel>(model)) save_model(model.cast<LdaModel>(), path);
        else if (py::isinstance<PldaModel>(model)) save_model(model.cast<PldaModel>(), path);
        else if (py::isinstance<DdaModel>(model)) save_model(model.cast<DdaModel>(), path);
        else throw ConfigError("save_model: not an LdaModel, PldaModel or DdaModel");
      },
      py::arg("model"), py::arg("path"));
  m.def(
      "load_model",
      [](const std::filesystem::path &path) -> py::object {
        return std::visit([](auto &&v) { return py::cast(std::move(v)); }, load_model(path));
      },
      py::arg("path"));
}
