// src/plda.cc

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

#include "ivcomp/plda.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>

#include "ivcomp/error.h"
#include "ivcomp/textio.h"

namespace ivcomp {

namespace {

const double kLog2Pi = std::log(2.0 * std::numbers::pi);

}  // namespace

Vector PldaModel::transform(std::span<const double> x) const {
  if (x.size() != dim())
    throw DimensionError("plda: input has dimension " + std::to_string(x.size()) +
                         ", model expects " + std::to_string(dim()));
  Vector c(x.begin(), x.end());
  axpy(-1.0, mean, c);
  return diagonalizer * c;
}

PldaStats plda_stats(const LabeledCorpus &corpus) {
  if (corpus.empty()) throw DegenerateInputError("plda: empty corpus");
  const std::size_t d = corpus.dim();
  PldaStats st;
  st.dim = d;
  st.total = corpus.size();
  st.mean.assign(d, 0.0);
  for (const auto &u : corpus.items()) axpy(1.0 / st.total, u.embedding, st.mean);
  st.offset_scatter = Matrix(d, d);
  Vector diff(d);
  for (const auto &group : corpus.groups()) {
    Embedding m(d, 0.0);
    for (std::size_t i : group) axpy(1.0 / group.size(), corpus[i].embedding, m);
    for (std::size_t i : group) {
      for (std::size_t k = 0; k < d; ++k) diff[k] = corpus[i].embedding[k] - m[k];
      add_outer(st.offset_scatter, 1.0, diff);
    }
    axpy(-1.0, st.mean, m);
    st.class_means.push_back(std::move(m));
    st.class_counts.push_back(group.size());
  }
  return st;
}

double plda_log_likelihood(const PldaStats &st, const Matrix &within,
                           const Matrix &between) {
  const double d = double(st.dim);
  const double within_logdet = spd_logdet(within);
  const Matrix within_inv = spd_inverse(within);
  double within_trace = 0.0;
  for (std::size_t i = 0; i < st.dim; ++i)
    within_trace += dot(within_inv.row(i), st.offset_scatter.row(i));
  const double within_dof = double(st.total) - double(st.class_means.size());
  double ll = -0.5 * (within_dof * (within_logdet + d * kLog2Pi) + within_trace);

  // Class means: m ~ N(0, between + within / n), with a Jacobian term
  // n^(-d/2) from separating each mean from its within-class offsets.
  std::map<std::size_t, std::pair<Matrix, double>> by_count;
  for (std::size_t c = 0; c < st.class_means.size(); ++c) {
    const std::size_t n = st.class_counts[c];
    auto it = by_count.find(n);
    if (it == by_count.end()) {
      Matrix cov = between + within * (1.0 / double(n));
      it = by_count.emplace(n, std::make_pair(spd_inverse(cov), spd_logdet(cov))).first;
    }
    const auto &[inv, logdet] = it->second;
    Vector tmp = inv * st.class_means[c];
    ll += -0.5 * (logdet + d * kLog2Pi + dot(st.class_means[c], tmp)) -
          0.5 * d * std::log(double(n));
  }
  return ll;
}

PldaModel make_plda_model(const Embedding &mean, const Matrix &within,
                          const Matrix &between) {
  Matrix linv = invert_lower(cholesky(within));
  Matrix m = symmetrize(linv * mul_nt(between, linv));
  EigenResult eig = sym_eig(m);
  PldaModel model;
  model.mean = mean;
  model.diagonalizer = mul_tn(eig.vectors, linv);
  model.psi = eig.values;
  for (double &p : model.psi) p = std::max(p, 0.0);
  return model;
}

std::pair<Matrix, Matrix> plda_covariances(const PldaModel &model) {
  const Matrix &t = model.diagonalizer;
  // T W T^T = I  =>  W = (T^T T)^-1.
  Matrix within = spd_inverse(symmetrize(mul_tn(t, t)));
  Matrix wt = mul_nt(within, t);  // W T^T
  Matrix scaled = wt;
  for (std::size_t r = 0; r < scaled.rows(); ++r)
    for (std::size_t c = 0; c < scaled.cols(); ++c) scaled(r, c) *= model.psi[c];
  Matrix between = symmetrize(mul_nt(scaled, wt));
  return {within, between};
}

PldaFit fit_plda(const LabeledCorpus &corpus, std::size_t iters) {
  if (corpus.num_speakers() < 2)
    throw DegenerateInputError("fit_plda: need at least 2 speakers, got " +
                               std::to_string(corpus.num_speakers()));
  PldaStats st = plda_stats(corpus);
  if (std::none_of(st.class_counts.begin(), st.class_counts.end(),
                   [](std::size_t n) { return n >= 2; }))
    throw IdentifiabilityError(
        "fit_plda: every speaker has a single utterance; the within-speaker "
        "covariance is not identifiable");

  const std::size_t d = st.dim;
  const std::size_t n_classes = st.class_means.size();
  Matrix total(d, d);
  {
    Matrix between_scatter(d, d);
    for (std::size_t c = 0; c < n_classes; ++c)
      add_outer(between_scatter, double(st.class_counts[c]), st.class_means[c]);
    total = (st.offset_scatter + between_scatter) * (1.0 / double(st.total));
  }
  Matrix within = total * 0.5;
  Matrix between = total * 0.5;

  PldaFit fit;
  try {
    fit.trace.log_likelihood.push_back(plda_log_likelihood(st, within, between));
    for (std::size_t it = 0; it < iters; ++it) {
      const Matrix within_inv = spd_inverse(within);
      const Matrix between_inv = spd_inverse(between);
      Matrix between_acc(d, d);
      Matrix within_acc = st.offset_scatter;
      // Posterior over the speaker offset given the class mean m of n
      // utterances: precision between^-1 + n within^-1, mean
      // cov * n within^-1 m.
      std::map<std::size_t, Matrix> posterior_cov;
      for (std::size_t c = 0; c < n_classes; ++c) {
        const std::size_t n = st.class_counts[c];
        auto pc = posterior_cov.find(n);
        if (pc == posterior_cov.end())
          pc = posterior_cov
                   .emplace(n, spd_inverse(between_inv + within_inv * double(n)))
                   .first;
        const Matrix &cov = pc->second;
        const Embedding &m = st.class_means[c];
        Vector w = cov * (within_inv * m);
        for (double &x : w) x *= double(n);
        Vector resid = m;
        axpy(-1.0, w, resid);
        add_outer(between_acc, 1.0, w);
        between_acc += cov;
        add_outer(within_acc, double(n), resid);
        within_acc += cov * double(n);
      }
      between = symmetrize(between_acc * (1.0 / double(n_classes)));
      within = symmetrize(within_acc * (1.0 / double(st.total)));
      fit.trace.log_likelihood.push_back(plda_log_likelihood(st, within, between));
    }
    fit.model = make_plda_model(st.mean, within, between);
  } catch (const NotPositiveDefiniteError &e) {
    throw NumericalError(std::string("fit_plda: covariance collapsed: ") + e.what());
  }
  fit.within = within;
  fit.between = between;
  return fit;
}

double plda_score_transformed(std::span<const double> psi,
                              std::span<const double> enroll, std::size_t n_enroll,
                              std::span<const double> test) {
  if (enroll.size() != psi.size() || test.size() != psi.size())
    throw DimensionError("plda_score: dimension mismatch");
  if (n_enroll < 1) throw ConfigError("plda_score: n_enroll must be >= 1");
  const double n = double(n_enroll);
  double same = 0.0, diff = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    double mean = n * psi[i] / (n * psi[i] + 1.0) * enroll[i];
    double var = 1.0 + psi[i] / (n * psi[i] + 1.0);
    double e = test[i] - mean;
    same += -0.5 * (std::log(var) + kLog2Pi + e * e / var);
    double var0 = 1.0 + psi[i];
    diff += -0.5 * (std::log(var0) + kLog2Pi + test[i] * test[i] / var0);
  }
  return same - diff;
}

double plda_score(const PldaModel &model, std::span<const double> enroll_mean,
                  std::size_t n_enroll, std::span<const double> test) {
  return plda_score_transformed(model.psi, model.transform(enroll_mean), n_enroll,
                                model.transform(test));
}

void write_plda(const PldaModel &model, std::ostream &os) {
  os << "ivcomp-plda 1\n";
  write_vector(os, "mean", model.mean);
  write_vector(os, "psi", model.psi);
  write_matrix(os, "diagonalizer", model.diagonalizer);
}

PldaModel read_plda(std::istream &is) {
  TokenReader in(is);
  in.expect("ivcomp-plda");
  in.expect("1");
  PldaModel m;
  m.mean = in.next_vector("mean");
  m.psi = in.next_vector("psi");
  m.diagonalizer = in.next_matrix("diagonalizer");
  const std::size_t d = m.mean.size();
  if (m.psi.size() != d || m.diagonalizer.rows() != d || m.diagonalizer.cols() != d)
    throw FormatError("plda model: inconsistent dimensions");
  return m;
}

}  // namespace ivcomp
