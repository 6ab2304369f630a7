// tests/oracles.h

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


// Independent reference computations used by the unit tests and the
// acceptance run.

#ifndef IVCOMP_TESTS_ORACLES_H_
#define IVCOMP_TESTS_ORACLES_H_

#include <cmath>
#include <numbers>
#include <set>
#include <vector>

#include "ivcomp/eval.h"

namespace ivcomp::testing {

inline double normal_pdf(double x, double mean, double var) {
  return std::exp(-0.5 * (x - mean) * (x - mean) / var) /
         std::sqrt(2.0 * std::numbers::pi * var);
}

// Simpson's rule over the prior support of the latent speaker offset v.
template <typename F>
inline double integrate_prior(double psi, F &&f) {
  const int n = 8000;
  const double half = 14.0 * std::sqrt(psi);
  const double h = 2.0 * half / n;
  double s = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double v = -half + i * h;
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s += w * normal_pdf(v, 0.0, psi) * f(v);
  }
  return s * h / 3.0;
}

// LLR of a 1-D model by direct integration over v: the enrollment mean of
// n utterances is N(v, 1/n), the test utterance N(v, 1).
inline double quadrature_llr(double psi, std::size_t n, double ubar, double test) {
  const double vn = 1.0 / double(n);
  double same = integrate_prior(psi, [&](double v) {
    return normal_pdf(ubar, v, vn) * normal_pdf(test, v, 1.0);
  });
  double p_enroll = integrate_prior(psi, [&](double v) { return normal_pdf(ubar, v, vn); });
  double p_test = integrate_prior(psi, [&](double v) { return normal_pdf(test, v, 1.0); });
  return std::log(same) - std::log(p_enroll) - std::log(p_test);
}

// Exhaustive sweep: FAR/FRR evaluated by direct counting below the lowest
// score, at every midpoint between consecutive distinct scores and above
// the highest score, then interpolated at the FAR - FRR sign change.
inline double oracle_eer(const ScoredTrials &s) {
  std::set<double> distinct(s.scores.begin(), s.scores.end());
  std::vector<double> u(distinct.begin(), distinct.end());
  std::vector<double> thresholds{u.front() - 1.0};
  for (std::size_t k = 0; k + 1 < u.size(); ++k) thresholds.push_back((u[k] + u[k + 1]) / 2);
  thresholds.push_back(u.back() + 1.0);

  std::vector<double> far, frr;
  for (double t : thresholds) {
    std::size_t fa = 0, fr = 0, nt = 0, nn = 0;
    for (std::size_t i = 0; i < s.scores.size(); ++i) {
      if (s.labels[i] == TrialLabel::kTarget) {
        ++nt;
        fr += s.scores[i] < t;
      } else {
        ++nn;
        fa += s.scores[i] >= t;
      }
    }
    far.push_back(double(fa) / double(nn));
    frr.push_back(double(fr) / double(nt));
  }
  for (std::size_t k = 0; k + 1 < far.size(); ++k) {
    const double d0 = far[k] - frr[k], d1 = far[k + 1] - frr[k + 1];
    if (d0 == 0.0) return 100.0 * far[k];
    if (d0 > 0.0 && d1 <= 0.0) {
      const double a = d0 / (d0 - d1);
      return 100.0 * (far[k] + a * (far[k + 1] - far[k]));
    }
  }
  return -1.0;
}

}  // namespace ivcomp::testing

#endif  // IVCOMP_TESTS_ORACLES_H_
