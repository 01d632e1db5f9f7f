// SPDX-License-Identifier: Apache-2.0
//
// stcm-sense: sensing bounds for space-time-coding metasurface assisted MIMO
// Copyright (C) 2026 The stcm-sense authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "stcm/classification.hpp"

#include <algorithm>
#include <limits>

#include <fmt/format.h>

#include "stcm/rng.hpp"

namespace stcm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Affine score in s = r^2, common log(2r) term dropped.
struct Line {
  double c = -kInf;
  double w = 0.0;
  bool active = false;

  double at(double s) const { return active ? c - w * s : -kInf; }
};

std::array<Line, kNumClasses> score_lines(const ClassArray& scales, const ClassArray& priors, double var) {
  std::array<Line, kNumClasses> out;
  for (int i = 0; i < kNumClasses; ++i) {
    const double v = 2.0 * scales[i] * scales[i] + var;
    if (priors[i] > 0.0 && v > 0.0) out[i] = {std::log(priors[i]) - std::log(v), 1.0 / v, true};
  }
  return out;
}

int argmax(const ClassArray& x) {
  int best = 0;
  for (int i = 1; i < kNumClasses; ++i) {
    if (x[i] > x[best]) best = i;
  }
  return best;
}

ClassPosterior normalise(const ClassArray& log_scores, double r, double estimator_var) {
  ClassPosterior out;
  out.statistic = r;
  out.estimator_std = std::sqrt(estimator_var);
  const double top = *std::max_element(log_scores.begin(), log_scores.end());
  if (!std::isfinite(top)) throw Error(ErrorKind::InvalidConfig, "no hypothesis has positive likelihood");
  double z = 0.0;
  for (int i = 0; i < kNumClasses; ++i) {
    out.posteriors[i] = std::exp(log_scores[i] - top);
    z += out.posteriors[i];
  }
  for (double& p : out.posteriors) p /= z;
  out.map_label = argmax(log_scores);
  return out;
}

}  // namespace

void validate(const HypothesisSet& h) {
  double sum = 0.0;
  for (double p : h.priors) {
    if (p < 0.0) throw Error(ErrorKind::InvalidConfig, "negative prior");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw Error(ErrorKind::InvalidConfig, fmt::format("priors sum to {}", sum));
  if (h.rcs_sqrts[0] != 0.0 || h.rcs_sqrts[1] < 0.0 || !(h.rcs_sqrts[1] < h.rcs_sqrts[2])) {
    throw Error(ErrorKind::InvalidConfig, "RCS must satisfy 0 = sigma_0 <= sigma_1 < sigma_2");
  }
}

HypothesisSet default_hypotheses() {
  HypothesisSet h;
  h.rcs_sqrts = {0.0, rcs_amplitude_from_dbsm(1.0), rcs_amplitude_from_dbsm(17.0)};
  return h;
}

double rayleigh_scale(double sigma_i, double distance, double sigma_nu, const PathLossModel& loss) {
  return loss.gain(distance) * sigma_i * sigma_nu * std::sqrt(2.0 / kPi);
}

double log_likelihood_conditional(double r, double scale, double estimator_var) {
  const double v = 2.0 * scale * scale + estimator_var;
  return std::log(2.0 * r) - std::log(v) - r * r / v;
}

double likelihood_conditional(double r, double scale, double estimator_var) {
  if (r < 0.0) return 0.0;
  const double v = 2.0 * scale * scale + estimator_var;
  return 2.0 * r / v * std::exp(-r * r / v);
}

ClassPosterior posterior(double r, const ClassArray& scales, const ClassArray& priors, double estimator_var) {
  const auto lines = score_lines(scales, priors, estimator_var);
  ClassArray scores;
  for (int i = 0; i < kNumClasses; ++i) scores[i] = lines[i].at(r * r);
  return normalise(scores, r, estimator_var);
}

int DecisionRegions::label_at(double s) const {
  for (int i = 0; i < kNumClasses; ++i) {
    for (const Interval& iv : regions[i]) {
      if (s >= iv.lo && s < iv.hi) return i;
    }
  }
  return 0;
}

DecisionRegions decision_regions(const ClassArray& scales, const ClassArray& priors, double estimator_var) {
  const auto lines = score_lines(scales, priors, estimator_var);
  std::vector<double> cuts{0.0};
  for (int i = 0; i < kNumClasses; ++i) {
    for (int j = i + 1; j < kNumClasses; ++j) {
      if (!lines[i].active || !lines[j].active || lines[i].w == lines[j].w) continue;
      const double s = (lines[i].c - lines[j].c) / (lines[i].w - lines[j].w);
      if (s > 0.0 && std::isfinite(s)) cuts.push_back(s);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  cuts.push_back(kInf);

  auto label = [&](double s) {
    ClassArray sc;
    for (int i = 0; i < kNumClasses; ++i) sc[i] = lines[i].at(s);
    return argmax(sc);
  };

  DecisionRegions out;
  int current = -1;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double lo = cuts[k];
    const double hi = cuts[k + 1];
    const double probe = std::isfinite(hi) ? 0.5 * (lo + hi) : 2.0 * lo + 1.0;
    const int l = label(probe);
    if (l == current) {
      out.regions[l].back().hi = hi;
    } else {
      out.regions[l].push_back({lo, hi});
      current = l;
    }
  }
  return out;
}

ClassArray ClassificationModel::scales() const {
  ClassArray s;
  for (int i = 0; i < kNumClasses; ++i) s[i] = gain * hypotheses.rcs_sqrts[i] * sigma_nu * std::sqrt(2.0 / kPi);
  return s;
}

double ClassificationModel::truth_power(int j) const {
  if (truth == TruthModel::PathGain) {
    const double a = gain * hypotheses.rcs_sqrts[j] * sigma_nu;
    return a * a;
  }
  const double s = scales()[j];
  return 2.0 * s * s;
}

double estimator_var_for_snr(const ClassificationModel& m, int true_class, double snr_linear) {
  if (!(snr_linear > 0.0)) throw Error(ErrorKind::OutOfRange, "SNR must be positive");
  const double p = m.truth_power(true_class);
  if (!(p > 0.0)) throw Error(ErrorKind::OutOfRange, "SNR is undefined for the absent hypothesis");
  return p / snr_linear;
}

ClassArray confusion_exact(const ClassificationModel& m, int true_class) {
  const DecisionRegions reg = decision_regions(m.scales(), m.hypotheses.priors, m.estimator_var);
  // |beta_hat|^2 is exponential with mean v_true under every truth model.
  const double v = m.truth_power(true_class) + m.estimator_var;
  ClassArray p{};
  for (int i = 0; i < kNumClasses; ++i) {
    for (const Interval& iv : reg.regions[i]) {
      const double upper = std::isfinite(iv.hi) ? std::exp(-iv.hi / v) : 0.0;
      p[i] += std::exp(-iv.lo / v) - upper;
    }
  }
  return p;
}

Eigen::Matrix3d confusion_matrix_exact(const ClassificationModel& m) {
  Eigen::Matrix3d C;
  for (int j = 0; j < kNumClasses; ++j) {
    ClassificationModel mj = m;
    const ClassArray row = confusion_exact(mj, j);
    for (int i = 0; i < kNumClasses; ++i) C(j, i) = row[i];
  }
  return C;
}

ConfusionEstimate confusion_monte_carlo(const ClassificationModel& m, int true_class, std::int64_t n_trials,
                                        std::uint64_t seed, std::uint64_t stream_base) {
  if (n_trials < 1) throw Error(ErrorKind::OutOfRange, "n_trials must be at least 1");
  const DecisionRegions reg = decision_regions(m.scales(), m.hypotheses.priors, m.estimator_var);
  const double beta_power = m.truth_power(true_class);
  std::array<std::int64_t, kNumClasses> counts{};
  for (std::int64_t t = 0; t < n_trials; ++t) {
    RandomStream rs(seed, StreamDomain::ClassificationTrial, stream_base + static_cast<std::uint64_t>(t));
    const cdouble beta = beta_power > 0.0 ? rs.complex_normal(beta_power) : cdouble(0.0);
    const cdouble beta_hat = beta + rs.complex_normal(m.estimator_var);
    ++counts[reg.label_at(std::norm(beta_hat))];
  }
  ConfusionEstimate out;
  out.n_trials = n_trials;
  for (int i = 0; i < kNumClasses; ++i) {
    out.p[i] = static_cast<double>(counts[i]) / static_cast<double>(n_trials);
    out.std_error[i] = std::sqrt(out.p[i] * (1.0 - out.p[i]) / static_cast<double>(n_trials));
  }
  return out;
}

ClassPosterior fuse(double r_direct, double r_stcm, const ClassArray& scales_direct, const ClassArray& scales_stcm,
                    double var_direct, double var_stcm, const ClassArray& priors) {
  const auto a = score_lines(scales_direct, priors, var_direct);
  const ClassArray flat{1.0, 1.0, 1.0};
  const auto b = score_lines(scales_stcm, flat, var_stcm);
  ClassArray scores;
  for (int i = 0; i < kNumClasses; ++i) {
    scores[i] = b[i].active ? a[i].at(r_direct * r_direct) + b[i].at(r_stcm * r_stcm) : -kInf;
  }
  return normalise(scores, r_direct, var_direct);
}

}  // namespace stcm
