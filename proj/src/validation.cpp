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


#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "stcm/experiments.hpp"
#include "stcm/rng.hpp"

namespace stcm {

namespace {

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

CheckResult check(std::string name, bool ok, std::string detail) { return {std::move(name), ok, std::move(detail)}; }

CheckResult geometry_roundtrip(const ExperimentConfig& cfg) {
  RandomStream rs(cfg.seed, StreamDomain::Validation, 1);
  const PlaneBounds& b = cfg.link.geometry.bounds();
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const Vec3 q(b.x_min + (b.x_max - b.x_min) * rs.uniform(), 0.0, 1.0 + (b.z_max - 2.0) * rs.uniform());
    const Vec3 r = position_from_angles(angles_from_position(q, cfg.link.geometry), cfg.link.geometry);
    worst = std::max(worst, (r - q).norm());
  }
  return check("geometry_roundtrip", worst < 1e-8, fmt::format("max error {:.3g} m", worst));
}

CheckResult closed_form_alpha(const ExperimentConfig& cfg) {
  const LinkModel& l = cfg.link;
  const double lambda = l.carrier_wavelength();
  double worst = 0.0;
  for (double deg : {-60.0, -20.0, 5.0, 35.0, 70.0}) {
    const double a = deg2rad(deg);
    const cdouble g = path_gain(80.0, 1.0, 1.0, l.loss);
    const FisherMatrix F = fim_sb_single(a, g, l.bs, l.pilots.symbols, l.noise_power, lambda);
    const double inv = F.entries.inverse()(0, 0);
    worst = std::max(worst, rel_err(crb_alpha_closed(a, g, l.bs, l.pilots.symbols, l.noise_power, lambda), inv));
  }
  return check("crb_alpha_closed_vs_inverse", worst < 1e-6, fmt::format("max rel error {:.3g}", worst));
}

CheckResult closed_form_xi(const ExperimentConfig& cfg, const HarmonicResponse& stcm) {
  const LinkModel& l = cfg.link;
  const double lambda = l.carrier_wavelength();
  double worst = 0.0;
  for (double deg : {-50.0, -10.0, 25.0, 60.0}) {
    const double xi = deg2rad(deg);
    const double a = deg2rad(0.5 * deg + 10.0);
    const cdouble g = path_gain(180.0, 1.0, 1.0, l.loss);
    const FisherMatrix F = fim_db_single(xi, a, g, l.bs, stcm, l.pilots.symbols, l.noise_power, lambda);
    const double inv = F.entries.inverse()(0, 0);
    worst = std::max(worst, rel_err(crb_xi_closed(xi, a, g, l.bs, stcm, l.pilots.symbols, l.noise_power, lambda), inv));
  }
  return check("crb_xi_closed_vs_inverse", worst < 1e-6, fmt::format("max rel error {:.3g}", worst));
}

CheckResult derivative_fd(const ExperimentConfig& cfg, const HarmonicResponse& stcm) {
  const LinkModel& l = cfg.link;
  const double lambda = l.carrier_wavelength();
  const MatrixXc& X = l.pilots.symbols;
  const double h = 1e-6;
  const double a = deg2rad(23.0);
  const double xi = deg2rad(-31.0);
  const VectorXc dsb = sb_derivatives(a, 1.0, l.bs, X, lambda)[0];
  const VectorXc fsb = (sb_regressor(a + h, l.bs, X, lambda) - sb_regressor(a - h, l.bs, X, lambda)) / (2.0 * h);
  const VectorXc ddb = db_derivatives(xi, a, 1.0, l.bs, stcm, X, lambda)[0];
  const VectorXc fdb =
      (db_regressor(a, xi + h, l.bs, stcm, X, lambda) - db_regressor(a, xi - h, l.bs, stcm, X, lambda)) / (2.0 * h);
  const double e1 = (dsb - fsb).norm() / dsb.norm();
  const double e2 = (ddb - fdb).norm() / ddb.norm();
  return check("derivatives_vs_finite_difference", e1 < 1e-6 && e2 < 1e-6,
               fmt::format("sb {:.3g}, db {:.3g}", e1, e2));
}

CheckResult two_route_fim(const ExperimentConfig& cfg, const HarmonicResponse& stcm) {
  std::vector<ScatterPoint> scene = {make_scatter_point({-20.0, 0.0, 55.0}, ScatterKind::ObjectLike, 0.0)};
  for (const ScatterPoint& p : fixed_targets(cfg, TargetLayout::Ten)) scene.push_back(p);
  double worst = 0.0;
  for (PathKind k : {PathKind::SB, PathKind::DB}) {
    const FisherMatrix a = fim_multi_target(scene, k, cfg.link, stcm);
    const FisherMatrix b = fim_multi_target_reference(scene, k, cfg.link, stcm);
    worst = std::max(worst, (a.entries - b.entries).norm() / b.entries.norm());
  }
  return check("fim_factorized_vs_stacked", worst < 1e-10, fmt::format("max rel error {:.3g}", worst));
}

CheckResult parseval(const ExperimentConfig& cfg) {
  double worst = 0.0;
  for (int n = 0; n < cfg.link.code.elements(); n += 9) {
    double s = 0.0;
    for (int m = -4000; m <= 4000; ++m) s += std::norm(fourier_coefficient(cfg.link.code, n, m));
    double power = cfg.link.code.entries.row(n).squaredNorm() / cfg.link.code.code_length();
    worst = std::max(worst, std::abs(s - power));
  }
  return check("harmonic_parseval", worst < 2e-3, fmt::format("max deficit {:.3g}", worst));
}

CheckResult marcum_limits() {
  double worst = 0.0;
  for (double b : {0.1, 1.0, 3.0, 6.0}) worst = std::max(worst, std::abs(marcum_q1(0.0, b) - std::exp(-0.5 * b * b)));
  for (double a : {0.0, 2.0, 10.0}) worst = std::max(worst, std::abs(marcum_q1(a, 0.0) - 1.0));
  return check("marcum_q_limits", worst < 1e-12, fmt::format("max error {:.3g}", worst));
}

CheckResult pd_floor(const ExperimentConfig& cfg) {
  const double g = threshold_from_pfa(cfg.p_fa);
  const double pd = pd_marginal(0.0, 3.0, 2.0, g);
  return check("pd_at_zero_scale_equals_pfa", rel_err(pd, cfg.p_fa) < 1e-9, fmt::format("p_D {:.6g}", pd));
}

CheckResult posterior_regions(const ExperimentConfig& cfg) {
  const ClassArray scales = {0.0, 1.0, 3.0};
  const double var = 0.5;
  const DecisionRegions reg = decision_regions(scales, cfg.hypotheses.priors, var);
  double norm_err = 0.0;
  int mismatches = 0;
  for (int i = 0; i < 2000; ++i) {
    const double r = 0.005 * i;
    const ClassPosterior p = posterior(r, scales, cfg.hypotheses.priors, var);
    norm_err = std::max(norm_err, std::abs(p.posteriors[0] + p.posteriors[1] + p.posteriors[2] - 1.0));
    if (reg.label_at(r * r) != p.map_label) ++mismatches;
  }
  return check("posterior_normalized_regions_agree", norm_err < 1e-12 && mismatches == 0,
               fmt::format("norm error {:.3g}, region mismatches {}", norm_err, mismatches));
}

CheckResult rng_determinism(const ExperimentConfig& cfg) {
  RandomStream a(cfg.seed, StreamDomain::Validation, 7);
  RandomStream b(cfg.seed, StreamDomain::Validation, 7);
  bool same = true;
  for (int i = 0; i < 1000; ++i) same = same && a.next_u64() == b.next_u64();
  const PhiloxCounter kat = philox4x32_10({0, 0, 0, 0}, {0, 0});
  const bool kat_ok = kat == PhiloxCounter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u};
  return check("rng_determinism", same && kat_ok, fmt::format("replay {}, known answer {}", same, kat_ok));
}

}  // namespace

std::vector<CheckResult> run_validation(const ExperimentConfig& cfg) {
  const HarmonicResponse stcm = cfg.link.stcm_response();
  std::vector<CheckResult> out;
  auto guarded = [&](const char* name, auto&& fn) {
    try {
      out.push_back(fn());
    } catch (const std::exception& e) {
      out.push_back({name, false, e.what()});
    }
  };
  guarded("geometry_roundtrip", [&] { return geometry_roundtrip(cfg); });
  guarded("crb_alpha_closed_vs_inverse", [&] { return closed_form_alpha(cfg); });
  guarded("crb_xi_closed_vs_inverse", [&] { return closed_form_xi(cfg, stcm); });
  guarded("derivatives_vs_finite_difference", [&] { return derivative_fd(cfg, stcm); });
  guarded("fim_factorized_vs_stacked", [&] { return two_route_fim(cfg, stcm); });
  guarded("harmonic_parseval", [&] { return parseval(cfg); });
  guarded("marcum_q_limits", [] { return marcum_limits(); });
  guarded("pd_at_zero_scale_equals_pfa", [&] { return pd_floor(cfg); });
  guarded("posterior_normalized_regions_agree", [&] { return posterior_regions(cfg); });
  guarded("rng_determinism", [&] { return rng_determinism(cfg); });
  return out;
}

}  // namespace stcm
