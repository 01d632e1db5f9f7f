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

#include "stcm/sweep.hpp"

#include <cmath>
#include <limits>

#include <omp.h>

namespace stcm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Each index writes only its own slot, so the parallel loop is a pure
// reordering of the serial one.
template <class Kernel>
void for_each_index(std::size_t n, Execution ex, Kernel&& kernel) {
  const long long count = static_cast<long long>(n);
  if (ex == Execution::Serial) {
    for (long long i = 0; i < count; ++i) kernel(static_cast<std::size_t>(i));
    return;
  }
#pragma omp parallel for schedule(dynamic, 32)
  for (long long i = 0; i < count; ++i) kernel(static_cast<std::size_t>(i));
}

GridMap empty_map(std::size_t n) {
  GridMap m;
  m.value.assign(n, kInf);
  m.masked.assign(n, 1);
  return m;
}

}  // namespace

GridSpec::GridSpec(const PlaneBounds& bounds, double resolution) : bounds_(bounds), resolution_(resolution) {
  if (!(resolution > 0.0)) throw Error(ErrorKind::InvalidConfig, "grid resolution must be positive");
  nx_ = static_cast<int>(std::floor((bounds.x_max - bounds.x_min) / resolution + 1e-9)) + 1;
  nz_ = static_cast<int>(std::floor((bounds.z_max - bounds.z_min) / resolution + 1e-9)) + 1;
}

Vec3 GridSpec::point(std::size_t index) const {
  const std::size_t ix = index % static_cast<std::size_t>(nx_);
  const std::size_t iz = index / static_cast<std::size_t>(nx_);
  return {bounds_.x_min + static_cast<double>(ix) * resolution_, 0.0,
          bounds_.z_min + static_cast<double>(iz) * resolution_};
}

std::size_t GridMap::masked_count() const {
  std::size_t n = 0;
  for (std::uint8_t m : masked) n += m;
  return n;
}

GridMap crb_map(const GridSpec& grid, const LinkModel& link, const HarmonicResponse& stcm,
                const std::vector<ScatterPoint>& fixed, PathKind kind, double rcs_dbsm, Execution ex) {
  GridMap out = empty_map(grid.size());
  for_each_index(grid.size(), ex, [&](std::size_t i) {
    std::vector<ScatterPoint> scene;
    scene.reserve(fixed.size() + 1);
    scene.push_back(make_scatter_point(grid.point(i), ScatterKind::ObjectLike, rcs_dbsm));
    scene.insert(scene.end(), fixed.begin(), fixed.end());
    try {
      const AngleBound b = angle_bound(fim_multi_target(scene, kind, link, stcm), 0);
      if (!b.masked) {
        out.value[i] = b.crb;
        out.masked[i] = 0;
      }
    } catch (const Error&) {
    }
  });
  return out;
}

GridMap peb_map(const GridSpec& grid, const LinkModel& link, const HarmonicResponse& stcm,
                const std::vector<ScatterPoint>& fixed, double rcs_dbsm, Execution ex) {
  GridMap out = empty_map(grid.size());
  for_each_index(grid.size(), ex, [&](std::size_t i) {
    std::vector<ScatterPoint> scene;
    scene.reserve(fixed.size() + 1);
    scene.push_back(make_scatter_point(grid.point(i), ScatterKind::ObjectLike, rcs_dbsm));
    scene.insert(scene.end(), fixed.begin(), fixed.end());
    try {
      const PebResult r = peb(scene, link, stcm);
      if (!r.masked) {
        out.value[i] = r.peb;
        out.masked[i] = 0;
      }
    } catch (const Error&) {
    }
  });
  return out;
}

GridMap ris_crb_map(const GridSpec& grid, const LinkModel& link, const RisProfile& profile, double rcs_dbsm,
                    Execution ex) {
  GridMap out = empty_map(grid.size());
  const double sigma_r = rcs_amplitude_from_dbsm(rcs_dbsm);
  for_each_index(grid.size(), ex, [&](std::size_t i) {
    try {
      const Vec3 q = grid.point(i);
      const AnglePair ang = angles_from_position(q, link.geometry);
      const PathGains pg = path_gains(q, link.geometry, sigma_r, 1.0, link.loss);
      const RisBound b = crb_ris(ang.xi, ang.alpha, pg.db_gain, profile, link.panel, link.bs, link.pilots.symbols,
                                 link.noise_power, link.fc);
      if (!b.xi.masked) {
        out.value[i] = b.xi.crb;
        out.masked[i] = 0;
      }
    } catch (const Error&) {
    }
  });
  return out;
}

GridMap detection_map(const GridSpec& grid, const LinkModel& link, double sigma_i, double sigma_nu, double p_fa,
                      Combiner combiner, Execution ex) {
  GridMap out = empty_map(grid.size());
  const double gamma_th = threshold_from_pfa(p_fa);
  const double lambda = link.carrier_wavelength();
  for_each_index(grid.size(), ex, [&](std::size_t i) {
    try {
      const Vec3 q = grid.point(i);
      const AnglePair ang = angles_from_position(q, link.geometry);
      const VectorXc H = despread_regressor(ang.alpha, link.bs, link.pilots.symbols, combiner, lambda);
      const double noise = combined_noise_power(H, combiner, link.pilots.symbols, link.noise_power);
      const double scale = rayleigh_scale(sigma_i, sb_distance(q, link.geometry), sigma_nu, link.loss);
      out.value[i] = pd_marginal(scale, H.squaredNorm(), noise, gamma_th);
      out.masked[i] = 0;
    } catch (const Error&) {
    }
  });
  return out;
}

std::vector<ConfusionPoint> classification_sweep(const ClassificationModel& base, const std::vector<double>& snr_db,
                                                 const std::vector<int>& true_classes, std::int64_t n_trials,
                                                 std::uint64_t seed, Execution ex) {
  const std::size_t nc = true_classes.size();
  for (int c : true_classes) {
    if (c < 1 || c >= kNumClasses || !(base.truth_power(c) > 0.0)) {
      throw Error(ErrorKind::OutOfRange, "SNR sweep needs a present target class");
    }
  }
  std::vector<ConfusionPoint> out(snr_db.size() * nc);
  for_each_index(out.size(), ex, [&](std::size_t k) {
    ConfusionPoint& p = out[k];
    p.snr_db = snr_db[k / nc];
    p.true_class = true_classes[k % nc];
    ClassificationModel m = base;
    m.estimator_var = estimator_var_for_snr(m, p.true_class, db_to_linear(p.snr_db));
    p.exact = confusion_exact(m, p.true_class);
    p.estimate = confusion_monte_carlo(m, p.true_class, n_trials, seed, static_cast<std::uint64_t>(k) << 32);
  });
  return out;
}

void set_threads(int n) {
  if (n > 0) omp_set_num_threads(n);
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace stcm
