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

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "stcm/common.hpp"
#include "stcm/geometry.hpp"
#include "stcm/metasurface.hpp"

namespace stcm {

/// BS uniform linear array along x, boresight +z.
struct UlaLayout {
  int m_antennas = 0;
  double spacing = 0.0;
  Vec3 center = Vec3::Zero();
  Eigen::MatrixX3d positions;  // relative to center
};

UlaLayout make_ula(int m_antennas, double spacing, const Vec3& center = Vec3::Zero());

VectorXc steering_vector(const UlaLayout& layout, double angle, double wavelength);
VectorXc steering_derivative(const UlaLayout& layout, double angle, double wavelength);

struct PilotMatrix {
  MatrixXc symbols;  // M x S
  double total_power = 0.0;

  int symbols_count() const { return static_cast<int>(symbols.cols()); }
};

/// Kronecker DFT pilots, ||X||_F^2 = total_power. Throws NotPerfectSquare.
PilotMatrix dft_pilots(int m_antennas, double total_power);

/// (1/(S-1)) X X^H. Throws TooFewSymbols when S < 2.
MatrixXc sample_covariance(const MatrixXc& X);

/// G(d) = sqrt(E_s) lambda / (4 pi d^iota).
struct PathLossModel {
  double wavelength = kSpeedOfLight / 10e9;
  double exponent = 2.0;
  double sqrt_esymbol = 1.0;

  double gain(double distance) const;
};

/// G(d) exp(-j 2 pi d / c) sigma_r nu. Throws NonPositiveDistance.
cdouble path_gain(double distance, double sigma_r, cdouble nu, const PathLossModel& model);

struct PathGains {
  cdouble sb_gain;
  cdouble db_gain;
  double sb_distance = 0.0;
  double db_distance = 0.0;
};

double sb_distance(const Vec3& q, const SceneGeometry& g);
double db_distance(const Vec3& q, const SceneGeometry& g);

PathGains path_gains(const Vec3& q, const SceneGeometry& g, double sigma_r, cdouble nu,
                     const PathLossModel& model);

/// Everything the echo synthesiser and the bounds need about the link.
struct LinkModel {
  SceneGeometry geometry;
  UlaLayout bs;
  PanelLayout panel;
  CodingMatrix code;
  HarmonicSet harmonics;
  PilotMatrix pilots;
  PathLossModel loss;
  double fc = 10e9;
  double noise_power = 1e-15;
  WavelengthMode wavelength_mode = WavelengthMode::Exact;

  double carrier_wavelength() const { return kSpeedOfLight / fc; }
  HarmonicResponse stcm_response() const;
};

struct EchoComponents {
  MatrixXc c1, c2, c3, c4, noise;
};

struct EchoBundle {
  std::vector<int> orders;            // harmonic order per entry
  std::vector<MatrixXc> per_harmonic; // Y_m
  std::vector<EchoComponents> components;
  double noise_power = 0.0;

  int position_of(int m) const;
};

struct EchoOptions {
  std::uint64_t noise_seed = 0;
  bool add_noise = true;
  /// Per-target small-scale fading; nu = 1 for every target when empty.
  std::vector<cdouble> fading;
};

/// Static-scene echo for every harmonic in the link's set.
EchoBundle synthesize_echo(const std::vector<ScatterPoint>& scene, const LinkModel& link,
                           const EchoOptions& options = {});

/// vec(A(alpha) X).
VectorXc sb_regressor(double alpha, const UlaLayout& bs, const MatrixXc& X, double wavelength);

/// eta(xi,0) (x) vec(a(alpha) a(0)^T X) + eta(0,xi) (x) vec(a(0) a(alpha)^T X).
VectorXc db_regressor(double alpha, double xi, const UlaLayout& bs, const HarmonicResponse& stcm,
                      const MatrixXc& X, double wavelength);

struct StackedSignal {
  VectorXc y;
  std::vector<VectorXc> regressors;
};

/// Single-bounce stack: m = 0 component c2 plus noise.
StackedSignal stack_sb(const EchoBundle& echo, const std::vector<ScatterPoint>& scene, const LinkModel& link);

/// Double-bounce stack over all harmonics: c3 + c4 plus noise.
StackedSignal stack_db(const EchoBundle& echo, const std::vector<ScatterPoint>& scene, const LinkModel& link);

inline VectorXc vec(const MatrixXc& m) { return Eigen::Map<const VectorXc>(m.data(), m.size()); }

}  // namespace stcm
