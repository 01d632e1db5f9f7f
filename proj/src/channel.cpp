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

#include "stcm/channel.hpp"

#include <fmt/format.h>

#include "stcm/rng.hpp"

namespace stcm {

UlaLayout make_ula(int m_antennas, double spacing, const Vec3& center) {
  if (m_antennas < 1 || !(spacing > 0.0)) {
    throw Error(ErrorKind::InvalidConfig, "ULA needs at least one antenna and positive spacing");
  }
  UlaLayout out;
  out.m_antennas = m_antennas;
  out.spacing = spacing;
  out.center = center;
  out.positions = Eigen::MatrixX3d::Zero(m_antennas, 3);
  for (int i = 0; i < m_antennas; ++i) out.positions(i, 0) = (i - 0.5 * (m_antennas - 1)) * spacing;
  return out;
}

VectorXc steering_vector(const UlaLayout& layout, double angle, double wavelength) {
  const double k = 2.0 * kPi / wavelength;
  const double kx = k * std::sin(angle);
  const double kz = k * std::cos(angle);
  VectorXc a(layout.m_antennas);
  for (int i = 0; i < layout.m_antennas; ++i) {
    a(i) = std::polar(1.0, kx * layout.positions(i, 0) + kz * layout.positions(i, 2));
  }
  return a;
}

VectorXc steering_derivative(const UlaLayout& layout, double angle, double wavelength) {
  const double k = 2.0 * kPi / wavelength;
  VectorXc a = steering_vector(layout, angle, wavelength);
  for (int i = 0; i < layout.m_antennas; ++i) {
    const double dphase = k * (std::cos(angle) * layout.positions(i, 0) - std::sin(angle) * layout.positions(i, 2));
    a(i) *= cdouble(0.0, dphase);
  }
  return a;
}

PilotMatrix dft_pilots(int m_antennas, double total_power) {
  const int r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(m_antennas))));
  if (m_antennas < 1 || r * r != m_antennas) {
    throw Error(ErrorKind::NotPerfectSquare, fmt::format("M = {} is not a perfect square", m_antennas));
  }
  if (!(total_power > 0.0)) throw Error(ErrorKind::InvalidConfig, "pilot power must be positive");
  MatrixXc F(r, r);
  for (int i = 0; i < r; ++i) {
    for (int k = 0; k < r; ++k) F(i, k) = std::polar(1.0, -2.0 * kPi * i * k / r);
  }
  PilotMatrix out;
  out.total_power = total_power;
  out.symbols.resize(m_antennas, m_antennas);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) out.symbols.block(i * r, j * r, r, r) = F(i, j) * F;
  }
  out.symbols *= std::sqrt(total_power) / m_antennas;
  return out;
}

MatrixXc sample_covariance(const MatrixXc& X) {
  if (X.cols() < 2) throw Error(ErrorKind::TooFewSymbols, "sample covariance needs S >= 2");
  MatrixXc R = X * X.adjoint() / static_cast<double>(X.cols() - 1);
  // Exact Hermitian symmetry regardless of summation order.
  return 0.5 * (R + R.adjoint());
}

double PathLossModel::gain(double distance) const {
  if (!(distance > 0.0)) {
    throw Error(ErrorKind::NonPositiveDistance, fmt::format("distance {} m", distance));
  }
  return sqrt_esymbol * wavelength / (4.0 * kPi * std::pow(distance, exponent));
}

cdouble path_gain(double distance, double sigma_r, cdouble nu, const PathLossModel& model) {
  const double g = model.gain(distance);
  return g * std::polar(1.0, -2.0 * kPi * distance / kSpeedOfLight) * sigma_r * nu;
}

double sb_distance(const Vec3& q, const SceneGeometry& g) { return 2.0 * g.distance_to_bs(q); }

double db_distance(const Vec3& q, const SceneGeometry& g) {
  return g.baseline() + g.distance_to_bs(q) + g.distance_to_stcm(q);
}

PathGains path_gains(const Vec3& q, const SceneGeometry& g, double sigma_r, cdouble nu,
                     const PathLossModel& model) {
  PathGains out;
  out.sb_distance = sb_distance(q, g);
  out.db_distance = db_distance(q, g);
  out.sb_gain = path_gain(out.sb_distance, sigma_r, nu, model);
  out.db_gain = path_gain(out.db_distance, sigma_r, nu, model);
  return out;
}

HarmonicResponse LinkModel::stcm_response() const {
  return HarmonicResponse(panel, code, harmonics, fc, wavelength_mode);
}

int EchoBundle::position_of(int m) const {
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (orders[i] == m) return static_cast<int>(i);
  }
  throw Error(ErrorKind::OutOfRange, fmt::format("harmonic {} not in echo bundle", m));
}

EchoBundle synthesize_echo(const std::vector<ScatterPoint>& scene, const LinkModel& link,
                           const EchoOptions& options) {
  if (!options.fading.empty() && options.fading.size() != scene.size()) {
    throw Error(ErrorKind::DimensionMismatch, "one fading coefficient per scatter point");
  }
  const double lambda = link.carrier_wavelength();
  const MatrixXc& X = link.pilots.symbols;
  const int M = link.bs.m_antennas;
  const int S = link.pilots.symbols_count();
  const HarmonicResponse stcm = link.stcm_response();

  // The BS sees the STCM on its boresight and vice versa.
  const VectorXc a0 = steering_vector(link.bs, 0.0, lambda);
  const MatrixXc A00X = a0 * (a0.transpose() * X);
  const cdouble beta_s = path_gain(2.0 * link.geometry.baseline(), 1.0, 1.0, link.loss);
  const VectorXc eta_ss = stcm.pattern(0.0, 0.0);

  struct TargetTerms {
    MatrixXc c2;
    MatrixXc a_r0;  // a(alpha) a(0)^T X
    MatrixXc a_0r;  // a(0) a(alpha)^T X
    VectorXc eta_r0, eta_0r;
    cdouble beta_db;
  };
  std::vector<TargetTerms> terms;
  terms.reserve(scene.size());
  for (std::size_t r = 0; r < scene.size(); ++r) {
    const ScatterPoint& sp = scene[r];
    const cdouble nu = options.fading.empty() ? cdouble(1.0) : options.fading[r];
    const AnglePair ang = angles_from_position(sp.position, link.geometry);
    const PathGains pg = path_gains(sp.position, link.geometry, sp.rcs_sqrt, nu, link.loss);
    const VectorXc ar = steering_vector(link.bs, ang.alpha, lambda);
    TargetTerms t;
    t.c2 = pg.sb_gain * (ar * (ar.transpose() * X));
    t.a_r0 = ar * (a0.transpose() * X);
    t.a_0r = a0 * (ar.transpose() * X);
    t.eta_r0 = stcm.pattern(ang.xi, 0.0);
    t.eta_0r = stcm.pattern(0.0, ang.xi);
    t.beta_db = pg.db_gain;
    terms.push_back(std::move(t));
  }

  EchoBundle out;
  out.noise_power = link.noise_power;
  out.orders = link.harmonics.members();
  for (int i = 0; i < link.harmonics.size(); ++i) {
    const int m = link.harmonics.order(i);
    EchoComponents c;
    c.c1 = beta_s * eta_ss(i) * A00X;
    c.c2 = MatrixXc::Zero(M, S);
    c.c3 = MatrixXc::Zero(M, S);
    c.c4 = MatrixXc::Zero(M, S);
    for (const TargetTerms& t : terms) {
      if (m == 0) c.c2 += t.c2;
      c.c3 += t.beta_db * t.eta_r0(i) * t.a_r0;
      c.c4 += t.beta_db * t.eta_0r(i) * t.a_0r;
    }
    c.noise = MatrixXc::Zero(M, S);
    if (options.add_noise && link.noise_power > 0.0) {
      RandomStream rs(options.noise_seed, StreamDomain::EchoNoise, static_cast<std::uint64_t>(i));
      for (int s = 0; s < S; ++s) {
        for (int k = 0; k < M; ++k) c.noise(k, s) = rs.complex_normal(link.noise_power);
      }
    }
    out.per_harmonic.push_back(c.c1 + c.c2 + c.c3 + c.c4 + c.noise);
    out.components.push_back(std::move(c));
  }
  return out;
}

VectorXc sb_regressor(double alpha, const UlaLayout& bs, const MatrixXc& X, double wavelength) {
  const VectorXc a = steering_vector(bs, alpha, wavelength);
  return vec(a * (a.transpose() * X));
}

VectorXc db_regressor(double alpha, double xi, const UlaLayout& bs, const HarmonicResponse& stcm,
                      const MatrixXc& X, double wavelength) {
  const VectorXc a = steering_vector(bs, alpha, wavelength);
  const VectorXc a0 = steering_vector(bs, 0.0, wavelength);
  const VectorXc v_r0 = vec(a * (a0.transpose() * X));
  const VectorXc v_0r = vec(a0 * (a.transpose() * X));
  const VectorXc e_r0 = stcm.pattern(xi, 0.0);
  const VectorXc e_0r = stcm.pattern(0.0, xi);
  const Eigen::Index len = v_r0.size();
  VectorXc h(len * e_r0.size());
  for (Eigen::Index i = 0; i < e_r0.size(); ++i) h.segment(i * len, len) = e_r0(i) * v_r0 + e_0r(i) * v_0r;
  return h;
}

StackedSignal stack_sb(const EchoBundle& echo, const std::vector<ScatterPoint>& scene, const LinkModel& link) {
  const EchoComponents& c = echo.components.at(echo.position_of(0));
  StackedSignal out;
  out.y = vec(c.c2 + c.noise);
  const double lambda = link.carrier_wavelength();
  for (const ScatterPoint& sp : scene) {
    const AnglePair ang = angles_from_position(sp.position, link.geometry);
    out.regressors.push_back(sb_regressor(ang.alpha, link.bs, link.pilots.symbols, lambda));
  }
  return out;
}

StackedSignal stack_db(const EchoBundle& echo, const std::vector<ScatterPoint>& scene, const LinkModel& link) {
  StackedSignal out;
  const Eigen::Index len = echo.components.front().c3.size();
  out.y.resize(len * static_cast<Eigen::Index>(echo.components.size()));
  for (std::size_t i = 0; i < echo.components.size(); ++i) {
    const EchoComponents& c = echo.components[i];
    out.y.segment(static_cast<Eigen::Index>(i) * len, len) = vec(c.c3 + c.c4 + c.noise);
  }
  const double lambda = link.carrier_wavelength();
  const HarmonicResponse stcm = link.stcm_response();
  for (const ScatterPoint& sp : scene) {
    const AnglePair ang = angles_from_position(sp.position, link.geometry);
    out.regressors.push_back(db_regressor(ang.alpha, ang.xi, link.bs, stcm, link.pilots.symbols, lambda));
  }
  return out;
}

}  // namespace stcm
