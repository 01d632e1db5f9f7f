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

#include "stcm/metasurface.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "stcm/rng.hpp"

namespace stcm {

namespace {

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

double wavenumber(int m, double fc, double f0, WavelengthMode mode) {
  const double f = mode == WavelengthMode::Exact ? fc + m * f0 : fc;
  return 2.0 * kPi * f / kSpeedOfLight;
}

void check_row(const CodingMatrix& code, int n) {
  if (n < 0 || n >= code.elements()) {
    throw Error(ErrorKind::OutOfRange, fmt::format("element {} outside panel of {}", n, code.elements()));
  }
}

}  // namespace

PanelLayout make_panel(int n_x, int n_y, double spacing) {
  if (n_x < 1 || n_y < 1 || !(spacing > 0.0)) {
    throw Error(ErrorKind::InvalidConfig, "panel needs n_x, n_y >= 1 and positive spacing");
  }
  PanelLayout out;
  out.n_x = n_x;
  out.n_y = n_y;
  out.spacing = spacing;
  out.positions.resize(n_x * n_y, 3);
  for (int p = 0; p < n_x; ++p) {
    for (int q = 0; q < n_y; ++q) {
      const int n = out.index(p, q);
      out.positions(n, 0) = (p - 0.5 * (n_x - 1)) * spacing;
      out.positions(n, 1) = (q - 0.5 * (n_y - 1)) * spacing;
      out.positions(n, 2) = 0.0;
    }
  }
  return out;
}

void validate(const CodingMatrix& code) {
  if (code.code_length() < 1 || code.elements() < 1) {
    throw Error(ErrorKind::InvalidConfig, "coding matrix is empty");
  }
  if (!(code.period_T0 > 0.0)) {
    throw Error(ErrorKind::InvalidConfig, "coding period must be positive");
  }
  const double lo = code.scheme == CodingScheme::PM ? -1.0 : 0.0;
  for (Eigen::Index i = 0; i < code.entries.size(); ++i) {
    const double v = code.entries.data()[i];
    if (v != lo && v != 1.0) {
      throw Error(ErrorKind::InvalidConfig, fmt::format("coding entry {} outside alphabet", v));
    }
  }
}

std::vector<int> HarmonicSet::members() const {
  std::vector<int> out;
  out.reserve(size());
  for (int m = -m_f; m <= m_f; ++m) out.push_back(m);
  return out;
}

cdouble fourier_coefficient(const CodingMatrix& code, int n, int m) {
  check_row(code, n);
  const int L = code.code_length();
  const double w = kPi * m / L;
  cdouble acc = 0.0;
  for (int l = 0; l < L; ++l) {
    // slot l (0-based) is slot l+1 of the 1-based sum, hence 2l+1.
    acc += code.entries(n, l) * std::polar(1.0, -w * (2 * l + 1));
  }
  return acc * (sinc(w) / L);
}

cdouble harmonic_pattern(const PanelLayout& layout, const CodingMatrix& code, int m, double phi_d,
                         double phi_a, double fc, WavelengthMode mode) {
  if (code.elements() != layout.size()) {
    throw Error(ErrorKind::DimensionMismatch, "coding matrix rows must match panel size");
  }
  const double k = wavenumber(m, fc, code.f0(), mode);
  const double ux = std::sin(phi_d) + std::sin(phi_a);
  const double uz = std::cos(phi_d) + std::cos(phi_a);
  cdouble acc = 0.0;
  for (int n = 0; n < layout.size(); ++n) {
    const double phase = k * (ux * layout.positions(n, 0) + uz * layout.positions(n, 2));
    acc += fourier_coefficient(code, n, m) * std::polar(1.0, phase);
  }
  return acc;
}

cdouble harmonic_pattern_derivative(const PanelLayout& layout, const CodingMatrix& code, int m,
                                    double phi_d, double phi_a, PatternSide side, double fc,
                                    WavelengthMode mode) {
  if (code.elements() != layout.size()) {
    throw Error(ErrorKind::DimensionMismatch, "coding matrix rows must match panel size");
  }
  const double k = wavenumber(m, fc, code.f0(), mode);
  const double ux = std::sin(phi_d) + std::sin(phi_a);
  const double uz = std::cos(phi_d) + std::cos(phi_a);
  const double phi = side == PatternSide::Departure ? phi_d : phi_a;
  const double dx = std::cos(phi);
  const double dz = -std::sin(phi);
  cdouble acc = 0.0;
  for (int n = 0; n < layout.size(); ++n) {
    const double x = layout.positions(n, 0);
    const double z = layout.positions(n, 2);
    const double phase = k * (ux * x + uz * z);
    acc += fourier_coefficient(code, n, m) * std::polar(1.0, phase) * cdouble(0.0, k * (dx * x + dz * z));
  }
  return acc;
}

HarmonicResponse::HarmonicResponse(const PanelLayout& layout, const CodingMatrix& code,
                                   const HarmonicSet& set, double fc, WavelengthMode mode)
    : set_(set), positions_(layout.positions) {
  if (code.elements() != layout.size()) {
    throw Error(ErrorKind::DimensionMismatch, "coding matrix rows must match panel size");
  }
  if (set.m_f < 0) throw Error(ErrorKind::InvalidConfig, "m_f must be non-negative");
  const int N = layout.size();
  coeffs_.resize(N, set.size());
  wavenumber_.resize(set.size());
  for (int i = 0; i < set.size(); ++i) {
    const int m = set.order(i);
    wavenumber_(i) = wavenumber(m, fc, code.f0(), mode);
    for (int n = 0; n < N; ++n) coeffs_(n, i) = fourier_coefficient(code, n, m);
  }
}

void HarmonicResponse::evaluate(double phi_d, double phi_a, PatternSide side, VectorXc& eta,
                                VectorXc& eta_dot) const {
  const double ux = std::sin(phi_d) + std::sin(phi_a);
  const double uz = std::cos(phi_d) + std::cos(phi_a);
  const double phi = side == PatternSide::Departure ? phi_d : phi_a;
  const double dx = std::cos(phi);
  const double dz = -std::sin(phi);
  const Eigen::Index N = positions_.rows();
  eta.setZero(set_.size());
  eta_dot.setZero(set_.size());
  for (int i = 0; i < set_.size(); ++i) {
    const double k = wavenumber_(i);
    cdouble e = 0.0;
    cdouble d = 0.0;
    for (Eigen::Index n = 0; n < N; ++n) {
      const double x = positions_(n, 0);
      const double z = positions_(n, 2);
      const cdouble t = coeffs_(n, i) * std::polar(1.0, k * (ux * x + uz * z));
      e += t;
      d += t * (k * (dx * x + dz * z));
    }
    eta(i) = e;
    eta_dot(i) = kJ * d;
  }
}

VectorXc HarmonicResponse::pattern(double phi_d, double phi_a) const {
  VectorXc eta, eta_dot;
  evaluate(phi_d, phi_a, PatternSide::Departure, eta, eta_dot);
  return eta;
}

VectorXc HarmonicResponse::derivative(double phi_d, double phi_a, PatternSide side) const {
  VectorXc eta, eta_dot;
  evaluate(phi_d, phi_a, side, eta, eta_dot);
  return eta_dot;
}

CodingMatrix run_coding_matrix(const PanelLayout& layout, int L, const std::vector<ColumnRun>& runs,
                               double period_T0) {
  if (L < 2) throw Error(ErrorKind::InvalidConfig, "code length must be at least 2");
  if (static_cast<int>(runs.size()) != layout.n_x) {
    throw Error(ErrorKind::InvalidConfig, fmt::format("need one run per column ({}), got {}", layout.n_x, runs.size()));
  }
  CodingMatrix code;
  code.scheme = CodingScheme::PM;
  code.period_T0 = period_T0;
  code.entries.resize(layout.size(), L);
  for (int p = 0; p < layout.n_x; ++p) {
    const ColumnRun& r = runs[static_cast<std::size_t>(p)];
    if (r.length < 0 || r.length > L || r.offset < 0 || r.offset >= L) {
      throw Error(ErrorKind::InvalidConfig, fmt::format("column {} run ({}, {}) outside code length {}", p, r.length, r.offset, L));
    }
    for (int l = 0; l < L; ++l) {
      const double v = (l - r.offset + L) % L < r.length ? 1.0 : -1.0;
      for (int q = 0; q < layout.n_y; ++q) code.entries(layout.index(p, q), l) = v;
    }
  }
  return code;
}

CodingMatrix default_coding_matrix(const PanelLayout& layout, double period_T0) {
  return run_coding_matrix(layout, 8, kDefaultRuns, period_T0);
}

CodingMatrix philox_coding_matrix(const PanelLayout& layout, int L, std::uint64_t key, double period_T0) {
  if (L < 2) throw Error(ErrorKind::InvalidConfig, "code length must be at least 2");
  const PhiloxKey k = {static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)};
  CodingMatrix code;
  code.scheme = CodingScheme::PM;
  code.period_T0 = period_T0;
  code.entries.resize(layout.size(), L);
  for (int p = 0; p < layout.n_x; ++p) {
    for (int l = 0; l < L; ++l) {
      const PhiloxCounter ctr = {static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(l / 128), 0u, 0u};
      const std::uint32_t word = philox4x32_10(ctr, k)[(l / 32) % 4];
      const double v = ((word >> (l % 32)) & 1u) ? 1.0 : -1.0;
      for (int q = 0; q < layout.n_y; ++q) code.entries(layout.index(p, q), l) = v;
    }
  }
  return code;
}

CodingMatrix column_progressive_code(const PanelLayout& layout, int L, int shift, double period_T0) {
  if (L < 2) throw Error(ErrorKind::InvalidConfig, "code length must be at least 2");
  CodingMatrix code;
  code.scheme = CodingScheme::PM;
  code.period_T0 = period_T0;
  code.entries.resize(layout.size(), L);
  for (int p = 0; p < layout.n_x; ++p) {
    for (int l = 0; l < L; ++l) {
      const int src = ((l - p * shift) % L + L) % L;
      const double v = src < L / 2 ? 1.0 : -1.0;
      for (int q = 0; q < layout.n_y; ++q) code.entries(layout.index(p, q), l) = v;
    }
  }
  return code;
}

void write_code_csv(std::ostream& os, const CodingMatrix& code) {
  for (int n = 0; n < code.elements(); ++n) {
    for (int l = 0; l < code.code_length(); ++l) {
      if (l) os << ',';
      os << static_cast<int>(code.entries(n, l));
    }
    os << '\n';
  }
}

CodingMatrix read_code_csv(std::istream& is, CodingScheme scheme, double period_T0) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidConfig, "non-numeric coding entry '" + cell + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error(ErrorKind::InvalidConfig, "ragged coding matrix");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorKind::InvalidConfig, "empty coding matrix file");
  CodingMatrix code;
  code.scheme = scheme;
  code.period_T0 = period_T0;
  code.entries.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) code.entries(i, j) = rows[i][j];
  }
  validate(code);
  return code;
}

void validate(const RisProfile& profile) {
  for (Eigen::Index n = 0; n < profile.phases.size(); ++n) {
    if (std::abs(std::abs(profile.phases(n)) - 1.0) > 1e-12) {
      throw Error(ErrorKind::InvalidConfig, fmt::format("RIS element {} is not unit modulus", n));
    }
  }
}

RisProfile uniform_ris_profile(const PanelLayout& layout) {
  return {VectorXc::Ones(layout.size())};
}

VectorXc panel_steering(const PanelLayout& layout, double phi, double wavelength) {
  const double k = 2.0 * kPi / wavelength;
  VectorXc a(layout.size());
  for (int n = 0; n < layout.size(); ++n) {
    a(n) = std::polar(1.0, k * (std::sin(phi) * layout.positions(n, 0) + std::cos(phi) * layout.positions(n, 2)));
  }
  return a;
}

cdouble ris_response(const RisProfile& profile, const PanelLayout& layout, double phi_d, double phi_a,
                     double fc) {
  if (profile.phases.size() != layout.size()) {
    throw Error(ErrorKind::DimensionMismatch, "RIS profile length must match panel size");
  }
  const double lambda = kSpeedOfLight / fc;
  const VectorXc ad = panel_steering(layout, phi_d, lambda);
  const VectorXc aa = panel_steering(layout, phi_a, lambda);
  return (ad.array() * profile.phases.array() * aa.array()).sum();
}

cdouble ris_response_derivative(const RisProfile& profile, const PanelLayout& layout, double phi_d,
                                double phi_a, PatternSide side, double fc) {
  if (profile.phases.size() != layout.size()) {
    throw Error(ErrorKind::DimensionMismatch, "RIS profile length must match panel size");
  }
  const double lambda = kSpeedOfLight / fc;
  const double k = 2.0 * kPi / lambda;
  const double phi = side == PatternSide::Departure ? phi_d : phi_a;
  const VectorXc ad = panel_steering(layout, phi_d, lambda);
  const VectorXc aa = panel_steering(layout, phi_a, lambda);
  cdouble acc = 0.0;
  for (int n = 0; n < layout.size(); ++n) {
    const double dphase = k * (std::cos(phi) * layout.positions(n, 0) - std::sin(phi) * layout.positions(n, 2));
    acc += ad(n) * profile.phases(n) * aa(n) * cdouble(0.0, dphase);
  }
  return acc;
}

}  // namespace stcm
