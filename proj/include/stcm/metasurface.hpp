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
#include <iosfwd>
#include <string>
#include <vector>

#include "stcm/common.hpp"

namespace stcm {

/// Uniform rectangular panel in its local x–y plane, centred at the origin.
/// Element n = p * n_y + q sits at ((p - (n_x-1)/2) d, (q - (n_y-1)/2) d, 0).
struct PanelLayout {
  int n_x = 0;
  int n_y = 0;
  double spacing = 0.0;
  Eigen::MatrixX3d positions;

  int size() const { return n_x * n_y; }
  int index(int p, int q) const { return p * n_y + q; }
};

PanelLayout make_panel(int n_x, int n_y, double spacing);

enum class CodingScheme { PM, AM };

struct CodingMatrix {
  Eigen::MatrixXd entries;  // N x L
  CodingScheme scheme = CodingScheme::PM;
  double period_T0 = 2e-6;

  int code_length() const { return static_cast<int>(entries.cols()); }
  int elements() const { return static_cast<int>(entries.rows()); }
  double f0() const { return 1.0 / period_T0; }
};

/// Throws InvalidConfig if an entry falls outside the scheme's alphabet.
void validate(const CodingMatrix& code);

struct HarmonicSet {
  int m_f = 0;

  int size() const { return 2 * m_f + 1; }
  int order(int i) const { return i - m_f; }
  std::vector<int> members() const;
};

enum class WavelengthMode { Exact, Carrier };
enum class PatternSide { Departure, Arrival };

/// a^m for element row `n`; unnormalised sinc.
cdouble fourier_coefficient(const CodingMatrix& code, int n, int m);

/// Far-field pattern of harmonic m with isotropic element factor.
cdouble harmonic_pattern(const PanelLayout& layout, const CodingMatrix& code, int m, double phi_d,
                         double phi_a, double fc, WavelengthMode mode = WavelengthMode::Exact);

/// d eta_m / d phi on the chosen side, the other angle held fixed.
cdouble harmonic_pattern_derivative(const PanelLayout& layout, const CodingMatrix& code, int m,
                                    double phi_d, double phi_a, PatternSide side, double fc,
                                    WavelengthMode mode = WavelengthMode::Exact);

/// Precomputed coefficient table for repeated pattern evaluations over a
/// fixed harmonic set. Read-only after construction.
class HarmonicResponse {
 public:
  HarmonicResponse(const PanelLayout& layout, const CodingMatrix& code, const HarmonicSet& set,
                   double fc, WavelengthMode mode = WavelengthMode::Exact);

  const HarmonicSet& harmonics() const { return set_; }

  /// eta over the harmonic set, ordered -m_f..m_f.
  VectorXc pattern(double phi_d, double phi_a) const;
  VectorXc derivative(double phi_d, double phi_a, PatternSide side) const;

  /// Both at once; cheaper than two calls.
  void evaluate(double phi_d, double phi_a, PatternSide side, VectorXc& eta, VectorXc& eta_dot) const;

 private:
  HarmonicSet set_;
  Eigen::MatrixX3d positions_;
  MatrixXc coeffs_;           // N x |M|
  Eigen::VectorXd wavenumber_;  // 2 pi / lambda_m per harmonic
};

/// One cyclic run of +1 per column: column p is +1 on slots
/// offset_p .. offset_p + length_p - 1 (mod L) and -1 elsewhere, replicated
/// along y. At most two sign changes per period.
struct ColumnRun {
  int length = 0;
  int offset = 0;
};
CodingMatrix run_coding_matrix(const PanelLayout& layout, int L, const std::vector<ColumnRun>& runs,
                               double period_T0 = 2e-6);

/// Built-in 8 x 8, L = 8 code.
inline const std::vector<ColumnRun> kDefaultRuns = {{7, 2}, {5, 3}, {5, 3}, {5, 3}, {1, 2}, {3, 0}, {7, 7}, {1, 1}};
CodingMatrix default_coding_matrix(const PanelLayout& layout, double period_T0 = 2e-6);

/// Per-column PM code from Philox4x32-10, replicated along y. Bit-exact for
/// a given (layout, L, key).
CodingMatrix philox_coding_matrix(const PanelLayout& layout, int L, std::uint64_t key, double period_T0 = 2e-6);

/// Column c uses [+1 x L/2, -1 x L/2] cyclically shifted by c * shift slots.
CodingMatrix column_progressive_code(const PanelLayout& layout, int L, int shift = 1,
                                     double period_T0 = 2e-6);

void write_code_csv(std::ostream& os, const CodingMatrix& code);
CodingMatrix read_code_csv(std::istream& is, CodingScheme scheme, double period_T0);

struct RisProfile {
  VectorXc phases;
};

/// Unit-modulus check; throws InvalidConfig.
void validate(const RisProfile& profile);

/// All elements in phase (specular reflector).
RisProfile uniform_ris_profile(const PanelLayout& layout);

VectorXc panel_steering(const PanelLayout& layout, double phi, double wavelength);

/// a_R^T(phi_d) diag(omega) a_R(phi_a) at the carrier wavelength.
cdouble ris_response(const RisProfile& profile, const PanelLayout& layout, double phi_d, double phi_a,
                     double fc);
cdouble ris_response_derivative(const RisProfile& profile, const PanelLayout& layout, double phi_d,
                                double phi_a, PatternSide side, double fc);

}  // namespace stcm
