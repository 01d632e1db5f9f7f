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

#include <limits>
#include <string>
#include <vector>

#include "stcm/channel.hpp"
#include "stcm/common.hpp"
#include "stcm/geometry.hpp"
#include "stcm/metasurface.hpp"

namespace stcm {

/// Above this (Jacobi-scaled) condition number an information matrix is
/// reported as singular and the grid point is masked.
inline constexpr double kMaskCondition = 1e12;

enum class PathKind { SB, DB };

struct FisherMatrix {
  Eigen::MatrixXd entries;
  std::vector<std::string> labels;

  Eigen::Index size() const { return entries.rows(); }
  /// Condition number of D^{-1/2} F D^{-1/2}, D = diag(F). Infinite when a
  /// diagonal entry or an eigenvalue is non-positive.
  double condition_number() const;
  bool singular(double limit = kMaskCondition) const { return !(condition_number() <= limit); }
};

double scaled_condition_number(const Eigen::MatrixXd& F);

/// F_ij = (2 / sigma^2) Re <d_i, d_j>, Hermitian inner product.
FisherMatrix fim_generic(const std::vector<VectorXc>& derivatives, double noise_power,
                         std::vector<std::string> labels = {});

/// Column h (x) s, stored factorised; <h1 (x) s1, h2 (x) s2> = (h1^H h2)(s1^H s2).
struct KronColumn {
  VectorXc harmonic;
  VectorXc spatial;
};

FisherMatrix fim_kron(const std::vector<KronColumn>& derivatives, double noise_power,
                      std::vector<std::string> labels = {});

// ---- single target, closed form ------------------------------------------

/// Parameters (alpha, Re beta, Im beta). Uses the pilot Gram X X^H.
FisherMatrix fim_sb_single(double alpha, cdouble gain, const UlaLayout& bs, const MatrixXc& X,
                           double noise_power, double wavelength);
double crb_alpha_closed(double alpha, cdouble gain, const UlaLayout& bs, const MatrixXc& X,
                        double noise_power, double wavelength);

/// Parameters (xi, Re beta, Im beta) with B = a(alpha) a(0)^T + a(0) a(alpha)^T.
FisherMatrix fim_db_single(double xi, double alpha, cdouble gain, const UlaLayout& bs,
                           const HarmonicResponse& stcm, const MatrixXc& X, double noise_power,
                           double wavelength);
double crb_xi_closed(double xi, double alpha, cdouble gain, const UlaLayout& bs, const HarmonicResponse& stcm,
                     const MatrixXc& X, double noise_power, double wavelength);

/// DB information for an arbitrary reflection pattern vector (eta, d eta / d xi).
FisherMatrix fim_db_patterns(const VectorXc& eta, const VectorXc& eta_dot, double alpha, cdouble gain,
                             const UlaLayout& bs, const MatrixXc& X, double noise_power, double wavelength);

// ---- explicit stacked derivatives (reference path) -----------------------

std::vector<VectorXc> sb_derivatives(double alpha, cdouble gain, const UlaLayout& bs, const MatrixXc& X,
                                     double wavelength);
std::vector<VectorXc> db_derivatives(double xi, double alpha, cdouble gain, const UlaLayout& bs,
                                     const HarmonicResponse& stcm, const MatrixXc& X, double wavelength);

// ---- multiple targets ----------------------------------------------------

/// Gains follow the path-gain model with each point's sigma_r and nu = 1.
/// Order: [angle_1..angle_R, Re b_1, Im b_1, ..., Re b_R, Im b_R].
FisherMatrix fim_multi_target(const std::vector<ScatterPoint>& scene, PathKind kind, const LinkModel& link,
                              const HarmonicResponse& stcm);

/// Same matrix assembled from explicit stacked derivative vectors.
FisherMatrix fim_multi_target_reference(const std::vector<ScatterPoint>& scene, PathKind kind,
                                        const LinkModel& link, const HarmonicResponse& stcm);

/// Equivalent information of parameter `index` after eliminating all others.
double efim(const FisherMatrix& F, int index);

/// Schur complement keeping `keep` and eliminating the rest.
Eigen::MatrixXd efim_block(const FisherMatrix& F, const std::vector<int>& keep);

struct AngleBound {
  double efim = 0.0;
  double crb = std::numeric_limits<double>::infinity();
  double condition = std::numeric_limits<double>::infinity();
  bool masked = true;
};

/// Masked when the FIM is singular under kMaskCondition or the EFIM is not positive.
AngleBound angle_bound(const FisherMatrix& F, int index);

struct PebResult {
  double peb = std::numeric_limits<double>::infinity();
  bool masked = true;
  AngleBound alpha;
  AngleBound xi;
};

/// sqrt(tr((T^T diag(efim_alpha, efim_xi) T)^{-1})); throws DegenerateGeometry when singular.
double peb_from_information(double efim_alpha, double efim_xi, const Eigen::Matrix2d& T);

/// PEB of the first scatter point; the others are nuisance targets.
PebResult peb(const std::vector<ScatterPoint>& scene, const LinkModel& link, const HarmonicResponse& stcm);

struct RisBound {
  FisherMatrix fim;
  AngleBound xi;
  double gain_crb = std::numeric_limits<double>::infinity();  // CRB of Re beta
};

RisBound crb_ris(double xi, double alpha, cdouble gain, const RisProfile& profile, const PanelLayout& panel,
                 const UlaLayout& bs, const MatrixXc& X, double noise_power, double fc);

}  // namespace stcm
