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

#include "stcm/bounds.hpp"

#include <fmt/format.h>

namespace stcm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::string> default_labels(Eigen::Index n) {
  std::vector<std::string> out;
  for (Eigen::Index i = 0; i < n; ++i) out.push_back(fmt::format("p{}", i));
  return out;
}

std::vector<std::string> multi_labels(std::size_t targets, PathKind kind) {
  const char* angle = kind == PathKind::SB ? "alpha" : "xi";
  std::vector<std::string> out;
  for (std::size_t r = 0; r < targets; ++r) out.push_back(fmt::format("{}_{}", angle, r + 1));
  for (std::size_t r = 0; r < targets; ++r) {
    out.push_back(fmt::format("re_beta_{}", r + 1));
    out.push_back(fmt::format("im_beta_{}", r + 1));
  }
  return out;
}

FisherMatrix from_gram(const MatrixXc& gram, double noise_power, std::vector<std::string> labels) {
  if (!(noise_power > 0.0)) throw Error(ErrorKind::InvalidConfig, "noise power must be positive");
  FisherMatrix F;
  F.entries = (2.0 / noise_power) * gram.real();
  // Symmetrise away round-off from the two triangles.
  F.entries = 0.5 * (F.entries + F.entries.transpose()).eval();
  F.labels = labels.empty() ? default_labels(F.entries.rows()) : std::move(labels);
  return F;
}

struct SbTraces {
  double t_dd;
  cdouble t_ad;
  double t_aa;
};

SbTraces sb_traces(double alpha, const UlaLayout& bs, const MatrixXc& X, double wavelength) {
  const VectorXc a = steering_vector(bs, alpha, wavelength);
  const VectorXc ad = steering_derivative(bs, alpha, wavelength);
  const MatrixXc A = a * a.transpose();
  const MatrixXc Ad = ad * a.transpose() + a * ad.transpose();
  const MatrixXc G = X * X.adjoint();
  return {(Ad * G * Ad.adjoint()).trace().real(), (A * G * Ad.adjoint()).trace(),
          (A * G * A.adjoint()).trace().real()};
}

MatrixXc b_matrix(double alpha, const UlaLayout& bs, double wavelength) {
  const VectorXc a = steering_vector(bs, alpha, wavelength);
  const VectorXc a0 = steering_vector(bs, 0.0, wavelength);
  return a * a0.transpose() + a0 * a.transpose();
}

FisherMatrix three_by_three(double f_aa, cdouble cross, double f_bb, double noise_power,
                            const char* angle_label) {
  FisherMatrix F;
  const double s = 2.0 / noise_power;
  F.entries.resize(3, 3);
  F.entries(0, 0) = s * f_aa;
  F.entries(0, 1) = F.entries(1, 0) = s * cross.real();
  F.entries(0, 2) = F.entries(2, 0) = s * (kJ * cross).real();
  F.entries(1, 1) = F.entries(2, 2) = s * f_bb;
  F.entries(1, 2) = F.entries(2, 1) = 0.0;
  F.labels = {angle_label, "re_beta", "im_beta"};
  return F;
}

}  // namespace

double scaled_condition_number(const Eigen::MatrixXd& F) {
  if (F.rows() == 0) return kInf;
  const Eigen::VectorXd d = F.diagonal();
  if ((d.array() <= 0.0).any() || !d.allFinite()) return kInf;
  const Eigen::VectorXd s = d.cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd C = s.asDiagonal() * F * s.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(C, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) return kInf;
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (!(lo > 0.0)) return kInf;
  return hi / lo;
}

double FisherMatrix::condition_number() const { return scaled_condition_number(entries); }

FisherMatrix fim_generic(const std::vector<VectorXc>& derivatives, double noise_power,
                         std::vector<std::string> labels) {
  const std::size_t n = derivatives.size();
  if (n == 0) throw Error(ErrorKind::DimensionMismatch, "no derivative vectors");
  const Eigen::Index len = derivatives.front().size();
  MatrixXc D(len, static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (derivatives[i].size() != len) {
      throw Error(ErrorKind::DimensionMismatch, "derivative vectors differ in length");
    }
    D.col(static_cast<Eigen::Index>(i)) = derivatives[i];
  }
  if (!labels.empty() && labels.size() != n) {
    throw Error(ErrorKind::DimensionMismatch, "one label per parameter");
  }
  return from_gram(D.adjoint() * D, noise_power, std::move(labels));
}

FisherMatrix fim_kron(const std::vector<KronColumn>& derivatives, double noise_power,
                      std::vector<std::string> labels) {
  const std::size_t n = derivatives.size();
  if (n == 0) throw Error(ErrorKind::DimensionMismatch, "no derivative vectors");
  const Eigen::Index lh = derivatives.front().harmonic.size();
  const Eigen::Index ls = derivatives.front().spatial.size();
  MatrixXc H(lh, static_cast<Eigen::Index>(n));
  MatrixXc S(ls, static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (derivatives[i].harmonic.size() != lh || derivatives[i].spatial.size() != ls) {
      throw Error(ErrorKind::DimensionMismatch, "factorised columns differ in shape");
    }
    H.col(static_cast<Eigen::Index>(i)) = derivatives[i].harmonic;
    S.col(static_cast<Eigen::Index>(i)) = derivatives[i].spatial;
  }
  const MatrixXc gram = (H.adjoint() * H).cwiseProduct(S.adjoint() * S);
  return from_gram(gram, noise_power, std::move(labels));
}

FisherMatrix fim_sb_single(double alpha, cdouble gain, const UlaLayout& bs, const MatrixXc& X,
                           double noise_power, double wavelength) {
  if (!(noise_power > 0.0)) throw Error(ErrorKind::InvalidConfig, "noise power must be positive");
  const SbTraces t = sb_traces(alpha, bs, X, wavelength);
  return three_by_three(std::norm(gain) * t.t_dd, std::conj(gain) * t.t_ad, t.t_aa, noise_power, "alpha");
}

double crb_alpha_closed(double alpha, cdouble gain, const UlaLayout& bs, const MatrixXc& X,
                        double noise_power, double wavelength) {
  const SbTraces t = sb_traces(alpha, bs, X, wavelength);
  const double schur = t.t_dd - std::norm(t.t_ad) / t.t_aa;
  const double denom = 2.0 * std::norm(gain) * schur;
  if (!(t.t_aa > 0.0) || !(schur > 1e-12 * t.t_dd) || !(denom > 0.0)) {
    throw Error(ErrorKind::SingularInformation, "alpha information absorbed by the gain nuisance");
  }
  return noise_power / denom;
}

FisherMatrix fim_db_patterns(const VectorXc& eta, const VectorXc& eta_dot, double alpha, cdouble gain,
                             const UlaLayout& bs, const MatrixXc& X, double noise_power, double wavelength) {
  if (!(noise_power > 0.0)) throw Error(ErrorKind::InvalidConfig, "noise power must be positive");
  if (eta.size() != eta_dot.size()) throw Error(ErrorKind::DimensionMismatch, "eta and its derivative differ");
  const MatrixXc BX = b_matrix(alpha, bs, wavelength) * X;
  const double t_bb = BX.squaredNorm();
  const double jj = eta_dot.squaredNorm();
  const cdouble je = eta_dot.dot(eta);  // eta_dot^H eta
  const double ee = eta.squaredNorm();
  return three_by_three(std::norm(gain) * jj * t_bb, std::conj(gain) * je * t_bb, ee * t_bb, noise_power, "xi");
}

FisherMatrix fim_db_single(double xi, double alpha, cdouble gain, const UlaLayout& bs,
                           const HarmonicResponse& stcm, const MatrixXc& X, double noise_power,
                           double wavelength) {
  VectorXc eta, eta_dot;
  stcm.evaluate(xi, 0.0, PatternSide::Departure, eta, eta_dot);
  return fim_db_patterns(eta, eta_dot, alpha, gain, bs, X, noise_power, wavelength);
}

double crb_xi_closed(double xi, double alpha, cdouble gain, const UlaLayout& bs, const HarmonicResponse& stcm,
                     const MatrixXc& X, double noise_power, double wavelength) {
  VectorXc eta, eta_dot;
  stcm.evaluate(xi, 0.0, PatternSide::Departure, eta, eta_dot);
  const double t_bb = (b_matrix(alpha, bs, wavelength) * X).squaredNorm();
  const double jj = eta_dot.squaredNorm();
  const double ee = eta.squaredNorm();
  if (!(ee > 0.0) || !(t_bb > 0.0)) {
    throw Error(ErrorKind::SingularInformation, "gain block of the double-bounce FIM vanishes");
  }
  const double schur = jj - std::norm(eta_dot.dot(eta)) / ee;
  const double denom = 2.0 * std::norm(gain) * t_bb * schur;
  if (!(schur > 1e-12 * jj) || !(denom > 0.0)) {
    throw Error(ErrorKind::SingularInformation, "xi information absorbed by the gain nuisance");
  }
  return noise_power / denom;
}

std::vector<VectorXc> sb_derivatives(double alpha, cdouble gain, const UlaLayout& bs, const MatrixXc& X,
                                     double wavelength) {
  const VectorXc a = steering_vector(bs, alpha, wavelength);
  const VectorXc ad = steering_derivative(bs, alpha, wavelength);
  const VectorXc u = vec(a * (a.transpose() * X));
  const VectorXc du = vec(ad * (a.transpose() * X) + a * (ad.transpose() * X));
  return {gain * du, u, kJ * u};
}

std::vector<VectorXc> db_derivatives(double xi, double alpha, cdouble gain, const UlaLayout& bs,
                                     const HarmonicResponse& stcm, const MatrixXc& X, double wavelength) {
  // Two-term form: each STCM crossing keeps its own pattern and derivative.
  const VectorXc a = steering_vector(bs, alpha, wavelength);
  const VectorXc a0 = steering_vector(bs, 0.0, wavelength);
  const VectorXc v_r0 = vec(a * (a0.transpose() * X));
  const VectorXc v_0r = vec(a0 * (a.transpose() * X));
  VectorXc e_r0, d_r0, e_0r, d_0r;
  stcm.evaluate(xi, 0.0, PatternSide::Departure, e_r0, d_r0);
  stcm.evaluate(0.0, xi, PatternSide::Arrival, e_0r, d_0r);
  const Eigen::Index len = v_r0.size();
  const Eigen::Index nh = e_r0.size();
  VectorXc u(len * nh), du(len * nh);
  for (Eigen::Index i = 0; i < nh; ++i) {
    u.segment(i * len, len) = e_r0(i) * v_r0 + e_0r(i) * v_0r;
    du.segment(i * len, len) = d_r0(i) * v_r0 + d_0r(i) * v_0r;
  }
  return {gain * du, u, kJ * u};
}

FisherMatrix fim_multi_target(const std::vector<ScatterPoint>& scene, PathKind kind, const LinkModel& link,
                              const HarmonicResponse& stcm) {
  if (scene.empty()) throw Error(ErrorKind::DimensionMismatch, "no targets");
  const std::size_t R = scene.size();
  const double lambda = link.carrier_wavelength();
  const MatrixXc& X = link.pilots.symbols;
  std::vector<KronColumn> angle_cols(R);
  std::vector<KronColumn> gain_cols;
  gain_cols.reserve(2 * R);
  const VectorXc one = VectorXc::Ones(1);
  for (std::size_t r = 0; r < R; ++r) {
    const Vec3& q = scene[r].position;
    const AnglePair ang = angles_from_position(q, link.geometry);
    const PathGains pg = path_gains(q, link.geometry, scene[r].rcs_sqrt, 1.0, link.loss);
    const VectorXc a = steering_vector(link.bs, ang.alpha, lambda);
    if (kind == PathKind::SB) {
      const VectorXc ad = steering_derivative(link.bs, ang.alpha, lambda);
      const MatrixXc aX = a.transpose() * X;
      const MatrixXc adX = ad.transpose() * X;
      const VectorXc u = vec(a * aX);
      angle_cols[r] = {one, pg.sb_gain * vec(ad * aX + a * adX)};
      gain_cols.push_back({one, u});
      gain_cols.push_back({one, kJ * u});
    } else {
      VectorXc eta, eta_dot;
      stcm.evaluate(ang.xi, 0.0, PatternSide::Departure, eta, eta_dot);
      const VectorXc a0 = steering_vector(link.bs, 0.0, lambda);
      const VectorXc u = vec(a * (a0.transpose() * X) + a0 * (a.transpose() * X));
      angle_cols[r] = {eta_dot, pg.db_gain * u};
      gain_cols.push_back({eta, u});
      gain_cols.push_back({eta, kJ * u});
    }
  }
  angle_cols.insert(angle_cols.end(), gain_cols.begin(), gain_cols.end());
  return fim_kron(angle_cols, link.noise_power, multi_labels(R, kind));
}

FisherMatrix fim_multi_target_reference(const std::vector<ScatterPoint>& scene, PathKind kind,
                                        const LinkModel& link, const HarmonicResponse& stcm) {
  if (scene.empty()) throw Error(ErrorKind::DimensionMismatch, "no targets");
  const std::size_t R = scene.size();
  const double lambda = link.carrier_wavelength();
  std::vector<VectorXc> angles, gains;
  for (std::size_t r = 0; r < R; ++r) {
    const Vec3& q = scene[r].position;
    const AnglePair ang = angles_from_position(q, link.geometry);
    const PathGains pg = path_gains(q, link.geometry, scene[r].rcs_sqrt, 1.0, link.loss);
    const std::vector<VectorXc> d =
        kind == PathKind::SB ? sb_derivatives(ang.alpha, pg.sb_gain, link.bs, link.pilots.symbols, lambda)
                             : db_derivatives(ang.xi, ang.alpha, pg.db_gain, link.bs, stcm, link.pilots.symbols, lambda);
    angles.push_back(d[0]);
    gains.push_back(d[1]);
    gains.push_back(d[2]);
  }
  angles.insert(angles.end(), gains.begin(), gains.end());
  return fim_generic(angles, link.noise_power, multi_labels(R, kind));
}

Eigen::MatrixXd efim_block(const FisherMatrix& F, const std::vector<int>& keep) {
  const Eigen::Index n = F.size();
  std::vector<int> drop;
  std::vector<bool> kept(static_cast<std::size_t>(n), false);
  for (int k : keep) {
    if (k < 0 || k >= n) throw Error(ErrorKind::OutOfRange, fmt::format("parameter index {}", k));
    kept[static_cast<std::size_t>(k)] = true;
  }
  for (int i = 0; i < n; ++i) {
    if (!kept[static_cast<std::size_t>(i)]) drop.push_back(i);
  }
  const Eigen::Index nk = static_cast<Eigen::Index>(keep.size());
  const Eigen::Index nd = static_cast<Eigen::Index>(drop.size());
  Eigen::MatrixXd Faa(nk, nk), Fab(nk, nd), Fbb(nd, nd);
  for (Eigen::Index i = 0; i < nk; ++i) {
    for (Eigen::Index j = 0; j < nk; ++j) Faa(i, j) = F.entries(keep[i], keep[j]);
    for (Eigen::Index j = 0; j < nd; ++j) Fab(i, j) = F.entries(keep[i], drop[j]);
  }
  for (Eigen::Index i = 0; i < nd; ++i) {
    for (Eigen::Index j = 0; j < nd; ++j) Fbb(i, j) = F.entries(drop[i], drop[j]);
  }
  if (nd == 0) return Faa;
  if (scaled_condition_number(Fbb) > kMaskCondition) {
    throw Error(ErrorKind::SingularNuisanceBlock, "nuisance block is not invertible");
  }
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(Fbb);
  return Faa - Fab * ldlt.solve(Fab.transpose());
}

double efim(const FisherMatrix& F, int index) { return efim_block(F, {index})(0, 0); }

AngleBound angle_bound(const FisherMatrix& F, int index) {
  AngleBound out;
  out.condition = F.condition_number();
  if (!(out.condition <= kMaskCondition)) return out;
  try {
    out.efim = efim(F, index);
  } catch (const Error&) {
    return out;
  }
  if (out.efim > 0.0) {
    out.crb = 1.0 / out.efim;
    out.masked = false;
  }
  return out;
}

double peb_from_information(double efim_alpha, double efim_xi, const Eigen::Matrix2d& T) {
  if (!(efim_alpha > 0.0) || !(efim_xi > 0.0)) {
    throw Error(ErrorKind::DegenerateGeometry, "angle information is not positive");
  }
  const Eigen::Matrix2d Fq = T.transpose() * Eigen::Vector2d(efim_alpha, efim_xi).asDiagonal() * T;
  if (scaled_condition_number(Fq) > kMaskCondition) {
    throw Error(ErrorKind::DegenerateGeometry, "angle gradients are parallel; position unobservable");
  }
  return std::sqrt(Fq.inverse().trace());
}

PebResult peb(const std::vector<ScatterPoint>& scene, const LinkModel& link, const HarmonicResponse& stcm) {
  PebResult out;
  out.alpha = angle_bound(fim_multi_target(scene, PathKind::SB, link, stcm), 0);
  out.xi = angle_bound(fim_multi_target(scene, PathKind::DB, link, stcm), 0);
  if (out.alpha.masked || out.xi.masked) return out;
  try {
    out.peb = peb_from_information(out.alpha.efim, out.xi.efim,
                                   jacobian_angles_to_position(scene.front().position, link.geometry));
    out.masked = false;
  } catch (const Error&) {
    out.peb = kInf;
  }
  return out;
}

RisBound crb_ris(double xi, double alpha, cdouble gain, const RisProfile& profile, const PanelLayout& panel,
                 const UlaLayout& bs, const MatrixXc& X, double noise_power, double fc) {
  VectorXc r(1), rd(1);
  r(0) = ris_response(profile, panel, xi, 0.0, fc);
  rd(0) = ris_response_derivative(profile, panel, xi, 0.0, PatternSide::Departure, fc);
  RisBound out;
  out.fim = fim_db_patterns(r, rd, alpha, gain, bs, X, noise_power, kSpeedOfLight / fc);
  out.xi = angle_bound(out.fim, 0);
  const double fbb = out.fim.entries(1, 1);
  if (fbb > 0.0) out.gain_crb = 1.0 / fbb;
  return out;
}

}  // namespace stcm
