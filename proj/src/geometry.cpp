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

#include "stcm/geometry.hpp"

#include <cmath>

namespace stcm {

namespace {

constexpr double kCoincidenceTol = 1e-9;  // m

void require_distinct(const Vec3& q, const SceneGeometry& g) {
  if (g.distance_to_bs(q) < kCoincidenceTol) {
    throw Error(ErrorKind::DegeneratePoint, "point coincides with the BS array centre");
  }
  if (g.distance_to_stcm(q) < kCoincidenceTol) {
    throw Error(ErrorKind::DegeneratePoint, "point coincides with the STCM centre");
  }
}

}  // namespace

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegeneratePoint: return "DegeneratePoint";
    case ErrorKind::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorKind::DegenerateGeometry: return "DegenerateGeometry";
    case ErrorKind::NonPositiveDistance: return "NonPositiveDistance";
    case ErrorKind::NotPerfectSquare: return "NotPerfectSquare";
    case ErrorKind::TooFewSymbols: return "TooFewSymbols";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::SingularInformation: return "SingularInformation";
    case ErrorKind::SingularNuisanceBlock: return "SingularNuisanceBlock";
    case ErrorKind::ZeroRegressor: return "ZeroRegressor";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

SceneGeometry::SceneGeometry() : SceneGeometry(Vec3(0, 0, 0), Vec3(0, 0, 100)) {}

SceneGeometry::SceneGeometry(Vec3 bs_center, Vec3 stcm_center, PlaneBounds bounds)
    : bs_center_(std::move(bs_center)),
      stcm_center_(std::move(stcm_center)),
      bounds_(bounds),
      baseline_((bs_center_ - stcm_center_).norm()) {
  if (!(baseline_ > 0.0)) {
    throw Error(ErrorKind::InvalidConfig, "BS and STCM centres coincide");
  }
  if (bs_center_.y() != 0.0 || stcm_center_.y() != 0.0) {
    throw Error(ErrorKind::InvalidConfig, "BS and STCM must lie in the y = 0 sensing plane");
  }
  // The triangle relations assume the STCM sits on the BS boresight.
  if (std::abs(stcm_center_.x() - bs_center_.x()) > kCoincidenceTol ||
      stcm_center_.z() <= bs_center_.z()) {
    throw Error(ErrorKind::InvalidConfig, "STCM must be placed on the BS boresight (+z)");
  }
  if (!(bounds_.x_min < bounds_.x_max) || !(bounds_.z_min < bounds_.z_max)) {
    throw Error(ErrorKind::InvalidConfig, "empty plane bounds");
  }
}

std::string_view to_string(ScatterKind kind) {
  switch (kind) {
    case ScatterKind::Absent: return "absent";
    case ScatterKind::HumanLike: return "human";
    case ScatterKind::ObjectLike: return "object";
  }
  return "absent";
}

ScatterKind scatter_kind_from_string(std::string_view name) {
  if (name == "absent") return ScatterKind::Absent;
  if (name == "human" || name == "nue" || name == "ue") return ScatterKind::HumanLike;
  if (name == "object" || name == "obj") return ScatterKind::ObjectLike;
  throw Error(ErrorKind::InvalidConfig, "unknown scatter kind '" + std::string(name) + "'");
}

ScatterPoint make_scatter_point(const Vec3& position, ScatterKind kind, double rcs_dbsm) {
  if (position.y() != 0.0) {
    throw Error(ErrorKind::InvalidConfig, "scatter points must lie in the y = 0 plane");
  }
  ScatterPoint sp;
  sp.position = position;
  sp.kind = kind;
  sp.rcs_sqrt = kind == ScatterKind::Absent ? 0.0 : rcs_amplitude_from_dbsm(rcs_dbsm);
  return sp;
}

AnglePair angles_from_position(const Vec3& q, const SceneGeometry& g) {
  require_distinct(q, g);
  const Vec3 from_bs = q - g.bs_center();
  const Vec3 from_stcm = q - g.stcm_center();
  return {std::atan2(from_bs.x(), from_bs.z()), std::atan2(from_stcm.x(), std::abs(from_stcm.z()))};
}

Vec3 position_from_angles(const AnglePair& a, const SceneGeometry& g) {
  const double sum = a.alpha + a.xi;
  if (std::abs(sum) < kDegenerateAngleSum) {
    throw Error(ErrorKind::DegenerateTriangle, "alpha + xi is too close to zero; range is unobservable");
  }
  const double d_r = g.baseline() * std::sin(a.xi) / std::sin(sum);
  if (!(d_r > 0.0)) {
    throw Error(ErrorKind::DegenerateTriangle, "angles do not close a triangle in front of both terminals");
  }
  return g.bs_center() + Vec3(d_r * std::sin(a.alpha), 0.0, d_r * std::cos(a.alpha));
}

Eigen::Matrix2d jacobian_angles_to_position(const Vec3& q, const SceneGeometry& g) {
  require_distinct(q, g);
  const Vec3 b = q - g.bs_center();
  const Vec3 s = q - g.stcm_center();
  const double rb2 = b.x() * b.x() + b.z() * b.z();
  const double rs2 = s.x() * s.x() + s.z() * s.z();
  // xi is measured against |dz|, so its z-derivative carries sign(dz).
  const double sz = s.z() < 0.0 ? -1.0 : 1.0;

  Eigen::Matrix2d t;
  t << b.z() / rb2, -b.x() / rb2,
       std::abs(s.z()) / rs2, -sz * s.x() / rs2;
  return t;
}

}  // namespace stcm
