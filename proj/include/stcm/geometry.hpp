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

#include <string_view>

#include "stcm/common.hpp"

namespace stcm {

// Scene convention: the sensing plane is y = 0. Both terminals look along
// their boresight into the scene; the BS boresight is +z, the STCM boresight
// points from the STCM towards the BS side of the plane. Angles are signed
// positive towards +x.

struct PlaneBounds {
  double x_min = -80.0;
  double x_max = 80.0;
  double z_min = 0.0;
  double z_max = 100.0;

  bool contains(const Vec3& q) const {
    return q.x() >= x_min && q.x() <= x_max && q.z() >= z_min && q.z() <= z_max;
  }
};

class SceneGeometry {
 public:
  SceneGeometry();
  SceneGeometry(Vec3 bs_center, Vec3 stcm_center, PlaneBounds bounds = {});

  const Vec3& bs_center() const { return bs_center_; }
  const Vec3& stcm_center() const { return stcm_center_; }
  const PlaneBounds& bounds() const { return bounds_; }

  /// BS–STCM baseline length d_S.
  double baseline() const { return baseline_; }

  double distance_to_bs(const Vec3& q) const { return (q - bs_center_).norm(); }
  double distance_to_stcm(const Vec3& q) const { return (q - stcm_center_).norm(); }

 private:
  Vec3 bs_center_;
  Vec3 stcm_center_;
  PlaneBounds bounds_;
  double baseline_;
};

/// BS→SP angle `alpha` and STCM→SP angle `xi`, radians from each boresight.
struct AnglePair {
  double alpha = 0.0;
  double xi = 0.0;

  /// Interior angle at the scatter point of the BS–SP–STCM triangle.
  double zeta() const { return kPi - alpha - xi; }
};

enum class ScatterKind { Absent = 0, HumanLike = 1, ObjectLike = 2 };

std::string_view to_string(ScatterKind kind);
ScatterKind scatter_kind_from_string(std::string_view name);

struct ScatterPoint {
  Vec3 position = Vec3::Zero();
  double rcs_sqrt = 0.0;  // sigma_r, amplitude domain
  ScatterKind kind = ScatterKind::Absent;
};

/// Builds a scatter point from a power RCS given in dB·m². Absent points get
/// rcs_sqrt = 0 regardless of `rcs_dbsm`.
ScatterPoint make_scatter_point(const Vec3& position, ScatterKind kind, double rcs_dbsm);

/// Separation below which the BS–SP–STCM triangle is treated as collapsed.
inline constexpr double kDegenerateAngleSum = 1e-3;

AnglePair angles_from_position(const Vec3& q, const SceneGeometry& g);

/// Law-of-sines localisation. Throws DegenerateTriangle when |alpha + xi|
/// is below kDegenerateAngleSum.
Vec3 position_from_angles(const AnglePair& a, const SceneGeometry& g);

/// Rows (d alpha/dx, d alpha/dz) and (d xi/dx, d xi/dz).
Eigen::Matrix2d jacobian_angles_to_position(const Vec3& q, const SceneGeometry& g);

}  // namespace stcm
