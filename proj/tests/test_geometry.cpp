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


#include <gtest/gtest.h>

#include "stcm/geometry.hpp"
#include "stcm/rng.hpp"

using namespace stcm;

namespace {

SceneGeometry table_scene() { return SceneGeometry({0, 0, 0}, {0, 0, 100}); }

TEST(Geometry, BoresightAngles) {
  const SceneGeometry g = table_scene();
  const AnglePair a = angles_from_position({0, 0, 50}, g);
  EXPECT_DOUBLE_EQ(a.alpha, 0.0);
  EXPECT_DOUBLE_EQ(a.xi, 0.0);
  const AnglePair b = angles_from_position({50, 0, 50}, g);
  EXPECT_NEAR(b.alpha, kPi / 4, 1e-15);
  EXPECT_NEAR(b.xi, kPi / 4, 1e-15);
  EXPECT_NEAR(b.zeta(), kPi / 2, 1e-15);
}

TEST(Geometry, RoundTrip) {
  const SceneGeometry g = table_scene();
  RandomStream rs(3, StreamDomain::Test, 0);
  for (int i = 0; i < 2000; ++i) {
    const Vec3 q(-80 + 160 * rs.uniform(), 0, 0.5 + 99 * rs.uniform());
    const Vec3 r = position_from_angles(angles_from_position(q, g), g);
    ASSERT_LT((r - q).norm(), 1e-9) << q.transpose();
  }
}

TEST(Geometry, LawOfSines) {
  const SceneGeometry g = table_scene();
  const Vec3 q(31, 0, 42);
  const AnglePair a = angles_from_position(q, g);
  const double ds = g.baseline();
  // d_r / sin(xi) = d_S / sin(zeta), with each side opposite its angle.
  EXPECT_NEAR(g.distance_to_bs(q) / std::sin(a.xi), ds / std::sin(a.zeta()), 1e-10);
  EXPECT_NEAR(g.distance_to_stcm(q) / std::sin(a.alpha), ds / std::sin(a.zeta()), 1e-10);
}

TEST(Geometry, JacobianMatchesFiniteDifference) {
  const SceneGeometry g = table_scene();
  const double h = 1e-5;
  for (const Vec3& q : {Vec3(0, 0, 50), Vec3(-40, 0, 20), Vec3(70, 0, 90), Vec3(12, 0, 3)}) {
    const Eigen::Matrix2d T = jacobian_angles_to_position(q, g);
    const Vec3 ex(h, 0, 0), ez(0, 0, h);
    const AnglePair px = angles_from_position(q + ex, g), mx = angles_from_position(q - ex, g);
    const AnglePair pz = angles_from_position(q + ez, g), mz = angles_from_position(q - ez, g);
    EXPECT_NEAR(T(0, 0), (px.alpha - mx.alpha) / (2 * h), 1e-8);
    EXPECT_NEAR(T(0, 1), (pz.alpha - mz.alpha) / (2 * h), 1e-8);
    EXPECT_NEAR(T(1, 0), (px.xi - mx.xi) / (2 * h), 1e-8);
    EXPECT_NEAR(T(1, 1), (pz.xi - mz.xi) / (2 * h), 1e-8);
  }
}

TEST(Geometry, Degeneracies) {
  const SceneGeometry g = table_scene();
  EXPECT_THROW(angles_from_position({0, 0, 0}, g), Error);
  try {
    position_from_angles({0.3, -0.3}, g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateTriangle);
  }
  EXPECT_THROW(make_scatter_point({1, 2, 3}, ScatterKind::HumanLike, 1.0), Error);
}

TEST(Geometry, ScatterPointRcs) {
  const ScatterPoint p = make_scatter_point({1, 0, 3}, ScatterKind::ObjectLike, 17.0);
  EXPECT_NEAR(p.rcs_sqrt * p.rcs_sqrt, std::pow(10.0, 1.7), 1e-12);
  EXPECT_EQ(make_scatter_point({1, 0, 3}, ScatterKind::Absent, 17.0).rcs_sqrt, 0.0);
  EXPECT_EQ(scatter_kind_from_string(to_string(ScatterKind::HumanLike)), ScatterKind::HumanLike);
}

}  // namespace
