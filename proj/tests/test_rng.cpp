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


#include <set>

#include <gtest/gtest.h>

#include "stcm/rng.hpp"

using namespace stcm;

namespace {

// Known-answer vectors from the Random123 distribution.
TEST(Philox, KnownAnswers) {
  EXPECT_EQ(philox4x32_10({0, 0, 0, 0}, {0, 0}), (PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(philox4x32_10({~0u, ~0u, ~0u, ~0u}, {~0u, ~0u}),
            (PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
            (PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(RandomStream, ReplayAndSeparation) {
  RandomStream a(11, StreamDomain::Test, 4), b(11, StreamDomain::Test, 4);
  RandomStream c(11, StreamDomain::Test, 5), d(12, StreamDomain::Test, 4), e(11, StreamDomain::Validation, 4);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 100; ++i) {
    const std::uint64_t x = a.next_u64();
    ASSERT_EQ(x, b.next_u64());
    seen.insert(x);
    seen.insert(c.next_u64());
    seen.insert(d.next_u64());
    seen.insert(e.next_u64());
  }
  EXPECT_EQ(seen.size(), 400u);
}

TEST(RandomStream, Moments) {
  RandomStream rs(1, StreamDomain::Test, 0);
  const int n = 200000;
  double su = 0, sn = 0, sn2 = 0, sc = 0;
  cdouble cm = 0;
  for (int i = 0; i < n; ++i) {
    const double u = rs.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    su += u;
    const double z = rs.normal();
    sn += z;
    sn2 += z * z;
    const cdouble w = rs.complex_normal(2.0);
    sc += std::norm(w);
    cm += w * w;
  }
  EXPECT_NEAR(su / n, 0.5, 0.003);
  EXPECT_NEAR(sn / n, 0.0, 0.01);
  EXPECT_NEAR(sn2 / n, 1.0, 0.01);
  EXPECT_NEAR(sc / n, 2.0, 0.02);
  EXPECT_NEAR(std::abs(cm) / n, 0.0, 0.03);  // circular: E[w^2] = 0
}

}  // namespace
