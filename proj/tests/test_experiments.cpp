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


#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "stcm/experiments.hpp"

using namespace stcm;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t data_rows(const fs::path& p) {
  const std::string s = slurp(p);
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')) - 1;
}

class Experiments : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() / ("stcm_exp_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    cfg = load_config(nlohmann::json::parse(R"({"grid_resolution_m": 10.0, "classification": {"n_trials": 300}})"));
  }
  void TearDown() override { fs::remove_all(dir); }

  fs::path dir;
  ExperimentConfig cfg;
};

TEST(Sha256, KnownAnswer) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_F(Experiments, ManifestChecksumsAndRowCounts) {
  run_crb_map(cfg, {dir, Execution::Parallel});
  const nlohmann::json man = nlohmann::json::parse(slurp(dir / "manifest_crb-map.json"));
  EXPECT_EQ(man["config_sha256"], config_hash(cfg));
  EXPECT_EQ(man["code_version"], code_version());
  const GridSpec grid(cfg.link.geometry.bounds(), cfg.grid_resolution);
  int csvs = 0;
  for (const auto& o : man["outputs"]) {
    const fs::path p = dir / o["file"].get<std::string>();
    ASSERT_TRUE(fs::exists(p));
    EXPECT_EQ(sha256_hex(slurp(p)), o["sha256"]);
    if (p.extension() == ".csv") {
      ++csvs;
      EXPECT_EQ(data_rows(p), grid.size());
      EXPECT_EQ(o["rows"], grid.size());
    }
  }
  EXPECT_EQ(csvs, 6);
}

TEST_F(Experiments, ClassificationRows) {
  run_classification_mc(cfg, {dir, Execution::Parallel});
  EXPECT_EQ(data_rows(dir / "classification_mc.csv"), cfg.snr.points().size() * 2);
  EXPECT_EQ(slurp(dir / "classification_mc.csv").substr(0, 46), "snr_db,true_class,p_h0,p_h1,p_h2,n_trials,seed");
}

TEST_F(Experiments, DetectionColumns) {
  run_detection_map(cfg, {dir, Execution::Parallel});
  const std::string s = slurp(dir / "detect_object_matched_despread.csv");
  EXPECT_EQ(s.substr(0, s.find('\n')), "x,z,p_D,sp_type,combiner,masked");
}

TEST_F(Experiments, RerunIsByteIdentical) {
  run_peb_map(cfg, {dir / "a", Execution::Parallel});
  run_peb_map(cfg, {dir / "b", Execution::Serial});
  for (const char* f : {"peb_single.csv", "peb_double.csv", "peb_ten.csv", "peb_ten.json"}) {
    EXPECT_EQ(slurp(dir / "a" / f), slurp(dir / "b" / f)) << f;
  }
}

TEST_F(Experiments, NoManifestWithoutFinish) {
  {
    OutputSet out(dir, "partial", cfg);
    out.write("x.csv", "a\n1\n", 1);
  }
  EXPECT_TRUE(fs::exists(dir / "x.csv"));
  EXPECT_FALSE(fs::exists(dir / "manifest_partial.json"));
}

TEST_F(Experiments, ValidationSuitePasses) {
  bool ok = false;
  run_validate(cfg, {dir, Execution::Parallel}, ok);
  EXPECT_TRUE(ok);
  EXPECT_TRUE(fs::exists(dir / "manifest_validate.json"));
}

TEST_F(Experiments, ConfigHashTracksContent) {
  const ExperimentConfig other = load_config(nlohmann::json::parse(R"({"grid_resolution_m": 10.0, "seed": 2})"));
  EXPECT_NE(config_hash(cfg), config_hash(other));
  EXPECT_EQ(config_hash(cfg), config_hash(rebuild(cfg.source)));
}

}  // namespace
