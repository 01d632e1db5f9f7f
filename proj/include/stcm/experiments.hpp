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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "stcm/config.hpp"
#include "stcm/sweep.hpp"

namespace stcm {

const char* code_version();

std::string sha256_hex(std::string_view data);

/// SHA-256 of the resolved configuration, serialised with sorted keys.
std::string config_hash(const ExperimentConfig& cfg);

struct OutputRecord {
  std::string file;
  std::string sha256;
  std::size_t bytes = 0;
  std::size_t rows = 0;
};

/// Collects outputs in memory-checked form; the manifest is written last and
/// only when every output landed on disk.
class OutputSet {
 public:
  OutputSet(std::filesystem::path dir, std::string experiment, const ExperimentConfig& cfg);

  void write(const std::string& name, const std::string& content, std::size_t rows);
  void write_json(const std::string& name, const nlohmann::json& j);
  void finish(const nlohmann::json& summary);

  const std::vector<OutputRecord>& records() const { return records_; }

 private:
  std::filesystem::path dir_;
  std::string experiment_;
  std::string config_sha_;
  std::uint64_t seed_;
  std::string started_;
  std::vector<OutputRecord> records_;
};

/// x, z, value, masked; value in dB (10 log10) when `in_db`, "inf" where masked.
std::string grid_csv(const GridSpec& grid, const GridMap& map, bool in_db);

struct RunOptions {
  std::filesystem::path out_dir = "out";
  Execution execution = Execution::Parallel;
};

nlohmann::json run_crb_map(const ExperimentConfig& cfg, const RunOptions& opt);
nlohmann::json run_peb_map(const ExperimentConfig& cfg, const RunOptions& opt);
nlohmann::json run_detection_map(const ExperimentConfig& cfg, const RunOptions& opt);
nlohmann::json run_classification_mc(const ExperimentConfig& cfg, const RunOptions& opt);
nlohmann::json run_ris_compare(const ExperimentConfig& cfg, const RunOptions& opt);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Fast self-consistency suite behind the `validate` subcommand.
std::vector<CheckResult> run_validation(const ExperimentConfig& cfg);
nlohmann::json run_validate(const ExperimentConfig& cfg, const RunOptions& opt, bool& all_passed);

}  // namespace stcm
