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


#include <cstdio>
#include <exception>
#include <fstream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "stcm/experiments.hpp"

namespace {

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<double> grid_res;
  std::optional<int> threads;
  std::optional<int> harmonics;
  std::string out = "out";
  bool serial = false;
};

void add_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON configuration overriding the built-in defaults")->check(CLI::ExistingFile);
  cmd->add_option("--seed", f.seed, "Master seed");
  cmd->add_option("--out", f.out, "Output directory");
  cmd->add_option("--grid-res", f.grid_res, "Grid resolution in metres")->check(CLI::PositiveNumber);
  cmd->add_option("--threads", f.threads, "OpenMP threads (0 = runtime default)")->check(CLI::NonNegativeNumber);
  cmd->add_option("--harmonics", f.harmonics, "Harmonic half-width m_f")->check(CLI::NonNegativeNumber);
  cmd->add_flag("--serial", f.serial, "Use the serial reference kernels");
}

stcm::ExperimentConfig resolve(const Flags& f) {
  nlohmann::json j = nlohmann::json::parse(stcm::default_config_json());
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    nlohmann::json user;
    try {
      in >> user;
    } catch (const nlohmann::json::exception& e) {
      throw stcm::Error(stcm::ErrorKind::InvalidConfig, fmt::format("{}: {}", f.config, e.what()));
    }
    if (!user.is_object()) throw stcm::Error(stcm::ErrorKind::InvalidConfig, "configuration must be a JSON object");
    j.merge_patch(user);
  }
  if (f.seed) j["seed"] = *f.seed;
  if (f.grid_res) j["grid_resolution_m"] = *f.grid_res;
  if (f.threads) j["threads"] = *f.threads;
  if (f.harmonics) j["stcm"]["m_f"] = *f.harmonics;
  return stcm::rebuild(j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sensing bounds, detection and classification for STCM-assisted MIMO"};
  app.set_version_flag("--version", stcm::code_version());
  app.require_subcommand(1);
  Flags flags;
  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {{"crb-map", "Angle CRB maps for the single, double and ten-target layouts"},
                      {"peb-map", "Position error bound maps"},
                      {"detect-map", "Detection probability maps for both SP types and combiners"},
                      {"classify-mc", "Monte Carlo confusion probabilities versus SNR"},
                      {"ris-compare", "Double-bounce angle CRB: fixed RIS versus STCM"},
                      {"validate", "Library self-consistency checks"}};
  for (const Sub& s : subs) add_flags(app.add_subcommand(s.name, s.help), flags);

  CLI11_PARSE(app, argc, argv);
  const std::string cmd = app.get_subcommands().front()->get_name();

  try {
    const stcm::ExperimentConfig cfg = resolve(flags);
    stcm::set_threads(cfg.threads);
    stcm::RunOptions opt;
    opt.out_dir = flags.out;
    opt.execution = flags.serial ? stcm::Execution::Serial : stcm::Execution::Parallel;

    nlohmann::json summary;
    bool ok = true;
    if (cmd == "crb-map") {
      summary = stcm::run_crb_map(cfg, opt);
    } else if (cmd == "peb-map") {
      summary = stcm::run_peb_map(cfg, opt);
    } else if (cmd == "detect-map") {
      summary = stcm::run_detection_map(cfg, opt);
    } else if (cmd == "classify-mc") {
      summary = stcm::run_classification_mc(cfg, opt);
    } else if (cmd == "ris-compare") {
      summary = stcm::run_ris_compare(cfg, opt);
    } else {
      summary = stcm::run_validate(cfg, opt, ok);
    }
    fmt::print("{}\n", summary.dump(2));
    if (!ok) {
      fmt::print(stderr, "{}: one or more checks failed\n", cmd);
      return 1;
    }
    return 0;
  } catch (const std::exception& e) {
    fmt::print(stderr, "{}: {}\n", cmd, e.what());
    return 2;
  }
}
