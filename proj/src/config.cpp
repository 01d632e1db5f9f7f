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

#include "stcm/config.hpp"

#include <cmath>
#include <fstream>

#include <fmt/format.h>

namespace stcm {

namespace {

using nlohmann::json;

constexpr const char* kDefaults = R"json({
  "geometry": {
    "bs_center": [0.0, 0.0, 0.0],
    "stcm_center": [0.0, 0.0, 100.0],
    "bounds": {"x_min": -80.0, "x_max": 80.0, "z_min": 0.0, "z_max": 100.0}
  },
  "carrier_hz": 10.0e9,
  "bs": {"antennas": 16, "spacing_wavelengths": 0.5},
  "stcm": {
    "n_x": 8, "n_y": 8, "spacing_wavelengths": 0.5,
    "code": {
      "kind": "runs", "length": 8, "period_s": 2.0e-6,
      "runs": [[7, 2], [5, 3], [5, 3], [5, 3], [1, 2], [3, 0], [7, 7], [1, 1]],
      "key": 9070, "shift": 1, "path": ""
    },
    "m_f": 4,
    "wavelength_mode": "exact"
  },
  "ris": {"profile": "uniform"},
  "pilots": {"total_power_dbm": 12.0},
  "noise": {"power_dbm": -120.0},
  "path_loss": {"exponent": 2.0, "sqrt_esymbol": 1.0},
  "bounds": {
    "layouts": ["single", "double", "ten"],
    "rcs_dbsm": 0.0,
    "double_fixed_point": [60.0, 0.0, 40.0],
    "ten_ring_radius_m": 50.0,
    "ten_span_deg": 72.0
  },
  "grid_resolution_m": 1.0,
  "targets": {
    "human_rcs_dbsm": 1.0,
    "object_rcs_dbsm": 17.0,
    "sigma_nu": 1.0,
    "priors": [0.3333333333333333, 0.3333333333333333, 0.3333333333333334]
  },
  "detection": {"p_fa": 1.0e-4},
  "classification": {
    "n_trials": 10000,
    "snr_db": {"start": -20.0, "stop": 50.0, "step": 5.0},
    "distance_m": 50.0,
    "truth": "path_gain"
  },
  "seed": 1,
  "threads": 0
})json";

Vec3 vec3(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) throw Error(ErrorKind::InvalidConfig, fmt::format("{} must be [x, y, z]", what));
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

CodingMatrix build_code(const json& c, const PanelLayout& panel) {
  const std::string kind = c.at("kind").get<std::string>();
  const int L = c.at("length").get<int>();
  const double T0 = c.at("period_s").get<double>();
  CodingMatrix code;
  if (kind == "runs") {
    std::vector<ColumnRun> runs;
    for (const auto& r : c.at("runs")) {
      if (!r.is_array() || r.size() != 2) throw Error(ErrorKind::InvalidConfig, "each run is [length, offset]");
      runs.push_back({r[0].get<int>(), r[1].get<int>()});
    }
    code = run_coding_matrix(panel, L, runs, T0);
  } else if (kind == "philox") {
    code = philox_coding_matrix(panel, L, c.at("key").get<std::uint64_t>(), T0);
  } else if (kind == "column_progressive") {
    code = column_progressive_code(panel, L, c.at("shift").get<int>(), T0);
  } else if (kind == "csv") {
    const std::string path = c.at("path").get<std::string>();
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open coding matrix '" + path + "'");
    code = read_code_csv(in, CodingScheme::PM, T0);
  } else {
    throw Error(ErrorKind::InvalidConfig, "unknown code kind '" + kind + "'");
  }
  if (code.elements() != panel.size()) {
    throw Error(ErrorKind::InvalidConfig, "coding matrix rows must equal n_x * n_y");
  }
  validate(code);
  return code;
}

}  // namespace

std::string_view to_string(TargetLayout l) {
  switch (l) {
    case TargetLayout::Single: return "single";
    case TargetLayout::Double: return "double";
    case TargetLayout::Ten: return "ten";
  }
  return "single";
}

TargetLayout target_layout_from_string(std::string_view name) {
  if (name == "single") return TargetLayout::Single;
  if (name == "double") return TargetLayout::Double;
  if (name == "ten") return TargetLayout::Ten;
  throw Error(ErrorKind::InvalidConfig, "unknown target layout '" + std::string(name) + "'");
}

std::vector<double> SnrSweep::points() const {
  if (!(step_db > 0.0) || stop_db < start_db) throw Error(ErrorKind::InvalidConfig, "bad SNR sweep");
  std::vector<double> out;
  const int n = static_cast<int>(std::floor((stop_db - start_db) / step_db + 1e-9));
  for (int i = 0; i <= n; ++i) out.push_back(start_db + i * step_db);
  return out;
}

const char* default_config_json() { return kDefaults; }

ExperimentConfig rebuild(const json& j) {
  try {
    ExperimentConfig cfg;
    cfg.source = j;
    LinkModel& link = cfg.link;

    const json& g = j.at("geometry");
    const json& b = g.at("bounds");
    PlaneBounds bounds{b.at("x_min").get<double>(), b.at("x_max").get<double>(), b.at("z_min").get<double>(),
                       b.at("z_max").get<double>()};
    link.geometry = SceneGeometry(vec3(g.at("bs_center"), "bs_center"), vec3(g.at("stcm_center"), "stcm_center"), bounds);

    link.fc = j.at("carrier_hz").get<double>();
    if (!(link.fc > 0.0)) throw Error(ErrorKind::InvalidConfig, "carrier must be positive");
    const double lambda = link.carrier_wavelength();

    const json& bs = j.at("bs");
    link.bs = make_ula(bs.at("antennas").get<int>(), bs.at("spacing_wavelengths").get<double>() * lambda,
                       link.geometry.bs_center());

    const json& st = j.at("stcm");
    link.panel = make_panel(st.at("n_x").get<int>(), st.at("n_y").get<int>(),
                            st.at("spacing_wavelengths").get<double>() * lambda);
    link.code = build_code(st.at("code"), link.panel);
    link.harmonics.m_f = st.at("m_f").get<int>();
    if (link.harmonics.m_f < 0) throw Error(ErrorKind::InvalidConfig, "m_f must be non-negative");
    const std::string mode = st.at("wavelength_mode").get<std::string>();
    if (mode == "exact") {
      link.wavelength_mode = WavelengthMode::Exact;
    } else if (mode == "carrier") {
      link.wavelength_mode = WavelengthMode::Carrier;
    } else {
      throw Error(ErrorKind::InvalidConfig, "wavelength_mode must be exact or carrier");
    }

    cfg.ris_profile = j.at("ris").at("profile").get<std::string>();
    if (cfg.ris_profile != "uniform") throw Error(ErrorKind::InvalidConfig, "only the uniform RIS profile is built in");

    link.pilots = dft_pilots(link.bs.m_antennas, dbm_to_watt(j.at("pilots").at("total_power_dbm").get<double>()));
    link.noise_power = dbm_to_watt(j.at("noise").at("power_dbm").get<double>());
    link.loss.wavelength = lambda;
    link.loss.exponent = j.at("path_loss").at("exponent").get<double>();
    link.loss.sqrt_esymbol = j.at("path_loss").at("sqrt_esymbol").get<double>();

    const json& bd = j.at("bounds");
    cfg.layouts.clear();
    for (const auto& l : bd.at("layouts")) cfg.layouts.push_back(target_layout_from_string(l.get<std::string>()));
    cfg.crb_rcs_dbsm = bd.at("rcs_dbsm").get<double>();
    cfg.double_fixed_point = vec3(bd.at("double_fixed_point"), "double_fixed_point");
    cfg.ten_ring_radius = bd.at("ten_ring_radius_m").get<double>();
    cfg.ten_span_deg = bd.at("ten_span_deg").get<double>();

    cfg.grid_resolution = j.at("grid_resolution_m").get<double>();
    if (!(cfg.grid_resolution > 0.0)) throw Error(ErrorKind::InvalidConfig, "grid resolution must be positive");

    const json& t = j.at("targets");
    cfg.hypotheses.rcs_sqrts = {0.0, rcs_amplitude_from_dbsm(t.at("human_rcs_dbsm").get<double>()),
                                rcs_amplitude_from_dbsm(t.at("object_rcs_dbsm").get<double>())};
    const json& pri = t.at("priors");
    if (!pri.is_array() || pri.size() != 3) throw Error(ErrorKind::InvalidConfig, "priors must have three entries");
    for (int i = 0; i < 3; ++i) cfg.hypotheses.priors[i] = pri[i].get<double>();
    validate(cfg.hypotheses);
    cfg.sigma_nu = t.at("sigma_nu").get<double>();
    if (cfg.sigma_nu < 0.0) throw Error(ErrorKind::InvalidConfig, "sigma_nu must be non-negative");

    cfg.p_fa = j.at("detection").at("p_fa").get<double>();
    if (!(cfg.p_fa > 0.0 && cfg.p_fa < 1.0)) throw Error(ErrorKind::InvalidConfig, "p_fa must be in (0, 1)");

    const json& c = j.at("classification");
    cfg.n_trials = c.at("n_trials").get<std::int64_t>();
    if (cfg.n_trials < 1) throw Error(ErrorKind::InvalidConfig, "n_trials must be at least 1");
    cfg.snr = {c.at("snr_db").at("start").get<double>(), c.at("snr_db").at("stop").get<double>(),
               c.at("snr_db").at("step").get<double>()};
    (void)cfg.snr.points();
    cfg.classification_distance = c.at("distance_m").get<double>();
    const std::string truth = c.at("truth").get<std::string>();
    if (truth == "path_gain") {
      cfg.truth = TruthModel::PathGain;
    } else if (truth == "rayleigh_scale") {
      cfg.truth = TruthModel::RayleighScale;
    } else {
      throw Error(ErrorKind::InvalidConfig, "truth must be path_gain or rayleigh_scale");
    }

    cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.threads = j.at("threads").get<int>();
    return cfg;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidConfig, e.what());
  }
}

ExperimentConfig load_config(const json& overrides) {
  json j = json::parse(kDefaults);
  if (!overrides.is_null()) {
    if (!overrides.is_object()) throw Error(ErrorKind::InvalidConfig, "configuration must be a JSON object");
    j.merge_patch(overrides);
  }
  return rebuild(j);
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open config '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidConfig, fmt::format("{}: {}", path, e.what()));
  }
  return load_config(j);
}

ExperimentConfig default_config() { return load_config(json()); }

std::vector<ScatterPoint> fixed_targets(const ExperimentConfig& cfg, TargetLayout layout) {
  std::vector<ScatterPoint> out;
  const Vec3& bs = cfg.link.geometry.bs_center();
  if (layout == TargetLayout::Double) {
    out.push_back(make_scatter_point(cfg.double_fixed_point, ScatterKind::ObjectLike, cfg.crb_rcs_dbsm));
  } else if (layout == TargetLayout::Ten) {
    const double step = 2.0 * cfg.ten_span_deg / 8.0;
    for (int i = 0; i < 9; ++i) {
      const double a = deg2rad(-cfg.ten_span_deg + i * step);
      const Vec3 q = bs + cfg.ten_ring_radius * Vec3(std::sin(a), 0.0, std::cos(a));
      out.push_back(make_scatter_point(q, ScatterKind::ObjectLike, cfg.crb_rcs_dbsm));
    }
  }
  return out;
}

}  // namespace stcm
