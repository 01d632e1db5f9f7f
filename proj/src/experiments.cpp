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

#include "stcm/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <limits>

#include <fmt/chrono.h>
#include <fmt/format.h>
#include <openssl/evp.h>

#ifndef STCM_VERSION
#define STCM_VERSION "0.0.0"
#endif

namespace stcm {

namespace {

using nlohmann::json;

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(t));
}

std::string number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return fmt::format("{:.12g}", v);
}

json grid_json(const GridSpec& grid, const ExperimentConfig& cfg) {
  const PlaneBounds& b = cfg.link.geometry.bounds();
  return {{"x_min", b.x_min}, {"x_max", b.x_max}, {"z_min", b.z_min}, {"z_max", b.z_max},
          {"resolution_m", cfg.grid_resolution}, {"nx", grid.nx()}, {"nz", grid.nz()}};
}

json sidecar(const std::string& experiment, const std::string& map, const std::string& units,
             const std::vector<std::string>& columns, const GridSpec& grid, const ExperimentConfig& cfg) {
  return {{"experiment", experiment}, {"map", map}, {"units", units}, {"columns", columns},
          {"grid", grid_json(grid, cfg)}, {"code_version", code_version()},
          {"config_sha256", config_hash(cfg)}, {"config", cfg.source}};
}

json map_stats(const GridMap& m, bool in_db) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < m.value.size(); ++i) {
    if (m.masked[i]) continue;
    const double v = in_db ? linear_to_db(m.value[i]) : m.value[i];
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  json j = {{"points", m.value.size()}, {"masked", m.masked_count()}};
  if (lo <= hi) {
    j["min"] = lo;
    j["max"] = hi;
  }
  return j;
}

void emit_map(OutputSet& out, const std::string& experiment, const std::string& name, const std::string& units,
              const GridSpec& grid, const GridMap& map, bool in_db, const ExperimentConfig& cfg) {
  out.write(name + ".csv", grid_csv(grid, map, in_db), grid.size());
  out.write_json(name + ".json", sidecar(experiment, name, units, {"x", "z", "value", "masked"}, grid, cfg));
}

}  // namespace

const char* code_version() { return STCM_VERSION; }

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorKind::Io, "SHA-256 failed");
  }
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", md[i]);
  return hex;
}

std::string config_hash(const ExperimentConfig& cfg) { return sha256_hex(cfg.source.dump()); }

OutputSet::OutputSet(std::filesystem::path dir, std::string experiment, const ExperimentConfig& cfg)
    : dir_(std::move(dir)), experiment_(std::move(experiment)), config_sha_(config_hash(cfg)), seed_(cfg.seed),
      started_(utc_now()) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw Error(ErrorKind::Io, fmt::format("cannot create {}: {}", dir_.string(), ec.message()));
}

void OutputSet::write(const std::string& name, const std::string& content, std::size_t rows) {
  const std::filesystem::path path = dir_ / name;
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  os.write(content.data(), static_cast<std::streamsize>(content.size()));
  os.close();
  if (!os) throw Error(ErrorKind::Io, "failed writing " + path.string());
  records_.push_back({name, sha256_hex(content), content.size(), rows});
}

void OutputSet::write_json(const std::string& name, const json& j) { write(name, j.dump(2) + "\n", 0); }

void OutputSet::finish(const json& summary) {
  json outputs = json::array();
  for (const OutputRecord& r : records_) {
    outputs.push_back({{"file", r.file}, {"sha256", r.sha256}, {"bytes", r.bytes}, {"rows", r.rows}});
  }
  const json manifest = {{"experiment", experiment_}, {"code_version", code_version()},
                         {"config_sha256", config_sha_}, {"seed", seed_}, {"started_utc", started_},
                         {"finished_utc", utc_now()}, {"outputs", outputs}, {"summary", summary}};
  const std::filesystem::path path = dir_ / ("manifest_" + experiment_ + ".json");
  const std::filesystem::path tmp = dir_ / ("manifest_" + experiment_ + ".json.tmp");
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    os << manifest.dump(2) << '\n';
    if (!os) throw Error(ErrorKind::Io, "failed writing manifest");
  }
  std::filesystem::rename(tmp, path);
}

std::string grid_csv(const GridSpec& grid, const GridMap& map, bool in_db) {
  std::string s = "x,z,value,masked\n";
  s.reserve(grid.size() * 32);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vec3 q = grid.point(i);
    const double v = map.masked[i] ? std::numeric_limits<double>::infinity()
                                   : (in_db ? linear_to_db(map.value[i]) : map.value[i]);
    s += fmt::format("{},{},{},{}\n", number(q.x()), number(q.z()), number(v), int(map.masked[i]));
  }
  return s;
}

json run_crb_map(const ExperimentConfig& cfg, const RunOptions& opt) {
  const GridSpec grid(cfg.link.geometry.bounds(), cfg.grid_resolution);
  const HarmonicResponse stcm = cfg.link.stcm_response();
  OutputSet out(opt.out_dir, "crb-map", cfg);
  json summary = json::object();
  for (TargetLayout layout : cfg.layouts) {
    const std::vector<ScatterPoint> fixed = fixed_targets(cfg, layout);
    const std::string tag(to_string(layout));
    const GridMap a = crb_map(grid, cfg.link, stcm, fixed, PathKind::SB, cfg.crb_rcs_dbsm, opt.execution);
    emit_map(out, "crb-map", "crb_alpha_" + tag, "dB(rad^2)", grid, a, true, cfg);
    const GridMap x = crb_map(grid, cfg.link, stcm, fixed, PathKind::DB, cfg.crb_rcs_dbsm, opt.execution);
    emit_map(out, "crb-map", "crb_xi_" + tag, "dB(rad^2)", grid, x, true, cfg);
    summary[tag] = {{"crb_alpha_db", map_stats(a, true)}, {"crb_xi_db", map_stats(x, true)}};
  }
  summary["m_f"] = cfg.link.harmonics.m_f;
  out.finish(summary);
  return summary;
}

json run_peb_map(const ExperimentConfig& cfg, const RunOptions& opt) {
  const GridSpec grid(cfg.link.geometry.bounds(), cfg.grid_resolution);
  const HarmonicResponse stcm = cfg.link.stcm_response();
  OutputSet out(opt.out_dir, "peb-map", cfg);
  json summary = json::object();
  for (TargetLayout layout : cfg.layouts) {
    const std::string tag(to_string(layout));
    const GridMap p = peb_map(grid, cfg.link, stcm, fixed_targets(cfg, layout), cfg.crb_rcs_dbsm, opt.execution);
    emit_map(out, "peb-map", "peb_" + tag, "m", grid, p, false, cfg);
    summary[tag] = map_stats(p, false);
  }
  out.finish(summary);
  return summary;
}

json run_detection_map(const ExperimentConfig& cfg, const RunOptions& opt) {
  const GridSpec grid(cfg.link.geometry.bounds(), cfg.grid_resolution);
  OutputSet out(opt.out_dir, "detect-map", cfg);
  json summary = json::object();
  const std::pair<ScatterKind, double> types[] = {{ScatterKind::HumanLike, cfg.hypotheses.rcs_sqrts[1]},
                                                  {ScatterKind::ObjectLike, cfg.hypotheses.rcs_sqrts[2]}};
  for (const auto& [kind, sigma] : types) {
    for (Combiner c : {Combiner::AllOnes, Combiner::MatchedDespread}) {
      const GridMap m = detection_map(grid, cfg.link, sigma, cfg.sigma_nu, cfg.p_fa, c, opt.execution);
      const std::string type(to_string(kind));
      const std::string comb(to_string(c));
      std::string s = "x,z,p_D,sp_type,combiner,masked\n";
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const Vec3 q = grid.point(i);
        const double v = m.masked[i] ? std::numeric_limits<double>::quiet_NaN() : m.value[i];
        s += fmt::format("{},{},{},{},{},{}\n", number(q.x()), number(q.z()), number(v), type, comb, int(m.masked[i]));
      }
      const std::string name = "detect_" + type + "_" + comb;
      out.write(name + ".csv", s, grid.size());
      json side = sidecar("detect-map", name, "probability", {"x", "z", "p_D", "sp_type", "combiner", "masked"}, grid, cfg);
      side["p_fa"] = cfg.p_fa;
      out.write_json(name + ".json", side);
      summary[name] = map_stats(m, false);
    }
  }
  out.finish(summary);
  return summary;
}

json run_classification_mc(const ExperimentConfig& cfg, const RunOptions& opt) {
  ClassificationModel model;
  model.hypotheses = cfg.hypotheses;
  model.gain = cfg.link.loss.gain(2.0 * cfg.classification_distance);
  model.sigma_nu = cfg.sigma_nu;
  model.truth = cfg.truth;
  const std::vector<double> snr = cfg.snr.points();
  const std::vector<ConfusionPoint> pts = classification_sweep(model, snr, {1, 2}, cfg.n_trials, cfg.seed, opt.execution);

  OutputSet out(opt.out_dir, "classify-mc", cfg);
  const std::string header = "snr_db,true_class,p_h0,p_h1,p_h2,n_trials,seed\n";
  std::string mc = header;
  std::string exact = header;
  for (const ConfusionPoint& p : pts) {
    const std::string cls(to_string(static_cast<ScatterKind>(p.true_class)));
    mc += fmt::format("{},{},{},{},{},{},{}\n", number(p.snr_db), cls, number(p.estimate.p[0]), number(p.estimate.p[1]),
                      number(p.estimate.p[2]), p.estimate.n_trials, cfg.seed);
    exact += fmt::format("{},{},{},{},{},{},{}\n", number(p.snr_db), cls, number(p.exact[0]), number(p.exact[1]),
                         number(p.exact[2]), 0, cfg.seed);
  }
  out.write("classification_mc.csv", mc, pts.size());
  out.write("classification_exact.csv", exact, pts.size());
  const json side = {{"experiment", "classify-mc"}, {"columns", {"snr_db", "true_class", "p_h0", "p_h1", "p_h2", "n_trials", "seed"}},
                     {"classification_distance_m", cfg.classification_distance},
                     {"truth_model", cfg.truth == TruthModel::PathGain ? "path_gain" : "rayleigh_scale"},
                     {"code_version", code_version()}, {"config_sha256", config_hash(cfg)}, {"config", cfg.source}};
  out.write_json("classification_mc.json", side);

  json summary = json::object();
  for (const ConfusionPoint& p : pts) {
    if (p.snr_db != snr.back()) continue;
    summary[std::string(to_string(static_cast<ScatterKind>(p.true_class)))] = {
        {"snr_db", p.snr_db}, {"monte_carlo", p.estimate.p}, {"exact", p.exact}};
  }
  out.finish(summary);
  return summary;
}

json run_ris_compare(const ExperimentConfig& cfg, const RunOptions& opt) {
  const GridSpec grid(cfg.link.geometry.bounds(), cfg.grid_resolution);
  const HarmonicResponse stcm = cfg.link.stcm_response();
  const RisProfile profile = uniform_ris_profile(cfg.link.panel);
  const GridMap ris = ris_crb_map(grid, cfg.link, profile, cfg.crb_rcs_dbsm, opt.execution);
  const GridMap st = crb_map(grid, cfg.link, stcm, {}, PathKind::DB, cfg.crb_rcs_dbsm, opt.execution);

  OutputSet out(opt.out_dir, "ris-compare", cfg);
  emit_map(out, "ris-compare", "ris_crb_xi", "dB(rad^2)", grid, ris, true, cfg);
  emit_map(out, "ris-compare", "stcm_crb_xi", "dB(rad^2)", grid, st, true, cfg);

  // Masked RIS points carry infinite variance.
  double ris_min = std::numeric_limits<double>::infinity();
  double sep_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = ris.masked[i] ? std::numeric_limits<double>::infinity() : ris.value[i];
    ris_min = std::min(ris_min, r);
    if (!st.masked[i]) sep_min = std::min(sep_min, linear_to_db(r) - linear_to_db(st.value[i]));
  }
  json summary = {{"ris", map_stats(ris, true)}, {"stcm", map_stats(st, true)},
                  {"ris_min_crb_db", number(linear_to_db(ris_min))}, {"min_separation_db", number(sep_min)}};
  out.finish(summary);
  return summary;
}

json run_validate(const ExperimentConfig& cfg, const RunOptions& opt, bool& all_passed) {
  const std::vector<CheckResult> checks = run_validation(cfg);
  OutputSet out(opt.out_dir, "validate", cfg);
  std::string csv = "check,passed,detail\n";
  all_passed = true;
  json summary = json::object();
  for (const CheckResult& c : checks) {
    csv += fmt::format("{},{},\"{}\"\n", c.name, c.passed ? 1 : 0, c.detail);
    summary[c.name] = c.passed;
    all_passed = all_passed && c.passed;
  }
  out.write("validation.csv", csv, checks.size());
  if (all_passed) out.finish(summary);
  return summary;
}

}  // namespace stcm
