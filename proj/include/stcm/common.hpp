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

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace stcm {

using cdouble = std::complex<double>;

using Vec3 = Eigen::Vector3d;
using VectorXc = Eigen::VectorXcd;
using MatrixXc = Eigen::MatrixXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr cdouble kJ{0.0, 1.0};

enum class ErrorKind {
  DegeneratePoint,
  DegenerateTriangle,
  DegenerateGeometry,
  NonPositiveDistance,
  NotPerfectSquare,
  TooFewSymbols,
  DimensionMismatch,
  SingularInformation,
  SingularNuisanceBlock,
  ZeroRegressor,
  OutOfRange,
  InvalidConfig,
  Io,
};

const char* to_string(ErrorKind kind);

/// Every recoverable failure in the library is reported through this type;
/// `kind()` lets sweeps turn specific failures into masked grid points.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }
inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

/// Amplitude-domain RCS: sigma_r such that sigma_r^2 is the power RCS in m^2.
inline double rcs_amplitude_from_dbsm(double dbsm) { return std::pow(10.0, dbsm / 20.0); }

inline double deg2rad(double deg) { return deg * kPi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / kPi; }

}  // namespace stcm
