// Copyright 2026 The camfault Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "camfault/core/camera.hpp"
#include "camfault/core/rng.hpp"
#include "camfault/scene/geometry.hpp"
#include "camfault/scene/projection.hpp"

namespace camfault::scene {

enum class Stage { kSunFacing, kSunAverted };

inline const char* stage_name(Stage s) {
  return s == Stage::kSunFacing ? "sun_facing" : "sun_averted";
}

/// One sampled scenario: illumination (Sun azimuth/elevation), spacecraft
/// attitude relative to the Sun-aligned datum, and the Local-Level patch
/// position. Angles in radians.
struct DatasetVariables {
  double sun_azimuth = 0;
  double sun_elevation = 0;
  double roll = 0;
  double pitch = 0;
  double yaw = 0;
  std::array<double, 3> position = {0, 0, 0};
  Stage stage = Stage::kSunFacing;

  bool operator==(const DatasetVariables&) const = default;
};

/// Sun-facing samples keep the Sun inside the raster expanded by this
/// fraction of the image size on every side; Sun-averted samples keep it
/// strictly outside the raster.
inline constexpr double kSunMarginFrac = 0.05;

/// Sun direction in the camera frame for a given attitude: the datum
/// rotation puts the Sun on the boresight, the attitude rotates away from
/// it. Zero attitude therefore projects the Sun onto the raster center.
inline Vec3 sun_camera_direction(const DatasetVariables& vars) {
  const Vec3 sun_local = sun_direction(vars.sun_azimuth, vars.sun_elevation);
  const Mat3 rot = attitude_rotation(vars.roll, vars.pitch, vars.yaw) *
                   sun_datum_rotation(sun_local);
  return (rot * sun_local).normalized();
}

inline SunPixel sun_pixel_for(const DatasetVariables& vars, const CameraModel& cam) {
  return project_sun(sun_camera_direction(vars), cam);
}

inline bool sun_within_margin(const SunPixel& px, const CameraModel& cam) {
  if (px.behind) return false;
  const double mu = kSunMarginFrac * cam.width;
  const double mv = kSunMarginFrac * cam.height;
  return px.u >= -mu && px.u <= cam.width + mu && px.v >= -mv && px.v <= cam.height + mv;
}

/// Draws one scenario, every field uniform within its stage bounds.
///
/// Azimuth and yaw cover (0, 2pi); elevation is (-pi/6, pi/6) facing and
/// (-pi/6, pi/2) averted; roll/pitch are (-FoV/2, FoV/2) facing and
/// (FoV/2, 2pi - FoV/2) averted; position is (-150, 150)^2 x (0, 100).
///
/// The roll/pitch pair is redrawn until the implied Sun pixel honors the
/// stage's geometric contract (inside the margin box when facing, outside
/// the raster when averted). Without the redraw, averted pairs near
/// (pi, pi) compose two half-turns into a rotation about the boresight and
/// re-point the camera at the Sun. Rejection removes ~4% of averted pairs
/// and ~0.7% of facing pairs; accepted pairs are uniform on the legal set.
inline DatasetVariables sample_variables(Stage stage, const CameraModel& cam,
                                         SeededRng& rng) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  constexpr double kPi6 = std::numbers::pi / 6.0;
  const double half_fov = cam.fov_rad() / 2.0;

  DatasetVariables v;
  v.stage = stage;
  v.sun_azimuth = rng.uniform(0.0, kTwoPi);
  v.sun_elevation = stage == Stage::kSunFacing ? rng.uniform(-kPi6, kPi6)
                                               : rng.uniform(-kPi6, std::numbers::pi / 2.0);
  v.yaw = rng.uniform(0.0, kTwoPi);
  v.position[0] = rng.uniform(-150.0, 150.0);
  v.position[1] = rng.uniform(-150.0, 150.0);
  v.position[2] = rng.uniform(0.0, 100.0);

  for (;;) {
    if (stage == Stage::kSunFacing) {
      v.roll = rng.uniform(-half_fov, half_fov);
      v.pitch = rng.uniform(-half_fov, half_fov);
      if (sun_within_margin(sun_pixel_for(v, cam), cam)) break;
    } else {
      v.roll = rng.uniform(half_fov, kTwoPi - half_fov);
      v.pitch = rng.uniform(half_fov, kTwoPi - half_fov);
      if (!sun_pixel_for(v, cam).in_fov) break;
    }
  }
  return v;
}

/// Two-stage acquisition order: the straylight-bearing (Sun-facing) prefix
/// first, the Sun-averted remainder after.
inline std::vector<Stage> stratified_plan(int n_total, double straylight_fraction) {
  if (n_total < 0) throw std::invalid_argument("stratified_plan: n_total must be >= 0");
  if (!(straylight_fraction >= 0.0 && straylight_fraction <= 1.0))
    throw std::invalid_argument("straylight_fraction must lie in [0, 1]");
  const int n_facing = static_cast<int>(std::lround(n_total * straylight_fraction));
  std::vector<Stage> plan(n_total, Stage::kSunAverted);
  for (int i = 0; i < n_facing && i < n_total; ++i) plan[i] = Stage::kSunFacing;
  return plan;
}

}  // namespace camfault::scene
