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

#include <cmath>
#include <stdexcept>

#include "camfault/core/camera.hpp"
#include "camfault/scene/geometry.hpp"

namespace camfault::scene {

/// Pixel location of the light source. u/v stay meaningful outside the
/// raster (near-FoV flare geometry needs them); they are zeroed when the
/// source is behind the camera.
struct SunPixel {
  double u = 0;
  double v = 0;
  bool in_fov = false;
  bool behind = false;

  bool operator==(const SunPixel&) const = default;
};

/// Pinhole projection of a unit camera-frame direction. Boresight is +z,
/// the image center is (width/2, height/2), and the raster is half-open:
/// a source is in the field of view iff 0 <= u < width and 0 <= v < height.
inline SunPixel project_sun(const Vec3& dir_cam, const CameraModel& cam) {
  if (std::abs(dir_cam.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("project_sun: direction must be a unit vector");

  SunPixel px;
  px.behind = dir_cam.z <= 0.0;
  if (!px.behind) {
    const double f = cam.focal_px();
    px.u = cam.cx() + f * (dir_cam.x / dir_cam.z);
    px.v = cam.cy() + f * (dir_cam.y / dir_cam.z);
    px.in_fov = px.u >= 0.0 && px.u < cam.width && px.v >= 0.0 && px.v < cam.height;
  }
  return px;
}

}  // namespace camfault::scene
