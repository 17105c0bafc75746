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
#include "camfault/textures/texture.hpp"

namespace camfault::tex {

/// Cosine-fourth falloff for the off-axis angle of a pixel at radial
/// distance r from the raster center: cos^4(atan(r / focal)) evaluated in
/// closed form as 1 / (1 + (r/f)^2)^2.
inline double cos4_falloff(double r_px, double focal_px) {
  const double q = 1.0 + (r_px / focal_px) * (r_px / focal_px);
  return 1.0 / (q * q);
}

/// Full-frame illuminance field E0 * cos^4(theta). Acts downstream as a
/// per-pixel ceiling: the injector scales channels by field/255.
inline Texture vignette_field(double e0, const CameraModel& cam) {
  if (!(e0 >= 0.0 && e0 <= 255.0))
    throw std::invalid_argument("vignette_field: E0 must lie in [0, 255]");
  const double f = cam.focal_px();
  Texture t(cam.width, cam.height);
  for (int y = 0; y < cam.height; ++y) {
    for (int x = 0; x < cam.width; ++x) {
      const double r = std::hypot(x - cam.cx(), y - cam.cy());
      t.value(x, y) = static_cast<float>(e0 * cos4_falloff(r, f));
    }
  }
  return t;
}

}  // namespace camfault::tex
