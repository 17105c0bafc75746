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
#include <numbers>
#include <stdexcept>

namespace camfault {

/// Pinhole camera intrinsics. Focal length in pixels is derived from the
/// horizontal field of view: (width/2) / tan(fov/2).
struct CameraModel {
  double fov_deg = 65.0;
  int width = 1024;
  int height = 1024;

  CameraModel() = default;
  CameraModel(double fov_deg_, int width_, int height_)
      : fov_deg(fov_deg_), width(width_), height(height_) {
    validate();
  }

  void validate() const {
    if (!(fov_deg > 0.0 && fov_deg < 180.0))
      throw std::invalid_argument("CameraModel: fov_deg must be in (0, 180)");
    if (width <= 0 || height <= 0)
      throw std::invalid_argument("CameraModel: resolution must be positive");
  }

  double fov_rad() const { return fov_deg * std::numbers::pi / 180.0; }
  double focal_px() const { return (width / 2.0) / std::tan(fov_rad() / 2.0); }
  double cx() const { return width / 2.0; }
  double cy() const { return height / 2.0; }

  bool operator==(const CameraModel&) const = default;
};

}  // namespace camfault
