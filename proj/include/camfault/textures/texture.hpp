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
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace camfault::tex {

/// Pre-quantization texture: per-pixel non-negative reals, optionally with
/// a color triple per pixel (flares carry color, grains and fields do not).
struct Texture {
  int width = 0;
  int height = 0;
  std::vector<float> values;
  std::vector<std::array<float, 3>> rgb;

  Texture() = default;
  Texture(int w, int h, bool with_rgb = false) : width(w), height(h) {
    if (w <= 0 || h <= 0) throw std::invalid_argument("Texture: dimensions must be positive");
    values.assign(static_cast<std::size_t>(w) * h, 0.0f);
    if (with_rgb) rgb.assign(static_cast<std::size_t>(w) * h, {0.0f, 0.0f, 0.0f});
  }

  bool has_rgb() const { return !rgb.empty(); }

  float& value(int x, int y) { return values[static_cast<std::size_t>(y) * width + x]; }
  float value(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }

  std::array<float, 3>& color(int x, int y) {
    return rgb[static_cast<std::size_t>(y) * width + x];
  }
  const std::array<float, 3>& color(int x, int y) const {
    return rgb[static_cast<std::size_t>(y) * width + x];
  }
};

}  // namespace camfault::tex
