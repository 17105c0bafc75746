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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace camfault {

/// Channel indices of the interleaved RGBI layout.
enum Channel : int { kR = 0, kG = 1, kB = 2, kI = 3 };

/// 8-bit addition clamped to the channel range [0, 255].
inline std::uint8_t saturating_add(std::uint8_t value, int delta) {
  return static_cast<std::uint8_t>(std::clamp(static_cast<int>(value) + delta, 0, 255));
}

/// Intensity of an RGB triple: round(mean(r, g, b)). The sum of three
/// 8-bit values divided by 3.0 is never an exact .5, so lround is
/// tie-free and platform-stable.
inline std::uint8_t intensity_of(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  return static_cast<std::uint8_t>(std::lround((int(r) + int(g) + int(b)) / 3.0));
}

/// Four-channel (red, green, blue, intensity) 8-bit raster, stored
/// interleaved. The unit of generation: paper-default samples are
/// 1024x1024, injectors accept any positive size.
class ImageRGBI {
 public:
  ImageRGBI() = default;

  ImageRGBI(int width, int height, std::array<std::uint8_t, 4> fill = {0, 0, 0, 0})
      : width_(width), height_(height) {
    if (width <= 0 || height <= 0)
      throw std::invalid_argument("ImageRGBI: dimensions must be positive");
    data_.resize(static_cast<std::size_t>(width) * height * 4);
    for (std::size_t p = 0; p < data_.size(); p += 4)
      for (int c = 0; c < 4; ++c) data_[p + c] = fill[c];
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t pixel_count() const { return static_cast<std::size_t>(width_) * height_; }

  std::uint8_t& at(int x, int y, int c) { return data_[index(x, y, c)]; }
  std::uint8_t at(int x, int y, int c) const { return data_[index(x, y, c)]; }

  bool contains(int x, int y) const {
    return x >= 0 && x < width_ && y >= 0 && y < height_;
  }

  /// Writes intensity and rescales R,G,B by new/old so hue is preserved.
  /// An old intensity of 0 maps the color channels to 0.
  void set_intensity_scaled(int x, int y, std::uint8_t new_i) {
    const std::uint8_t old_i = at(x, y, kI);
    if (new_i == old_i) return;
    if (old_i == 0) {
      at(x, y, kR) = at(x, y, kG) = at(x, y, kB) = 0;
    } else {
      const double ratio = static_cast<double>(new_i) / old_i;
      for (int c = kR; c <= kB; ++c)
        at(x, y, c) = static_cast<std::uint8_t>(
            std::clamp<long>(std::lround(at(x, y, c) * ratio), 0, 255));
    }
    at(x, y, kI) = new_i;
  }

  /// Recomputes intensity from the color channels of one pixel.
  void refresh_intensity(int x, int y) {
    at(x, y, kI) = intensity_of(at(x, y, kR), at(x, y, kG), at(x, y, kB));
  }

  const std::vector<std::uint8_t>& data() const { return data_; }
  std::vector<std::uint8_t>& data() { return data_; }

  bool operator==(const ImageRGBI& other) const = default;

 private:
  std::size_t index(int x, int y, int c) const {
    return (static_cast<std::size_t>(y) * width_ + x) * 4 + c;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

/// Uniform-fill constructor in free-function form.
inline ImageRGBI new_image(int width, int height, std::array<std::uint8_t, 4> fill) {
  return ImageRGBI(width, height, fill);
}

/// Per-fault binary raster aligned to the image it labels. A bit is set
/// iff the named fault touched that pixel.
class FaultMask {
 public:
  FaultMask() = default;

  FaultMask(int width, int height) : width_(width), height_(height) {
    if (width <= 0 || height <= 0)
      throw std::invalid_argument("FaultMask: dimensions must be positive");
    bits_.assign(static_cast<std::size_t>(width) * height, false);
  }

  int width() const { return width_; }
  int height() const { return height_; }

  bool get(int x, int y) const { return bits_[static_cast<std::size_t>(y) * width_ + x]; }
  void set(int x, int y, bool v = true) { bits_[static_cast<std::size_t>(y) * width_ + x] = v; }

  void fill(bool v) { bits_.assign(bits_.size(), v); }

  std::size_t count() const {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
  }

  bool same_shape(const FaultMask& o) const {
    return width_ == o.width_ && height_ == o.height_;
  }

  bool operator==(const FaultMask& other) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<bool> bits_;
};

}  // namespace camfault
